#include "bevholt/figures.hpp"

#include <cmath>

#include "bevholt/analysis.hpp"
#include "bevholt/output.hpp"
#include "bevholt/solver.hpp"

namespace bevholt::figures {

namespace {

std::vector<double> sine_coefficients(Index k, double offset, bool use_sin) {
  std::vector<double> v;
  v.reserve(k);
  for (Index j = 0; j < k; ++j) {
    double angle = static_cast<double>(j) * 2.0 * M_PI / static_cast<double>(k);
    v.push_back(offset + (use_sin ? std::sin(angle) : std::cos(angle)));
  }
  return v;
}

std::vector<Rational> to_exact(const std::vector<double>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(Rational::from_double(x));
  return out;
}

std::vector<Rational> rationals(std::initializer_list<std::pair<long long, long long>> list) {
  std::vector<Rational> out;
  for (auto [p, q] : list) out.push_back(Rational(BigInt(p), BigInt(q)));
  return out;
}

}  // namespace

Model<double> sine_model(Index k) {
  return make_model<double>(k,
                            CoefficientSequence<double>::periodic(sine_coefficients(k, 3.0, true)),
                            CoefficientSequence<double>::periodic(sine_coefficients(k, 2.0, false)));
}

Model<Rational> sine_model_exact(Index k) {
  return make_model<Rational>(
      k, CoefficientSequence<Rational>::periodic(to_exact(sine_coefficients(k, 3.0, true))),
      CoefficientSequence<Rational>::periodic(to_exact(sine_coefficients(k, 2.0, false))));
}

Model<Rational> two_cycle_model(Index k, long long b) {
  return make_model<Rational>(k, CoefficientSequence<Rational>::constant(Rational(-1)),
                              CoefficientSequence<Rational>::constant(Rational(b)));
}

std::vector<Rational> two_cycle_seed_8() {
  return rationals({{1, 1}, {2, 1}, {1, 1}, {-1, 2}, {1, 1}, {1, 2}, {-1, 4}, {1, 2}});
}

std::vector<Rational> two_cycle_seed_14() {
  // reference seed list for the order-14 run; the listing it was transcribed
  // from runs the 10th and 11th entries together, restored as z_9 = 5, z_10 = 8
  return rationals({{1, 1},
                    {2, 1},
                    {1, 1},
                    {-1, 2},
                    {1, 1},
                    {1, 2},
                    {-4, 1},
                    {1, 2},
                    {11, 1},
                    {5, 1},
                    {8, 1},
                    {-4, 1},
                    {-1, 2},
                    {1, 1}});
}

Model<double> decay_model() {
  return make_model<double>(14, CoefficientSequence<double>::constant(14.0),
                            CoefficientSequence<double>::constant(-2.0));
}

std::vector<double> decay_seed() {
  return {1, 2, 1, -0.5, 1, 0.5, -4, 0.5, 1, 15, 8, 4, -0.5, 1};
}

Model<double> convergence_model() {
  return make_model<double>(14, CoefficientSequence<double>::constant(0.25),
                            CoefficientSequence<double>::constant(2.0));
}

std::vector<double> convergence_seed() {
  return {1, 2, 1, -0.5, 1, 0.5, -4, 0.5, 1, 15, 8, 4, -0.5, 1};
}

std::vector<double> convergence_seed_positive() {
  return {1, 2, 1, 0.5, 1, 0.5, 4, 0.5, 1, 15, 8, 4, 0.5, 1};
}

namespace {

template <class T>
FigureOutput render_run(std::string name, std::string title, const Model<T>& model,
                        const std::vector<T>& ic, Index horizon, std::string summary) {
  Trajectory<T> traj = iterate<T>(model, ic, horizon);
  FigureOutput out;
  out.name = std::move(name);
  out.title = std::move(title);
  out.summary = std::move(summary);
  out.csv = csv_text(traj);
  out.plot_data = plot_data_text(traj);
  out.svg = svg_text(traj);
  return out;
}

}  // namespace

std::vector<FigureOutput> render_builtin_figures() {
  std::vector<FigureOutput> figs;

  {
    Model<double> m = sine_model(16);
    auto ic = periodic_initial_conditions(m);
    figs.push_back(render_run("fig1", "z_{n+16} = z_n/((3+sin(n pi/8)) + (2+cos(n pi/8)) z_n)", m,
                              ic, 300, "16-periodic solution from the fixed seed z_j = (1-A_j)/B_j"));
  }
  {
    Model<double> m = sine_model(8);
    auto ic = periodic_initial_conditions(m);
    figs.push_back(render_run("fig2", "z_{n+8} = z_n/((3+sin(n pi/4)) + (2+cos(n pi/4)) z_n)", m,
                              ic, 300, "8-periodic solution from the fixed seed z_j = (1-A_j)/B_j"));
  }
  {
    Model<Rational> m = two_cycle_model(8, 12);
    figs.push_back(render_run("fig3", "z_{n+8} = z_n/(-1 + 12 z_n)", m, two_cycle_seed_8(), 96,
                              "16-periodic solution: two 8-cycles (z_j) and (z_j/(-1+12 z_j))"));
  }
  {
    Model<Rational> m = two_cycle_model(14, 15);
    figs.push_back(render_run("fig4", "z_{n+14} = z_n/(-1 + 15 z_n)", m, two_cycle_seed_14(), 112,
                              "28-periodic solution: two 14-cycles (z_j) and (z_j/(-1+15 z_j))"));
  }
  figs.push_back(render_run("fig5", "z_{n+14} = z_n/(14 - 2 z_n)", decay_model(), decay_seed(),
                            600, "decay to the stable equilibrium 0 (|A| > 1)"));
  figs.push_back(render_run("fig6", "z_{n+14} = z_n/(0.25 + 2 z_n)", convergence_model(),
                            convergence_seed(), 1200,
                            "convergence to the stable equilibrium (1-A)/B = 0.375 (|A| < 1)"));
  return figs;
}

}  // namespace bevholt::figures
