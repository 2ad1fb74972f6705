#pragma once

#include <string>
#include <vector>

#include "bevholt/model.hpp"
#include "bevholt/rational.hpp"

namespace bevholt::figures {

/// Trigonometric k-periodic fixture: A_n = 3 + sin(2 pi n / k),
/// B_n = 2 + cos(2 pi n / k), coefficients sampled once per residue so the
/// floating sequences are bit-exactly k-periodic.
Model<double> sine_model(Index k);

/// The same fixture with each coefficient snapshotted to its exact rational
/// value (every double is one), so trajectories from the fixed seed are
/// exactly k-periodic in the rational backend.
Model<Rational> sine_model_exact(Index k);

/// Constant-coefficient fixture z_{n+k} = z_n/(-1 + b z_n) and the two seed
/// vectors used by the order-8 and order-14 runs.
Model<Rational> two_cycle_model(Index k, long long b);
std::vector<Rational> two_cycle_seed_8();
std::vector<Rational> two_cycle_seed_14();

/// Decay fixture z_{n+14} = z_n/(14 - 2 z_n) (zero equilibrium attracts).
Model<double> decay_model();
std::vector<double> decay_seed();

/// Convergence fixture z_{n+14} = z_n/(0.25 + 2 z_n) (attracts to 0.375).
Model<double> convergence_model();
std::vector<double> convergence_seed();
std::vector<double> convergence_seed_positive();

struct FigureOutput {
  std::string name;     // fig1..fig6
  std::string title;    // the recurrence being run
  std::string summary;  // one-line result description
  std::string csv;
  std::string plot_data;
  std::string svg;
};

/// Renders the six built-in demonstration runs. Deterministic.
std::vector<FigureOutput> render_builtin_figures();

}  // namespace bevholt::figures
