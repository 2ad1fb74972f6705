#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bevholt/analysis.hpp"
#include "bevholt/config.hpp"
#include "bevholt/figures.hpp"
#include "bevholt/output.hpp"
#include "bevholt/solver.hpp"
#include "bevholt/symmetry.hpp"

namespace {

using namespace bevholt;

// exit-code contract: 0 ok, 2 config error, 3 singularity truncation,
// 4 invariant violation (compare/symmetry mismatch)
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSingularity = 3;
constexpr int kViolation = 4;

struct Options {
  std::string config_path;
  std::optional<std::string> backend_override;
  std::optional<Index> horizon_override;
  std::optional<double> tolerance_override;
  std::string out_dir = ".";
  bool dump_config = false;
};

RunConfig load_config(const Options& opt) {
  if (opt.config_path.empty()) throw ConfigError("--config <path> is required");
  RunConfig cfg = RunConfig::parse_file(opt.config_path);
  if (opt.backend_override) {
    if (*opt.backend_override == "rational")
      cfg.backend = Backend::rational;
    else if (*opt.backend_override == "float")
      cfg.backend = Backend::real;
    else if (*opt.backend_override == "complex")
      cfg.backend = Backend::cplx;
    else
      throw ConfigError("--backend must be rational, float or complex");
  }
  if (opt.horizon_override) cfg.horizon = *opt.horizon_override;
  if (opt.tolerance_override) cfg.tolerance = *opt.tolerance_override;
  return cfg;
}

/// Calls fn<T>(config) with T matching the configured backend.
template <class Fn>
int dispatch(const RunConfig& cfg, Fn&& fn) {
  switch (cfg.backend) {
    case Backend::rational: return fn.template operator()<Rational>(cfg);
    case Backend::real: return fn.template operator()<double>(cfg);
    case Backend::cplx: return fn.template operator()<Complex>(cfg);
  }
  return kConfigError;
}

std::filesystem::path output_path(const Options& opt, const std::string& stem, OutputKind kind) {
  std::filesystem::create_directories(opt.out_dir);
  return std::filesystem::path(opt.out_dir) / (stem + file_extension(kind));
}

template <class T>
void write_outputs(const Options& opt, const RunConfig& cfg, const std::string& stem,
                   const Trajectory<T>& traj) {
  for (OutputKind kind : cfg.outputs) {
    std::filesystem::path path = output_path(opt, stem, kind);
    switch (kind) {
      case OutputKind::csv: atomic_write(path, csv_text(traj)); break;
      case OutputKind::plot_data: atomic_write(path, plot_data_text(traj)); break;
      case OutputKind::svg: atomic_write(path, svg_text(traj)); break;
    }
    std::cout << "wrote " << path.string() << "\n";
  }
}

int cmd_simulate(const Options& opt) {
  RunConfig cfg = load_config(opt);
  return dispatch(cfg, [&]<class T>(const RunConfig& c) {
    RunInstance<T> run = instantiate<T>(c);
    if (run.initial.empty()) throw ConfigError("[initial].values: required for simulate");
    Trajectory<T> traj = iterate<T>(run.model, run.initial, c.horizon);
    std::string stem = std::filesystem::path(opt.config_path).stem().string();
    write_outputs(opt, c, stem, traj);
    if (!traj.is_complete()) {
      std::cerr << "simulate: trajectory truncated at n = " << *traj.truncated_at << " ("
                << traj.truncation_reason << ")\n";
      return kSingularity;
    }
    std::cout << "simulate: " << traj.size() << " values, complete\n";
    return kOk;
  });
}

int cmd_compare(const Options& opt) {
  RunConfig cfg = load_config(opt);
  return dispatch(cfg, [&]<class T>(const RunConfig& c) {
    RunInstance<T> run = instantiate<T>(c);
    if (run.initial.empty()) throw ConfigError("[initial].values: required for compare");
    CompareReport report = compare_methods<T>(run.model, run.initial, c.horizon);
    double tol = c.tolerance.value_or(1e-9);

    std::printf("%-18s %-11s %-14s %-12s %s\n", "method", "applicable", "max-rel-error",
                "mismatch-at", "singular-at");
    for (const auto& m : report.methods) {
      std::string mismatch = m.first_mismatch ? std::to_string(*m.first_mismatch) : "-";
      std::string singular = m.truncated_at ? std::to_string(*m.truncated_at) : "-";
      std::printf("%-18s %-11s %-14s %-12s %s\n", m.method.c_str(),
                  m.applicable ? "yes" : "no",
                  m.applicable ? render_double(m.max_rel_error).c_str() : "-",
                  mismatch.c_str(), singular.c_str());
    }
    std::printf("iterate singular-at: %s\n",
                report.iterate_truncated_at ? std::to_string(*report.iterate_truncated_at).c_str()
                                            : "-");
    std::printf("truncation agreement: %s\n", report.truncation_agreement ? "yes" : "NO");

    bool ok = report.truncation_agreement &&
              (report.exact_backend ? report.all_exact() : report.max_rel_error() <= tol);
    if (!ok) {
      std::cerr << "compare: methods disagree"
                << (report.exact_backend ? " (exact mismatch)" : "") << "\n";
      return kViolation;
    }
    if (report.iterate_truncated_at) {
      std::cerr << "compare: all methods truncate at n = " << *report.iterate_truncated_at << "\n";
      return kSingularity;
    }
    std::cout << "compare: methods agree"
              << (report.exact_backend ? " exactly" : " within tolerance") << "\n";
    return kOk;
  });
}

template <class T>
std::vector<T> symmetry_seeds(const RunConfig& cfg, const SymmetrySpec& spec) {
  std::vector<T> seeds;
  if (spec.seeds.empty()) {
    T fill = spec.family == FamilyKind::zeta3 ? scalar_traits<T>::zero() : scalar_traits<T>::one();
    seeds.assign(cfg.order, fill);
  } else {
    if (spec.seeds.size() != cfg.order)
      throw ConfigError("[symmetry].seeds: expected k = " + std::to_string(cfg.order) +
                        " entries, got " + std::to_string(spec.seeds.size()));
    for (const auto& e : spec.seeds) seeds.push_back(detail::eval_entry<T>(e, "[symmetry].seeds"));
  }
  return seeds;
}

int cmd_symmetry(const Options& opt) {
  RunConfig cfg = load_config(opt);
  if (!cfg.symmetry) throw ConfigError("[symmetry] section required for the symmetry command");
  return dispatch(cfg, [&]<class T>(const RunConfig& c) {
    const SymmetrySpec& spec = *c.symmetry;
    RunInstance<T> run = instantiate<T>(c);
    std::vector<T> seeds = symmetry_seeds<T>(c, spec);

    Index n_points = std::min<Index>(c.horizon, 48);
    Index n_max = n_points + run.model.order;
    InfinitesimalFamily<T> family = [&] {
      switch (spec.family) {
        case FamilyKind::zeta1: return InfinitesimalFamily<T>::zeta1(run.model, seeds, n_max);
        case FamilyKind::zeta2: return InfinitesimalFamily<T>::zeta2(run.model, seeds, n_max);
        default: return InfinitesimalFamily<T>::zeta3(run.model, seeds, spec.p, n_max);
      }
    }();

    double tol = c.tolerance.value_or(1e-10);
    double max_residual = 0.0;
    Index points = 0;
    for (Index n = 0; n < n_points; ++n) {
      for (int num = -20; num <= 20; ++num) {
        if (num == 0) continue;
        T z = scalar_traits<T>::from_rational(Rational(BigInt(num), BigInt(2)));
        T den = run.model.coeff_a(n) + run.model.coeff_b(n) * z;
        if (is_zero(den)) continue;  // forbidden point, excluded from the grid
        T r = symmetry_residual<T>(run.model, family, n, z);
        max_residual = std::max(max_residual, scalar_traits<T>::abs_approx(r));
        ++points;
      }
    }
    std::cout << "family " << to_string(spec.family) << ", " << points
              << " grid points, max |residual| = " << render_double(max_residual) << "\n";
    if (spec.family == FamilyKind::zeta1 && !zeta1_admissible(run.model, n_max)) {
      std::cout << "note: this model does not satisfy B_{n+k} + A_{n+k} B_n = 0, so zeta1 is not\n"
                   "      a symmetry of it; a nonzero residual below reports that, it does not\n"
                   "      indicate a defect in the built coefficients\n";
    }
    bool ok = scalar_traits<T>::exact ? max_residual == 0.0 : max_residual <= tol;
    if (!ok) {
      std::cerr << "symmetry: residual above tolerance\n";
      return kViolation;
    }
    std::cout << "symmetry: residual "
              << (scalar_traits<T>::exact ? "exactly zero" : "within tolerance") << "\n";
    return kOk;
  });
}

int cmd_stability(const Options& opt) {
  RunConfig cfg = load_config(opt);
  return dispatch(cfg, [&]<class T>(const RunConfig& c) {
    RunInstance<T> run = instantiate<T>(c);
    auto eqs = equilibria<T>(run.model);
    std::printf("%-14s %-24s %-20s %s\n", "equilibrium", "multiplier", "|roots|",
                "classification");
    for (const T& eq : eqs) {
      EquilibriumReport<T> rep = classify<T>(run.model, eq);
      std::printf("%-14s %-24s %-20s %s\n", scalar_traits<T>::render(eq).c_str(),
                  scalar_traits<Complex>::render(rep.multiplier).c_str(),
                  render_double(std::abs(rep.roots.at(0))).c_str(),
                  to_string(rep.classification));
    }
    return kOk;
  });
}

int cmd_period(const Options& opt) {
  RunConfig cfg = load_config(opt);
  return dispatch(cfg, [&]<class T>(const RunConfig& c) {
    RunInstance<T> run = instantiate<T>(c);
    if (run.initial.empty()) throw ConfigError("[initial].values: required for period");
    double tol = c.tolerance.value_or(1e-9);
    Trajectory<T> traj = iterate<T>(run.model, run.initial, c.horizon);
    PeriodReport rep = detect_period(traj, tol);
    if (auto cert = seed_certificate<T>(run.model, run.initial)) {
      if (rep.minimal_period && *rep.minimal_period == cert->second)
        rep.certified_by = cert->first;
      else
        rep.note = "seed certificate predicts period " + std::to_string(cert->second);
    }
    if (rep.minimal_period)
      std::cout << "minimal period: " << *rep.minimal_period << "\n";
    else
      std::cout << "minimal period: none found (window " << rep.window << ")\n";
    std::cout << "certified by: " << to_string(rep.certified_by, rep.tolerance) << "\n";
    std::cout << "window: " << rep.window << " of horizon " << c.horizon << "\n";
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    if (!traj.is_complete()) {
      std::cerr << "period: trajectory truncated at n = " << *traj.truncated_at << "\n";
      return kSingularity;
    }
    return kOk;
  });
}

int cmd_figures(const Options& opt) {
  for (const auto& fig : figures::render_builtin_figures()) {
    atomic_write(output_path(opt, fig.name, OutputKind::csv), fig.csv);
    atomic_write(output_path(opt, fig.name, OutputKind::plot_data), fig.plot_data);
    atomic_write(output_path(opt, fig.name, OutputKind::svg), fig.svg);
    std::cout << fig.name << ": " << fig.title << "\n  " << fig.summary << "\n";
  }
  std::cout << "figures written to " << opt.out_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order Beverton-Holt recurrence toolkit"};
  app.require_subcommand(0, 1);

  Options opt;
  app.add_option("--config", opt.config_path, "run configuration file");
  std::string backend;
  auto* backend_opt =
      app.add_option("--backend", backend, "override backend: rational | float | complex");
  Index horizon = 0;
  auto* horizon_opt = app.add_option("--horizon", horizon, "override horizon N");
  double tolerance = 0.0;
  auto* tolerance_opt = app.add_option("--tolerance", tolerance, "override tolerance");
  app.add_option("--out", opt.out_dir, "output directory (default .)");
  app.add_flag("--dump-config", opt.dump_config, "print the normalized config and exit");

  auto* simulate = app.add_subcommand("simulate", "iterate and write trajectory files");
  auto* compare = app.add_subcommand("compare", "cross-check iteration against the closed forms");
  auto* symmetry = app.add_subcommand("symmetry", "invariance-condition residuals over a grid");
  auto* stability = app.add_subcommand("stability", "equilibrium classification table");
  auto* period = app.add_subcommand("period", "detect the minimal period of the trajectory");
  auto* figures_cmd = app.add_subcommand("figures", "regenerate the built-in demonstration runs");
  for (auto* sub : {simulate, compare, symmetry, stability, period, figures_cmd})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (backend_opt->count()) opt.backend_override = backend;
  if (horizon_opt->count()) opt.horizon_override = horizon;
  if (tolerance_opt->count()) opt.tolerance_override = tolerance;

  try {
    if (opt.dump_config) {
      std::cout << load_config(opt).dump();
      return kOk;
    }
    if (simulate->parsed()) return cmd_simulate(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (symmetry->parsed()) return cmd_symmetry(opt);
    if (stability->parsed()) return cmd_stability(opt);
    if (period->parsed()) return cmd_period(opt);
    if (figures_cmd->parsed()) return cmd_figures(opt);
    std::cerr << app.help();
    return kConfigError;
  } catch (const SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSingularity;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
