#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bevholt/analysis.hpp"
#include "bevholt/formula.hpp"
#include "bevholt/model.hpp"
#include "bevholt/output.hpp"
#include "bevholt/symmetry.hpp"

namespace bevholt {

/// One coefficient entry of a run configuration:
///   constant <expr> | periodic <expr>, ... | formula <expr> [period <p>]
struct CoefficientSpec {
  enum class Kind { constant, periodic, formula } kind = Kind::constant;
  std::vector<Formula> exprs;
  std::optional<Index> declared_period;  // formula only

  std::string str() const;
};

struct SymmetrySpec {
  FamilyKind family = FamilyKind::zeta2;
  std::vector<Formula> seeds;  // empty: 1,...,1 for zeta1/zeta2 and 0,...,0 for zeta3
  Index p = 0;                 // zeta3 mode
};

/// A parsed run configuration (sections [model], [initial], [run],
/// [symmetry]). Parsing fails with a line/field-scoped message; dump()
/// emits a canonical form that re-parses to an identical configuration.
struct RunConfig {
  Index order = 1;
  bool ecological = false;
  CoefficientSpec A, B;    // direct mode
  CoefficientSpec mu, K;   // ecological mode

  bool periodic_seed = false;      // initial values z_j = (1-A_j)/B_j
  std::vector<Formula> initial;    // explicit list otherwise

  Backend backend = Backend::rational;
  Index horizon = 100;
  std::vector<OutputKind> outputs{OutputKind::csv};
  std::optional<double> tolerance;

  std::optional<SymmetrySpec> symmetry;

  static RunConfig parse(std::string_view text, const std::string& source_name = "<config>");
  static RunConfig parse_file(const std::filesystem::path& path);

  std::string dump() const;
};

/// A model plus initial conditions realized in a concrete backend.
template <class T>
struct RunInstance {
  Model<T> model;
  std::vector<T> initial;
};

namespace detail {

template <class T>
T eval_entry(const Formula& f, const char* field) {
  if (f.uses_n())
    throw ConfigError(std::string(field) + ": entry must not depend on n (use 'formula' for that)");
  if constexpr (scalar_traits<T>::backend == Backend::rational) {
    if (!f.exact_capable())
      throw ConfigError(std::string(field) +
                        ": sin/cos/pi have no exact value in the rational backend");
    return f.eval_rational(0);
  } else if constexpr (scalar_traits<T>::backend == Backend::real) {
    return f.eval_real(0);
  } else {
    return Complex(f.eval_real(0), 0.0);
  }
}

template <class T>
CoefficientSequence<T> realize(const CoefficientSpec& spec, Index k, const char* field) {
  switch (spec.kind) {
    case CoefficientSpec::Kind::constant:
      return CoefficientSequence<T>::constant(eval_entry<T>(spec.exprs.at(0), field));
    case CoefficientSpec::Kind::periodic: {
      if (spec.exprs.size() != k)
        throw ConfigError(std::string(field) + ": periodic list must have exactly k = " +
                          std::to_string(k) + " entries, got " + std::to_string(spec.exprs.size()));
      std::vector<T> values;
      values.reserve(spec.exprs.size());
      for (const auto& e : spec.exprs) values.push_back(eval_entry<T>(e, field));
      return CoefficientSequence<T>::periodic(std::move(values));
    }
    case CoefficientSpec::Kind::formula:
      try {
        return CoefficientSequence<T>::sampled(spec.exprs.at(0), spec.declared_period);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(field) + ": " + e.what());
      }
  }
  throw ConfigError("corrupt coefficient spec");
}

}  // namespace detail

/// Builds the model and initial conditions for backend T. The config's
/// backend field must match T.
template <class T>
RunInstance<T> instantiate(const RunConfig& config) {
  if (config.backend != scalar_traits<T>::backend)
    throw ConfigError("config backend is " + std::string(to_string(config.backend)) +
                      ", requested " + to_string(scalar_traits<T>::backend));
  RunInstance<T> run;
  if (config.ecological) {
    run.model = make_ecological_model<T>(config.order,
                                         detail::realize<T>(config.mu, config.order, "[model].mu"),
                                         detail::realize<T>(config.K, config.order, "[model].K"));
  } else {
    run.model = make_model<T>(config.order,
                              detail::realize<T>(config.A, config.order, "[model].A"),
                              detail::realize<T>(config.B, config.order, "[model].B"));
  }
  if (config.periodic_seed) {
    run.initial = periodic_initial_conditions(run.model);
  } else if (!config.initial.empty()) {
    if (config.initial.size() != config.order)
      throw ConfigError("[initial].values: expected k = " + std::to_string(config.order) +
                        " entries, got " + std::to_string(config.initial.size()));
    run.initial.reserve(config.initial.size());
    for (const auto& e : config.initial)
      run.initial.push_back(detail::eval_entry<T>(e, "[initial].values"));
  }
  return run;
}

}  // namespace bevholt
