#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bevholt/errors.hpp"
#include "bevholt/model.hpp"
#include "bevholt/trajectory.hpp"

namespace bevholt {

/// Validates an initial-condition vector against a model: exactly k entries,
/// all positive in ecological mode.
template <class T>
void check_initial_conditions(const Model<T>& model, std::span<const T> ic) {
  if (ic.size() != model.order)
    throw ConfigError("expected " + std::to_string(model.order) + " initial conditions, got " +
                      std::to_string(ic.size()));
  if (model.mode == Mode::ecological) {
    if constexpr (scalar_traits<T>::backend != Backend::cplx) {
      for (Index j = 0; j < ic.size(); ++j)
        if (!(ic[j] > scalar_traits<T>::zero()))
          throw DomainError("ecological mode requires positive initial conditions (z_" +
                            std::to_string(j) + " is not)");
    }
  }
}

/// Direct iteration to horizon N (N >= k). A forbidden-set hit truncates the
/// trajectory at the first uncomputable index; it is not an error.
template <class T>
Trajectory<T> iterate(const Model<T>& model, std::span<const T> ic, Index horizon) {
  if (horizon < model.order)
    throw PreconditionError("horizon must be at least the model order k");
  check_initial_conditions(model, ic);
  Trajectory<T> traj;
  traj.order = model.order;
  traj.values.assign(ic.begin(), ic.end());
  traj.values.reserve(horizon);
  for (Index target = model.order; target < horizon; ++target) {
    Index source = target - model.order;
    try {
      traj.values.push_back(step(model, traj.values[source], source));
    } catch (const SingularityError& e) {
      traj.status = TrajectoryStatus::truncated;
      traj.truncated_at = target;
      traj.truncation_reason = e.what();
      break;
    }
  }
  return traj;
}

namespace detail {

/// Incremental evaluator for the strand-j products and sums appearing in
/// the closed forms:
///   P_m = prod_{i=0}^{m-1} A_{ki+j},
///   S_m = sum_{l=0}^{m-1} B_{kl+j} prod_{i=l+1}^{m-1} A_{ki+j},
/// stepped as P_{m+1} = P_m A_{km+j}, S_{m+1} = A_{km+j} S_m + B_{km+j}.
template <class T, class CoeffA, class CoeffB>
struct StrandAccumulator {
  CoeffA coeff_a;
  CoeffB coeff_b;
  Index k, j;
  T product = scalar_traits<T>::one();
  T sum = scalar_traits<T>::zero();
  Index m = 0;

  void advance_to(Index n) {
    for (; m < n; ++m) {
      T a = coeff_a(k * m + j);
      T b = coeff_b(k * m + j);
      sum = a * sum + b;
      product = product * a;
    }
  }
};

template <class T>
T closed_value(const T& z_j, const T& product, const T& sum, Index n, Index j, Index k) {
  T den = product + z_j * sum;
  if (is_zero(den))
    throw SingularityError(k * n + j, scalar_traits<T>::render(z_j),
                           "closed form denominator vanished at strand j = " + std::to_string(j) +
                               ", block n = " + std::to_string(n));
  return z_j / den;
}

}  // namespace detail

/// z_{kn+j} = z_j / (prod A + z_j sum B prod A), evaluated with the empty
/// product = 1 and empty sum = 0 conventions (n = 0 returns z_j).
template <class T>
T closed_form_general(const Model<T>& model, std::span<const T> ic, Index n, Index j) {
  check_initial_conditions(model, ic);
  if (j >= model.order) throw PreconditionError("strand index j must satisfy 0 <= j < k");
  detail::StrandAccumulator<T, std::function<T(Index)>, std::function<T(Index)>> acc{
      [&](Index i) { return model.coeff_a(i); }, [&](Index i) { return model.coeff_b(i); },
      model.order, j};
  acc.advance_to(n);
  return detail::closed_value(ic[j], acc.product, acc.sum, n, j, model.order);
}

/// The same value written in the (mu, K) parameterization:
/// z_{kn+j} = z_j / (prod 1/mu + z_j sum (mu-1)/(K mu) prod 1/mu).
/// Agrees with closed_form_general after coefficients_from_ecology exactly.
template <class T>
T closed_form_ecological(const Model<T>& model, std::span<const T> ic, Index n, Index j) {
  if (model.mode != Mode::ecological || !model.mu || !model.K)
    throw PreconditionError("closed_form_ecological needs a model built from (mu, K)");
  check_initial_conditions(model, ic);
  if (j >= model.order) throw PreconditionError("strand index j must satisfy 0 <= j < k");
  const auto& mu = *model.mu;
  const auto& K = *model.K;
  auto a_of = [&](Index i) {
    T m = mu.sample(i);
    if (is_zero(m)) throw DomainError("mu_" + std::to_string(i) + " = 0");
    return scalar_traits<T>::one() / m;
  };
  auto b_of = [&](Index i) {
    T m = mu.sample(i);
    T k_ = K.sample(i);
    if (is_zero(m) || is_zero(k_)) throw DomainError("zero mu or K at index " + std::to_string(i));
    return (m - scalar_traits<T>::one()) / (k_ * m);
  };
  detail::StrandAccumulator<T, decltype(a_of), decltype(b_of)> acc{a_of, b_of, model.order, j};
  acc.advance_to(n);
  return detail::closed_value(ic[j], acc.product, acc.sum, n, j, model.order);
}

/// Geometric-sum specialization for k-periodic coefficients:
/// z_{kn+j} = (1-A_j) z_j / ((1-A_j) A_j^n + B_j (1-A_j^n) z_j).
/// Requires A_j != 1 on the requested strand; callers with A_j = 1 fall
/// back to closed_form_general.
template <class T>
T closed_form_k_periodic(const Model<T>& model, std::span<const T> ic, Index n, Index j) {
  if (!model.k_periodic_coefficients())
    throw PreconditionError("closed_form_k_periodic needs k-periodic (or constant) A and B");
  check_initial_conditions(model, ic);
  if (j >= model.order) throw PreconditionError("strand index j must satisfy 0 <= j < k");
  T a = model.coeff_a(j);
  T one = scalar_traits<T>::one();
  if (a == one)
    throw PreconditionError("A_" + std::to_string(j) +
                            " = 1: the geometric form does not apply; use closed_form_general");
  T b = model.coeff_b(j);
  T an = pow_uint(a, n);
  T den = (one - a) * an + b * (one - an) * ic[j];
  if (is_zero(den))
    throw SingularityError(model.order * n + j, scalar_traits<T>::render(ic[j]),
                           "closed form denominator vanished at strand j = " + std::to_string(j) +
                               ", block n = " + std::to_string(n));
  return (one - a) * ic[j] / den;
}

/// Constant-coefficient specialization. A = 1: z_{kn+j} = z_j/(1 + nB z_j).
/// A != 1: z_{kn+j} = z_j/(A^n + z_j B (1-A^n)/(1-A)).
template <class T>
T closed_form_constant(const Model<T>& model, std::span<const T> ic, Index n, Index j) {
  if (!model.constant_coefficients())
    throw PreconditionError("closed_form_constant needs constant A and B");
  check_initial_conditions(model, ic);
  if (j >= model.order) throw PreconditionError("strand index j must satisfy 0 <= j < k");
  T a = model.coeff_a(0);
  T b = model.coeff_b(0);
  T one = scalar_traits<T>::one();
  T den;
  if (a == one) {
    den = one + scalar_traits<T>::from_int(static_cast<long long>(n)) * b * ic[j];
  } else {
    T an = pow_uint(a, n);
    den = an + ic[j] * b * (one - an) / (one - a);
  }
  if (is_zero(den))
    throw SingularityError(model.order * n + j, scalar_traits<T>::render(ic[j]),
                           "closed form denominator vanished at strand j = " + std::to_string(j) +
                               ", block n = " + std::to_string(n));
  return ic[j] / den;
}

/// Per-method outcome of a cross check against direct iteration.
struct MethodComparison {
  std::string method;
  bool applicable = false;
  bool exact_match = true;                // meaningful in the rational backend
  double max_rel_error = 0.0;             // |diff| / max(1, |a|, |b|)
  std::optional<Index> first_mismatch;    // rational backend only
  std::optional<Index> truncated_at;      // earliest singular global index
  std::vector<Index> skipped_strands;     // k-periodic form where A_j = 1
};

struct CompareReport {
  Index horizon = 0;
  bool exact_backend = false;
  std::optional<Index> iterate_truncated_at;
  std::vector<MethodComparison> methods;
  bool truncation_agreement = true;

  double max_rel_error() const {
    double m = 0.0;
    for (const auto& c : methods)
      if (c.applicable) m = std::max(m, c.max_rel_error);
    return m;
  }
  bool all_exact() const {
    for (const auto& c : methods)
      if (c.applicable && !c.exact_match) return false;
    return truncation_agreement;
  }
};

/// Evaluates every applicable closed form against iterate() over the first
/// N indices and reports the largest discrepancy. Exact backends must agree
/// bit for bit; singular indices must agree as well.
template <class T>
CompareReport compare_methods(const Model<T>& model, std::span<const T> ic, Index horizon) {
  Trajectory<T> traj = iterate(model, ic, horizon);
  CompareReport report;
  report.horizon = horizon;
  report.exact_backend = scalar_traits<T>::exact;
  report.iterate_truncated_at = traj.truncated_at;

  Index k = model.order;
  auto run_method = [&](const std::string& name, auto evaluate, bool applicable,
                        std::vector<Index> skipped = {}) {
    MethodComparison cmp;
    cmp.method = name;
    cmp.applicable = applicable;
    cmp.skipped_strands = skipped;
    if (!applicable) {
      report.methods.push_back(std::move(cmp));
      return;
    }
    std::optional<Index> earliest_singular;
    for (Index j = 0; j < k; ++j) {
      if (std::find(skipped.begin(), skipped.end(), j) != skipped.end()) continue;
      for (Index m = 0; k * m + j < horizon; ++m) {
        Index global = k * m + j;
        T value;
        try {
          value = evaluate(m, j);
        } catch (const SingularityError&) {
          if (!earliest_singular || global < *earliest_singular) earliest_singular = global;
          break;
        }
        if (global >= traj.size()) continue;  // iterate stopped earlier; truncation compared below
        const T& ref = traj.values[global];
        if (value != ref) {
          cmp.exact_match = false;
          if (!cmp.first_mismatch) cmp.first_mismatch = global;
        }
        cmp.max_rel_error = std::max(cmp.max_rel_error, rel_diff(value, ref));
      }
    }
    cmp.truncated_at = earliest_singular;
    bool reference_on_skipped =
        traj.truncated_at &&
        std::find(skipped.begin(), skipped.end(), *traj.truncated_at % k) != skipped.end();
    if (!reference_on_skipped && earliest_singular != traj.truncated_at)
      report.truncation_agreement = false;
    report.methods.push_back(std::move(cmp));
  };

  run_method(
      "closed-general", [&](Index m, Index j) { return closed_form_general(model, ic, m, j); },
      true);

  bool periodic_ok = model.k_periodic_coefficients();
  std::vector<Index> skip;
  if (periodic_ok) {
    for (Index j = 0; j < k; ++j)
      if (model.coeff_a(j) == scalar_traits<T>::one()) skip.push_back(j);
  }
  run_method(
      "closed-k-periodic",
      [&](Index m, Index j) { return closed_form_k_periodic(model, ic, m, j); }, periodic_ok,
      skip);

  run_method(
      "closed-constant", [&](Index m, Index j) { return closed_form_constant(model, ic, m, j); },
      model.constant_coefficients());

  run_method(
      "closed-ecological",
      [&](Index m, Index j) { return closed_form_ecological(model, ic, m, j); },
      model.mode == Mode::ecological);

  return report;
}

}  // namespace bevholt
