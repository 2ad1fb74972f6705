#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bevholt/errors.hpp"
#include "bevholt/model.hpp"
#include "bevholt/solver.hpp"
#include "bevholt/trajectory.hpp"

namespace bevholt {

enum class FamilyKind { zeta1, zeta2, zeta3 };

inline const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::zeta1: return "zeta1";
    case FamilyKind::zeta2: return "zeta2";
    case FamilyKind::zeta3: return "zeta3";
  }
  return "?";
}

/// Coefficient sequence of zeta1: A_n alpha_{n+k} - alpha_n = 0, i.e.
/// alpha_{kn+j} = alpha_j prod 1/A. seeds are alpha_0..alpha_{k-1}.
template <class T>
std::vector<T> build_alpha(const Model<T>& model, std::span<const T> seeds, Index n_max) {
  if (seeds.size() != model.order) throw ConfigError("need exactly k seed values");
  std::vector<T> alpha(seeds.begin(), seeds.end());
  alpha.reserve(n_max + 1);
  for (Index n = 0; n + model.order <= n_max; ++n)
    alpha.push_back(alpha[n] / model.coeff_a(n));
  alpha.resize(std::min<Index>(alpha.size(), n_max + 1));
  return alpha;
}

/// Coefficient sequence of zeta2: beta_{n+k} = A_n beta_n.
template <class T>
std::vector<T> build_beta(const Model<T>& model, std::span<const T> seeds, Index n_max) {
  if (seeds.size() != model.order) throw ConfigError("need exactly k seed values");
  std::vector<T> beta(seeds.begin(), seeds.end());
  beta.reserve(n_max + 1);
  for (Index n = 0; n + model.order <= n_max; ++n) beta.push_back(model.coeff_a(n) * beta[n]);
  beta.resize(std::min<Index>(beta.size(), n_max + 1));
  return beta;
}

namespace detail {

/// lambda_n = e^{i 2 p pi n / k} as a T; exact 1 when p = 0. The exponent is
/// reduced mod k first so that lambda_{n+k} == lambda_n holds bit-exactly.
template <class T>
T lambda_value(Index k, Index p, Index n) {
  if (p >= k) throw ConfigError("mode p must satisfy 0 <= p < k");
  if (p == 0) return scalar_traits<T>::one();
  if constexpr (scalar_traits<T>::backend == Backend::cplx) {
    Index r = (p * (n % k)) % k;
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(k));
  } else {
    throw ConfigError("zeta3 with p != 0 needs the complex backend");
  }
}

}  // namespace detail

/// The k-periodic unit sequence lambda_n = e^{i 2 p pi n / k}.
inline std::vector<Complex> build_lambda(Index k, Index p, Index n_max) {
  std::vector<Complex> lambda;
  lambda.reserve(n_max + 1);
  for (Index n = 0; n <= n_max; ++n) lambda.push_back(detail::lambda_value<Complex>(k, p, n));
  return lambda;
}

/// Coefficient sequence of zeta3, by iterating its defining recurrence
/// gamma_{n+k} = A_n gamma_n - B_n lambda_n. seeds are gamma_0..gamma_{k-1}.
template <class T>
std::vector<T> build_gamma(const Model<T>& model, std::span<const T> seeds, Index p, Index n_max) {
  if (seeds.size() != model.order) throw ConfigError("need exactly k seed values");
  std::vector<T> gamma(seeds.begin(), seeds.end());
  gamma.reserve(n_max + 1);
  for (Index n = 0; n + model.order <= n_max; ++n)
    gamma.push_back(model.coeff_a(n) * gamma[n] -
                    model.coeff_b(n) * detail::lambda_value<T>(model.order, p, n));
  gamma.resize(std::min<Index>(gamma.size(), n_max + 1));
  return gamma;
}

/// One of the three characteristic families:
///   zeta1(n, z) = alpha_n + (B_n/A_n) alpha_n z,
///   zeta2(n, z) = beta_n z^2,
///   zeta3(n, z) = lambda_n z + gamma_n z^2.
/// Coefficients are built once, through built_to() inclusive.
template <class T>
class InfinitesimalFamily {
 public:
  static InfinitesimalFamily zeta1(Model<T> model, std::span<const T> seeds, Index n_max) {
    auto coeff = build_alpha(model, seeds, n_max);
    return InfinitesimalFamily(FamilyKind::zeta1, std::move(model), std::move(coeff), {}, 0, n_max);
  }
  static InfinitesimalFamily zeta2(Model<T> model, std::span<const T> seeds, Index n_max) {
    auto coeff = build_beta(model, seeds, n_max);
    return InfinitesimalFamily(FamilyKind::zeta2, std::move(model), std::move(coeff), {}, 0, n_max);
  }
  static InfinitesimalFamily zeta3(Model<T> model, std::span<const T> seeds, Index p, Index n_max) {
    std::vector<T> lambda;
    lambda.reserve(n_max + 1);
    for (Index n = 0; n <= n_max; ++n)
      lambda.push_back(detail::lambda_value<T>(model.order, p, n));
    auto coeff = build_gamma(model, seeds, p, n_max);
    return InfinitesimalFamily(FamilyKind::zeta3, std::move(model), std::move(coeff),
                               std::move(lambda), p, n_max);
  }

  FamilyKind kind() const { return kind_; }
  const Model<T>& model() const { return model_; }
  Index mode_p() const { return mode_p_; }
  Index built_to() const { return built_to_; }

  /// alpha_n / beta_n / gamma_n depending on the family.
  const T& coefficient(Index n) const {
    require_built(n);
    return coeff_[n];
  }
  const T& lambda(Index n) const {
    if (kind_ != FamilyKind::zeta3) throw PreconditionError("lambda is defined for zeta3 only");
    require_built(n);
    return lambda_[n];
  }

  /// zeta(n, z).
  T value(Index n, const T& z) const {
    require_built(n);
    switch (kind_) {
      case FamilyKind::zeta1: {
        T a = model_.coeff_a(n);
        T b = model_.coeff_b(n);
        return coeff_[n] + (b / a) * coeff_[n] * z;
      }
      case FamilyKind::zeta2: return coeff_[n] * z * z;
      case FamilyKind::zeta3: return lambda_[n] * z + coeff_[n] * z * z;
    }
    throw DomainError("corrupt family");
  }

  /// Test hook: overwrite one coefficient to model a corrupted family.
  void corrupt(Index n, T value) { coeff_.at(n) = std::move(value); }

 private:
  InfinitesimalFamily(FamilyKind kind, Model<T> model, std::vector<T> coeff,
                      std::vector<T> lambda, Index p, Index n_max)
      : kind_(kind), model_(std::move(model)), coeff_(std::move(coeff)),
        lambda_(std::move(lambda)), mode_p_(p), built_to_(std::min<Index>(n_max, coeff_.size() - 1)) {}

  void require_built(Index n) const {
    if (n >= coeff_.size())
      throw DomainError("family coefficients built through n = " + std::to_string(built_to_) +
                        ", requested n = " + std::to_string(n));
  }

  FamilyKind kind_;
  Model<T> model_;
  std::vector<T> coeff_;
  std::vector<T> lambda_;
  Index mode_p_;
  Index built_to_;
};

template <class T>
T characteristic_value(const InfinitesimalFamily<T>& family, Index n, const T& z) {
  return family.value(n, z);
}

/// Residual of the invariance condition at (n, z):
///   zeta(n+k, z/(A_n + B_n z)) - [A_n/(A_n + B_n z)^2] zeta(n, z).
/// Vanishes identically for a valid symmetry family; requires coefficients
/// built through n + k and A_n + B_n z != 0.
template <class T>
T symmetry_residual(const Model<T>& model, const InfinitesimalFamily<T>& family, Index n,
                    const T& z) {
  T a = model.coeff_a(n);
  T den = a + model.coeff_b(n) * z;
  if (is_zero(den))
    throw DomainError("singular point: A_n + B_n z = 0 at n = " + std::to_string(n));
  T image = z / den;
  T lhs = family.value(n + model.order, image);
  T rhs = (a / (den * den)) * family.value(n, z);
  return lhs - rhs;
}

/// The side condition under which zeta1 actually satisfies the invariance
/// condition: B_{n+k} + A_{n+k} B_n = 0 for every n (e.g. constant A = -1,
/// or B identically 0). zeta1 is verified against this, never assumed.
template <class T>
bool zeta1_admissible(const Model<T>& model, Index n_max) {
  Index k = model.order;
  for (Index n = 0; n + k <= n_max; ++n) {
    T lhs = model.coeff_b(n + k) + model.coeff_a(n + k) * model.coeff_b(n);
    if constexpr (scalar_traits<T>::exact) {
      if (!is_zero(lhs)) return false;
    } else {
      if (scalar_traits<T>::abs_approx(lhs) > 1e-12) return false;
    }
  }
  return true;
}

/// Canonical coordinate of the zeta2 reduction: S_n = -1/(beta_n z).
template <class T>
T canonical_coordinate(const InfinitesimalFamily<T>& family, Index n, const T& z) {
  if (family.kind() != FamilyKind::zeta2)
    throw PreconditionError("the canonical coordinate is defined for zeta2");
  const T& beta = family.coefficient(n);
  if (is_zero(beta)) throw DomainError("beta_n = 0 at n = " + std::to_string(n));
  if (is_zero(z)) throw DomainError("canonical coordinate undefined at z = 0");
  return -(scalar_traits<T>::one() / (beta * z));
}

/// Linearized coordinates of a trajectory, with conformance diagnostics.
template <class T>
struct LinearizationReport {
  std::vector<T> s;                        // s[n] = 1/z_n over the defined prefix
  TrajectoryStatus status = TrajectoryStatus::complete;
  std::optional<Index> truncated_at;
  std::string truncation_reason;
  double max_recurrence_residual = 0.0;    // |s_{n+k} - (A_n s_n + B_n)|, scaled
  double max_direct_deviation = 0.0;       // iterated s vs the product/sum form
  bool recurrence_exact = true;            // exact backends only
  bool direct_exact = true;
};

/// S~_n = 1/z_n for the iterated trajectory. Verifies the linear recurrence
/// S~_{n+k} = A_n S~_n + B_n at every index, and that evaluating the
/// iterated product/sum form directly reproduces the same sequence.
template <class T>
LinearizationReport<T> linearized_trajectory(const Model<T>& model, std::span<const T> ic,
                                             Index horizon) {
  Trajectory<T> traj = iterate(model, ic, horizon);
  LinearizationReport<T> rep;
  rep.status = traj.status;
  rep.truncated_at = traj.truncated_at;
  rep.truncation_reason = traj.truncation_reason;
  rep.s.reserve(traj.size());
  for (Index n = 0; n < traj.size(); ++n) {
    if (is_zero(traj.values[n])) {
      rep.status = TrajectoryStatus::truncated;
      rep.truncated_at = n;
      rep.truncation_reason = "z_" + std::to_string(n) + " = 0: linearized coordinate undefined";
      break;
    }
    rep.s.push_back(scalar_traits<T>::one() / traj.values[n]);
  }

  Index k = model.order;
  for (Index n = 0; n + k < rep.s.size(); ++n) {
    T expect = model.coeff_a(n) * rep.s[n] + model.coeff_b(n);
    if (rep.s[n + k] != expect) rep.recurrence_exact = false;
    rep.max_recurrence_residual =
        std::max(rep.max_recurrence_residual, rel_diff(rep.s[n + k], expect));
  }

  // direct evaluation: S~_{km+j} = S~_j prod A + sum B prod A
  for (Index j = 0; j < k && j < rep.s.size(); ++j) {
    T product = scalar_traits<T>::one();
    T sum = scalar_traits<T>::zero();
    for (Index m = 0; k * m + j < rep.s.size(); ++m) {
      if (m > 0) {
        Index i = k * (m - 1) + j;
        T a = model.coeff_a(i);
        sum = a * sum + model.coeff_b(i);
        product = product * a;
      }
      T direct = rep.s[j] * product + sum;
      if (direct != rep.s[k * m + j]) rep.direct_exact = false;
      rep.max_direct_deviation =
          std::max(rep.max_direct_deviation, rel_diff(direct, rep.s[k * m + j]));
    }
  }
  return rep;
}

}  // namespace bevholt
