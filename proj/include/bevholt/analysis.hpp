#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bevholt/errors.hpp"
#include "bevholt/model.hpp"
#include "bevholt/solver.hpp"
#include "bevholt/trajectory.hpp"

namespace bevholt {

enum class Stability { locally_asymptotically_stable, unstable, non_hyperbolic };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::locally_asymptotically_stable: return "locally-asymptotically-stable";
    case Stability::unstable: return "unstable";
    case Stability::non_hyperbolic: return "non-hyperbolic";
  }
  return "?";
}

template <class T>
struct EquilibriumReport {
  T equilibrium;
  Complex multiplier;                 // f'(z-bar): 1/A at 0, A at (1-A)/B
  std::vector<Complex> roots;         // the k solutions of lambda^k = multiplier
  Stability classification = Stability::non_hyperbolic;
};

namespace detail {

template <class T>
std::pair<T, T> constant_coefficients_of(const Model<T>& model, const char* op) {
  if (!model.constant_coefficients())
    throw DomainError(std::string(op) + " handles constant-coefficient models only");
  return {model.coeff_a(0), model.coeff_b(0)};
}

/// sign of |x| - 1: -1, 0, +1. Exact in the rational backend.
template <class T>
int modulus_vs_one(const T& x) {
  if constexpr (scalar_traits<T>::backend == Backend::rational) {
    Rational a = x.abs();
    if (a == Rational(1)) return 0;
    return a < Rational(1) ? -1 : 1;
  } else {
    double a = scalar_traits<T>::abs_approx(x);
    if (a == 1.0) return 0;
    return a < 1.0 ? -1 : 1;
  }
}

template <class T>
Complex to_complex(const T& x) {
  if constexpr (scalar_traits<T>::backend == Backend::cplx) {
    return x;
  } else if constexpr (scalar_traits<T>::backend == Backend::real) {
    return Complex(x, 0.0);
  } else {
    return Complex(x.to_double(), 0.0);
  }
}

}  // namespace detail

/// Fixed points of z -> z/(A + Bz): always 0, plus (1-A)/B when B != 0 and
/// A != 1.
template <class T>
std::vector<T> equilibria(const Model<T>& model) {
  auto [a, b] = detail::constant_coefficients_of(model, "equilibria");
  std::vector<T> out{scalar_traits<T>::zero()};
  if (!is_zero(b) && a != scalar_traits<T>::one()) out.push_back((scalar_traits<T>::one() - a) / b);
  return out;
}

namespace detail {

/// Identifies which equilibrium z-bar is and returns the multiplier f'(z-bar)
/// in the backend type: 1/A at 0 and A at (1-A)/B.
template <class T>
T multiplier_at(const Model<T>& model, const T& equilibrium) {
  auto [a, b] = constant_coefficients_of(model, "equilibrium analysis");
  if (is_zero(equilibrium)) return scalar_traits<T>::one() / a;
  if (!is_zero(b) && a != scalar_traits<T>::one()) {
    T nonzero = (scalar_traits<T>::one() - a) / b;
    if constexpr (scalar_traits<T>::exact) {
      if (equilibrium == nonzero) return a;
    } else {
      if (rel_diff(equilibrium, nonzero) <= 1e-9) return a;
    }
  }
  throw DomainError("value " + scalar_traits<T>::render(equilibrium) + " is not an equilibrium");
}

}  // namespace detail

/// The k roots of the characteristic equation lambda^k = f'(z-bar).
template <class T>
std::vector<Complex> characteristic_roots(const Model<T>& model, const T& equilibrium) {
  Complex m = detail::to_complex(detail::multiplier_at(model, equilibrium));
  Index k = model.order;
  double r = std::pow(std::abs(m), 1.0 / static_cast<double>(k));
  double theta = std::arg(m);
  std::vector<Complex> roots;
  roots.reserve(k);
  for (Index q = 0; q < k; ++q)
    roots.push_back(std::polar(r, (theta + 2.0 * M_PI * static_cast<double>(q)) /
                                      static_cast<double>(k)));
  return roots;
}

/// Stability of an equilibrium by the root-modulus rule: all |lambda| < 1
/// is locally asymptotically stable, any |lambda| > 1 is unstable, any
/// |lambda| = 1 is non-hyperbolic. For the binomial characteristic equation
/// this reduces to comparing |A| with 1, which the exact backend decides
/// without rounding:
///   z-bar = 0:        stable iff |A| > 1, unstable iff |A| < 1;
///   z-bar = (1-A)/B:  stable iff |A| < 1, unstable iff |A| > 1;
///   |A| = 1:          non-hyperbolic at both.
template <class T>
EquilibriumReport<T> classify(const Model<T>& model, const T& equilibrium) {
  EquilibriumReport<T> rep;
  rep.equilibrium = equilibrium;
  T mult = detail::multiplier_at(model, equilibrium);
  rep.multiplier = detail::to_complex(mult);
  rep.roots = characteristic_roots(model, equilibrium);
  int cmp = detail::modulus_vs_one(mult);
  if (cmp == 0)
    rep.classification = Stability::non_hyperbolic;
  else if (cmp < 0)
    rep.classification = Stability::locally_asymptotically_stable;
  else
    rep.classification = Stability::unstable;
  return rep;
}

/// Sufficient criterion only: sum |p_i| < 1 places every characteristic
/// root inside the open unit disk. A false result is inconclusive.
inline bool sufficient_stability(std::span<const double> p_coefficients) {
  double sum = 0.0;
  for (double p : p_coefficients) sum += std::fabs(p);
  return sum < 1.0;
}

/// Characteristic polynomial coefficients of the order-k map at z-bar:
/// p_0 = f'(z-bar), p_1..p_{k-1} = 0.
template <class T>
std::vector<double> characteristic_coefficients(const Model<T>& model, const T& equilibrium) {
  std::vector<double> p(model.order, 0.0);
  p[0] = detail::to_complex(detail::multiplier_at(model, equilibrium)).real();
  return p;
}

enum class PeriodCertificate { exact_equality, tolerance, k_periodic_seed, constant_seed, two_cycle };

inline std::string to_string(PeriodCertificate c, double tol = 0.0) {
  switch (c) {
    case PeriodCertificate::exact_equality: return "exact-equality";
    case PeriodCertificate::tolerance: return "tolerance(" + render_double(tol) + ")";
    case PeriodCertificate::k_periodic_seed: return "k-periodic-seed";
    case PeriodCertificate::constant_seed: return "constant-seed";
    case PeriodCertificate::two_cycle: return "two-cycle(A=-1)";
  }
  return "?";
}

struct PeriodReport {
  std::optional<Index> minimal_period;
  PeriodCertificate certified_by = PeriodCertificate::exact_equality;
  double tolerance = 0.0;
  Index window = 0;                  // defined prefix actually checked
  bool trajectory_truncated = false;
  std::string note;
};

namespace detail {

template <class T>
bool period_equal(const T& a, const T& b, double rel_tol) {
  if constexpr (scalar_traits<T>::exact)
    return a == b;
  else
    return rel_diff(a, b) <= rel_tol;
}

}  // namespace detail

/// Minimal p <= window/2 with z_{n+p} = z_n for every checked n, or none.
/// Equality is exact in the rational backend and within the given relative
/// tolerance otherwise. Candidates are scanned in increasing order, so an
/// accepted period has no smaller period (in particular no proper divisor)
/// over the window. Truncated trajectories are analyzed over their defined
/// prefix.
template <class T>
PeriodReport detect_period(const Trajectory<T>& traj, double rel_tol = 1e-9) {
  PeriodReport rep;
  rep.window = traj.size();
  rep.trajectory_truncated = !traj.is_complete();
  rep.certified_by =
      scalar_traits<T>::exact ? PeriodCertificate::exact_equality : PeriodCertificate::tolerance;
  rep.tolerance = scalar_traits<T>::exact ? 0.0 : rel_tol;
  Index len = traj.size();
  for (Index p = 1; p <= len / 2; ++p) {
    if (!detail::period_equal(traj.values[p], traj.values[0], rel_tol)) continue;
    bool ok = true;
    for (Index n = 0; n + p < len; ++n) {
      if (!detail::period_equal(traj.values[n + p], traj.values[n], rel_tol)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      rep.minimal_period = p;
      break;
    }
  }
  return rep;
}

/// The seed vector z_j = (1-A_j)/B_j, j = 0..k-1, whose trajectory repeats
/// every k steps for k-periodic coefficients. Requires A_j != 1 and
/// B_j != 0; errors name the offending strand.
template <class T>
std::vector<T> periodic_initial_conditions(const Model<T>& model) {
  if (!model.k_periodic_coefficients())
    throw PreconditionError("periodic initial conditions need k-periodic (or constant) A and B");
  std::vector<T> ic;
  ic.reserve(model.order);
  for (Index j = 0; j < model.order; ++j) {
    T a = model.coeff_a(j);
    T b = model.coeff_b(j);
    if (a == scalar_traits<T>::one())
      throw DomainError("A_" + std::to_string(j) + " = 1: seed (1-A_j)/B_j degenerates");
    if (is_zero(b)) throw DomainError("B_" + std::to_string(j) + " = 0: seed (1-A_j)/B_j undefined");
    ic.push_back((scalar_traits<T>::one() - a) / b);
  }
  return ic;
}

namespace detail {

/// Minimal cyclic period of a block: least d >= 1, d | len, with
/// v[(i+d) mod len] == v[i] for all i. (Any shift fixing the block implies
/// its gcd with len does, so divisors suffice.)
template <class T>
Index minimal_cyclic_period(std::span<const T> v) {
  Index len = v.size();
  for (Index d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool ok = true;
    for (Index i = 0; i < len && ok; ++i) ok = v[(i + d) % len] == v[i];
    if (ok) return d;
  }
  return len;
}

}  // namespace detail

/// Checks whether (model, ic) matches one of the certified periodic seed
/// patterns and, if so, returns the certificate with the period it implies.
/// The implied minimal period is the minimal cyclic period of the repeating
/// block (a degenerate seed vector can make it smaller than k or 2k).
template <class T>
std::optional<std::pair<PeriodCertificate, Index>> seed_certificate(const Model<T>& model,
                                                                       std::span<const T> ic) {
  check_initial_conditions(model, ic);
  Index k = model.order;
  if (!model.k_periodic_coefficients()) return std::nullopt;

  // constant A = -1: the orbit is the 2k block (z_j) ++ (z_j/(-1+B z_j)).
  if (model.constant_coefficients() &&
      model.coeff_a(0) == -scalar_traits<T>::one()) {
    std::vector<T> block(ic.begin(), ic.end());
    bool singular = false;
    for (Index j = 0; j < k; ++j) {
      try {
        block.push_back(step(model, ic[j], j));
      } catch (const SingularityError&) {
        singular = true;
        break;
      }
    }
    if (!singular)
      return std::make_pair(PeriodCertificate::two_cycle,
                            detail::minimal_cyclic_period<T>(block));
  }

  // k-periodic coefficients with the fixed seed z_j = (1-A_j)/B_j.
  bool seed_defined = true;
  for (Index j = 0; j < k && seed_defined; ++j)
    seed_defined = model.coeff_a(j) != scalar_traits<T>::one() && !is_zero(model.coeff_b(j));
  if (seed_defined) {
    std::vector<T> seed = periodic_initial_conditions(model);
    bool match = true;
    for (Index j = 0; j < k && match; ++j) match = ic[j] == seed[j];
    if (match) {
      Index p = detail::minimal_cyclic_period<T>(std::span<const T>(seed));
      bool constant_case = model.constant_coefficients() && p == 1;
      return std::make_pair(constant_case ? PeriodCertificate::constant_seed
                                          : PeriodCertificate::k_periodic_seed,
                            p);
    }
  }
  return std::nullopt;
}

/// detect_period over a freshly iterated trajectory, upgraded with a
/// seed certificate when one applies and agrees with the empirical
/// minimal period.
template <class T>
PeriodReport certified_period(const Model<T>& model, std::span<const T> ic, Index horizon,
                              double rel_tol = 1e-9) {
  Trajectory<T> traj = iterate(model, ic, horizon);
  PeriodReport rep = detect_period(traj, rel_tol);
  if (auto cert = seed_certificate(model, ic)) {
    if (rep.minimal_period && *rep.minimal_period == cert->second) {
      rep.certified_by = cert->first;
    } else {
      rep.note = "seed certificate predicts period " + std::to_string(cert->second) +
                 " but the trajectory shows " +
                 (rep.minimal_period ? std::to_string(*rep.minimal_period) : std::string("none"));
    }
  }
  return rep;
}

}  // namespace bevholt
