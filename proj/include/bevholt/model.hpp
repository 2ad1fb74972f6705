#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bevholt/errors.hpp"
#include "bevholt/scalar.hpp"
#include "bevholt/sequence.hpp"

namespace bevholt {

enum class Mode { math, ecological };

/// The order-k recurrence z_{n+k} = z_n / (A_n + B_n z_n).
///
/// The index set splits into k independent strands {kn + j : n >= 0}; the
/// value at kn + j depends only on strand j. In ecological mode the model
/// additionally keeps the (mu, K) sequences it was derived from, with
/// mu_n > 1 and K_n > 0 enforced; in math mode only A_n != 0 is required.
template <class T>
struct Model {
  Index order = 1;
  CoefficientSequence<T> A;
  CoefficientSequence<T> B;
  Mode mode = Mode::math;
  std::optional<CoefficientSequence<T>> mu;
  std::optional<CoefficientSequence<T>> K;

  /// A_n, with the nonzero invariant enforced at the point of use.
  T coeff_a(Index n) const {
    T a = A.sample(n);
    if (is_zero(a)) throw DomainError("A_" + std::to_string(n) + " = 0 violates the model invariant");
    return a;
  }

  T coeff_b(Index n) const { return B.sample(n); }

  /// True when both coefficient sequences are periodic with period
  /// dividing k (constants qualify).
  bool k_periodic_coefficients() const {
    auto pa = A.period();
    auto pb = B.period();
    return pa && pb && order % *pa == 0 && order % *pb == 0;
  }

  bool constant_coefficients() const { return A.is_constant() && B.is_constant(); }
};

namespace detail {

template <class T>
void check_nonzero_values(const CoefficientSequence<T>& seq, const char* name) {
  if (auto p = seq.period()) {
    for (Index j = 0; j < *p; ++j)
      if (is_zero(seq.sample(j)))
        throw DomainError(std::string(name) + "_" + std::to_string(j) + " = 0 violates the model invariant");
  }
}

}  // namespace detail

/// Math-mode model from direct (A, B) coefficients. Periodic/constant A is
/// checked for zeros eagerly; formula-backed A is checked at sample time.
template <class T>
Model<T> make_model(Index k, CoefficientSequence<T> A, CoefficientSequence<T> B) {
  if (k < 1) throw ConfigError("model order k must be >= 1");
  detail::check_nonzero_values(A, "A");
  Model<T> m;
  m.order = k;
  m.A = std::move(A);
  m.B = std::move(B);
  return m;
}

/// A_n = 1/mu_n and B_n = (mu_n - 1)/(K_n mu_n).
///
/// Requires mu_n != 0 and K_n != 0 at every sampled index; errors name the
/// offending index. Periodicity of the inputs carries over to the outputs.
template <class T>
std::pair<CoefficientSequence<T>, CoefficientSequence<T>> coefficients_from_ecology(
    const CoefficientSequence<T>& mu, const CoefficientSequence<T>& K) {
  auto a_of = [](const T& m, Index n) {
    if (is_zero(m)) throw DomainError("mu_" + std::to_string(n) + " = 0 in ecological coefficients");
    return scalar_traits<T>::one() / m;
  };
  auto b_of = [](const T& m, const T& k_, Index n) {
    if (is_zero(m)) throw DomainError("mu_" + std::to_string(n) + " = 0 in ecological coefficients");
    if (is_zero(k_)) throw DomainError("K_" + std::to_string(n) + " = 0 in ecological coefficients");
    return (m - scalar_traits<T>::one()) / (k_ * m);
  };

  auto period = combined_period(mu.period(), K.period());
  if (period) {
    std::vector<T> av, bv;
    av.reserve(*period);
    bv.reserve(*period);
    for (Index j = 0; j < *period; ++j) {
      T m = mu.sample(j);
      T k_ = K.sample(j);
      av.push_back(a_of(m, j));
      bv.push_back(b_of(m, k_, j));
    }
    if (*period == 1)
      return {CoefficientSequence<T>::constant(av[0]), CoefficientSequence<T>::constant(bv[0])};
    return {CoefficientSequence<T>::periodic(std::move(av)), CoefficientSequence<T>::periodic(std::move(bv))};
  }
  auto a_seq = CoefficientSequence<T>::derived(
      [mu, a_of](Index n) { return a_of(mu.sample(n), n); }, std::nullopt, "1/mu(n)");
  auto b_seq = CoefficientSequence<T>::derived(
      [mu, K, b_of](Index n) { return b_of(mu.sample(n), K.sample(n), n); }, std::nullopt,
      "(mu(n) - 1)/(K(n) mu(n))");
  return {std::move(a_seq), std::move(b_seq)};
}

/// Ecological-mode model from growth rate and carrying capacity. Enforces
/// mu_n > 1 and K_n > 0; only the ordered backends support this mode.
template <class T>
Model<T> make_ecological_model(Index k, CoefficientSequence<T> mu, CoefficientSequence<T> K) {
  if constexpr (scalar_traits<T>::backend == Backend::cplx) {
    throw ConfigError("ecological mode needs an ordered backend (rational or float)");
  } else {
    if (k < 1) throw ConfigError("model order k must be >= 1");
    auto check = [](const T& m, const T& k_, Index n) {
      if (!(m > scalar_traits<T>::one()))
        throw DomainError("ecological mode requires mu_" + std::to_string(n) + " > 1");
      if (!(k_ > scalar_traits<T>::zero()))
        throw DomainError("ecological mode requires K_" + std::to_string(n) + " > 0");
    };
    if (auto p = combined_period(mu.period(), K.period())) {
      for (Index j = 0; j < *p; ++j) check(mu.sample(j), K.sample(j), j);
    } else {
      // no finite period to check eagerly; validate every sample on use
      auto mu_checked = CoefficientSequence<T>::derived(
          [mu, K, check](Index n) {
            T m = mu.sample(n);
            check(m, K.sample(n), n);
            return m;
          },
          std::nullopt, "mu(n)");
      mu = std::move(mu_checked);
    }
    auto [a, b] = coefficients_from_ecology(mu, K);
    Model<T> m;
    m.order = k;
    m.A = std::move(a);
    m.B = std::move(b);
    m.mode = Mode::ecological;
    m.mu = std::move(mu);
    m.K = std::move(K);
    return m;
  }
}

/// One application of the map: z -> z / (A_n + B_n z).
/// Exact in the rational backend. A vanishing denominator (the forbidden
/// set) raises SingularityError carrying n and z.
template <class T>
T step(const Model<T>& model, const T& z, Index n) {
  T a = model.coeff_a(n);
  T den = a + model.coeff_b(n) * z;
  if (is_zero(den))
    throw SingularityError(n, scalar_traits<T>::render(z),
                           "denominator A_n + B_n z_n vanished at n = " + std::to_string(n) +
                               ", z = " + scalar_traits<T>::render(z));
  return z / den;
}

}  // namespace bevholt
