#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bevholt/errors.hpp"
#include "bevholt/formula.hpp"
#include "bevholt/scalar.hpp"

namespace bevholt {

/// A coefficient sequence, total over all n >= 0. One of:
///   - constant value,
///   - periodic list of p values (sample(n) = values[n mod p]),
///   - formula sampled per index (float/complex backends only); an optional
///     declared period makes the samples bit-exactly periodic by reducing
///     the index first,
///   - derived (an index function produced by another operation, e.g. the
///     ecological reparameterization of a formula).
///
/// Sequences are immutable after construction and cheap to copy.
template <class T>
class CoefficientSequence {
 public:
  CoefficientSequence() : CoefficientSequence(constant(scalar_traits<T>::zero())) {}

  static CoefficientSequence constant(T value) {
    auto impl = std::make_shared<Impl>();
    impl->values = {std::move(value)};
    impl->period = 1;
    impl->label = "constant";
    return CoefficientSequence(std::move(impl));
  }

  static CoefficientSequence periodic(std::vector<T> values) {
    if (values.empty()) throw ConfigError("periodic sequence needs at least one value");
    auto impl = std::make_shared<Impl>();
    impl->period = values.size();
    impl->values = std::move(values);
    impl->label = "periodic";
    return CoefficientSequence(std::move(impl));
  }

  /// Formula-backed sequence. Rejected in the rational backend: no exact
  /// representation exists for transcendental samples. With declared_period
  /// = p, samples are taken at n mod p; the declaration is spot-checked.
  static CoefficientSequence sampled(Formula f, std::optional<Index> declared_period = {}) {
    if constexpr (scalar_traits<T>::backend == Backend::rational) {
      if (!f.exact_capable())
        throw ConfigError("formula coefficients are not representable in the rational backend; use float or complex");
    }
    auto impl = std::make_shared<Impl>();
    impl->formula = std::move(f);
    impl->label = "formula";
    if (declared_period) {
      if (*declared_period == 0) throw ConfigError("declared period must be positive");
      Index p = *declared_period;
      for (Index j = 0; j < 2 * p; ++j) {
        T a = eval_formula(*impl->formula, j);
        T b = eval_formula(*impl->formula, j % p);
        if (rel_diff(a, b) > 1e-9)
          throw ConfigError("formula is not " + std::to_string(p) + "-periodic (mismatch at n = " + std::to_string(j) + ")");
      }
      impl->period = p;
      impl->values.reserve(p);
      for (Index j = 0; j < p; ++j) impl->values.push_back(eval_formula(*impl->formula, j));
    }
    return CoefficientSequence(std::move(impl));
  }

  static CoefficientSequence derived(std::function<T(Index)> fn, std::optional<Index> period, std::string label) {
    auto impl = std::make_shared<Impl>();
    impl->fn = std::move(fn);
    impl->period = period;
    impl->label = std::move(label);
    return CoefficientSequence(std::move(impl));
  }

  T sample(Index n) const {
    const Impl& im = *impl_;
    if (im.period && !im.values.empty()) return im.values[n % *im.period];
    if (im.fn) {
      if (im.period) return im.fn(n % *im.period);
      return im.fn(n);
    }
    // free-running formula: memoized per index
    {
      std::lock_guard<std::mutex> lock(im.cache_mutex);
      if (n < im.cache.size()) return im.cache[n];
    }
    T v = eval_formula(*im.formula, n);
    {
      std::lock_guard<std::mutex> lock(im.cache_mutex);
      if (im.cache.size() <= n) {
        for (Index i = im.cache.size(); i < n; ++i) im.cache.push_back(eval_formula(*im.formula, i));
        im.cache.push_back(v);
      }
    }
    return v;
  }

  /// Least declared/structural period, or nullopt when unknown
  /// (free-running formulas and unannotated derived sequences).
  std::optional<Index> period() const { return impl_->period; }

  bool is_constant() const { return impl_->period && *impl_->period == 1; }

  const std::optional<Formula>& formula() const { return impl_->formula; }

  /// One-line description for reports and config dumps.
  std::string describe() const {
    const Impl& im = *impl_;
    if (im.formula) {
      std::string s = "formula " + im.formula->str();
      if (im.period) s += " period " + std::to_string(*im.period);
      return s;
    }
    if (!im.values.empty()) {
      std::string s = is_constant() ? "constant " : "periodic ";
      for (Index i = 0; i < im.values.size(); ++i) {
        if (i) s += ", ";
        s += scalar_traits<T>::render(im.values[i]);
      }
      return s;
    }
    std::string s = im.label;
    if (im.period) s += " period " + std::to_string(*im.period);
    return s;
  }

 private:
  struct Impl {
    std::vector<T> values;             // constant/periodic/snapshotted formula
    std::optional<Formula> formula;    // formula-backed
    std::function<T(Index)> fn;        // derived
    std::optional<Index> period;
    std::string label;
    mutable std::mutex cache_mutex;
    mutable std::vector<T> cache;
  };

  static T eval_formula(const Formula& f, Index n) {
    if constexpr (scalar_traits<T>::backend == Backend::rational) {
      return f.eval_rational(n);
    } else if constexpr (scalar_traits<T>::backend == Backend::real) {
      return f.eval_real(n);
    } else {
      return Complex(f.eval_real(n), 0.0);
    }
  }

  explicit CoefficientSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Least common multiple of two optional periods; unknown if either is.
inline std::optional<Index> combined_period(std::optional<Index> a, std::optional<Index> b) {
  if (!a || !b) return std::nullopt;
  return std::lcm(*a, *b);
}

}  // namespace bevholt
