#pragma once

#include <random>
#include <vector>

#include "bevholt/model.hpp"
#include "bevholt/solver.hpp"

namespace bevholt::testsupport {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int lo = -9, int hi = 9, int den_hi = 9,
                                bool nonzero = true) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_hi);
  while (true) {
    Rational r{BigInt(num(rng)), BigInt(den(rng))};
    if (!nonzero || !r.is_zero()) return r;
  }
}

/// Nonzero rational coefficient with value != 1 (usable as A_j everywhere).
inline Rational random_coefficient(Rng& rng) {
  while (true) {
    Rational r = random_rational(rng);
    if (!r.is_one()) return r;
  }
}

struct RandomRun {
  Model<Rational> model;
  std::vector<Rational> ic;
};

/// k-periodic nonzero rational A, B with A_j != 1, random rational seeds.
inline RandomRun random_periodic_run(Rng& rng, Index k) {
  std::vector<Rational> a, b;
  for (Index j = 0; j < k; ++j) {
    a.push_back(random_coefficient(rng));
    b.push_back(random_rational(rng));
  }
  RandomRun run{make_model<Rational>(k, CoefficientSequence<Rational>::periodic(std::move(a)),
                                     CoefficientSequence<Rational>::periodic(std::move(b))),
                {}};
  for (Index j = 0; j < k; ++j) run.ic.push_back(random_rational(rng));
  return run;
}

/// As above, resampling the seeds until the trajectory is singularity-free
/// over the horizon.
inline RandomRun random_complete_run(Rng& rng, Index k, Index horizon) {
  while (true) {
    RandomRun run = random_periodic_run(rng, k);
    if (iterate<Rational>(run.model, run.ic, horizon).is_complete()) return run;
  }
}

}  // namespace bevholt::testsupport
