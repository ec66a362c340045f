#pragma once

// Seeded generators of random exact instances. Everything takes an explicit
// engine so runs are reproducible.

#include <cstdint>
#include <random>

#include "nilq/nilalg.hpp"

namespace nilq {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Numerator in [-bound, bound], denominator in [1, bound].
Rational random_rational(Rng& rng, int bound);
/// Nonzero variant of random_rational.
Rational random_nonzero_rational(Rng& rng, int bound);

RatMatrix random_matrix(Rng& rng, Index rows, Index cols, int bound);
RatMatrix random_skew(Rng& rng, Index n, int bound);
RatMatrix random_invertible(Rng& rng, Index n, int bound);
RatVector random_vector(Rng& rng, Index n, int bound);

AlgebraPresentation random_presentation(Rng& rng, Index n, Index m, int bound);
/// Rejection-samples until satisfies_com_cond holds. Requires n >= 2,
/// 1 <= m <= n (n - 1) / 2, and m >= 2 when n is odd.
AlgebraPresentation random_com_cond_presentation(Rng& rng, Index n, Index m, int bound);

Element random_element(Rng& rng, const AlgebraPresentation& p, int bound);

}  // namespace nilq
