#pragma once

#include <cstdint>

#include "ramlab/histogram.hpp"

namespace ramlab {

/// Number of distinct prime divisors of n >= 1 by trial division.
/// Reference implementation; the sieves are checked against it.
int omega_of(std::uint64_t n);

/// Histogram of omega(n) over 2 <= n <= X by a segmented sieve, one
/// segment per work unit. Result does not depend on segment_size or on
/// the worker count (0 = OpenMP default).
Histogram omega_histogram(std::uint64_t X, std::uint64_t segment_size = 1u << 20, int workers = 0);

/// Serial full-range additive sieve: one byte counter per n, incremented at
/// the multiples of every prime p <= X. Kept as the baseline for tests and
/// benchmarks.
Histogram omega_histogram_reference(std::uint64_t X);

}  // namespace ramlab
