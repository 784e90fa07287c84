#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ramlab/histogram.hpp"

namespace ramlab {

/// Receives records in batches. Batches arrive in a fixed, schedule-independent
/// order.
using RecordSink = std::function<void(std::span<const FieldRecord>)>;

/// Streams one record per quadratic field with |D| <= X, ordered by |D| with
/// the positive discriminant first on ties. Squarefreeness and omega come
/// from a single segmented sieve pass. Returns the number of records.
std::uint64_t enumerate_fundamental_discriminants(std::uint64_t X, const RecordSink& sink, int workers = 0,
                                                  std::uint64_t segment_size = 1u << 20);

/// Convenience wrapper collecting all records; intended for small X.
std::vector<FieldRecord> fundamental_discriminants(std::uint64_t X);

/// Share of quadratic fields with |D| <= X whose discriminant is divisible
/// by the squarefree integer q.
double quadratic_divisibility_ratio(std::uint64_t X, std::uint64_t q, int workers = 0);

}  // namespace ramlab
