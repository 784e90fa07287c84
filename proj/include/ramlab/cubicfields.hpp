#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ramlab/cubic_form.hpp"
#include "ramlab/histogram.hpp"
#include "ramlab/quadfields.hpp"

namespace ramlab {

class FactorTable;

using FormSink = std::function<void(std::span<const CubicForm>)>;

/// Streams exactly one reduced representative (see is_reduced) of every GL2(Z)
/// class of irreducible integral binary cubic forms with 0 < |disc| <= X.
/// Negative discriminants come first. Work is split into (sign, a, b) blocks;
/// batches arrive in block order regardless of the worker count. Returns the
/// number of forms.
std::uint64_t enumerate_reduced_forms(std::uint64_t X, const FormSink& sink, int workers = 0);

enum class GaloisFilter { kAll, kS3, kCyclic };

struct CubicOptions {
  GaloisFilter only = GaloisFilter::kAll;
  int workers = 0;
  /// Called with the running number of reduced forms, roughly every 10^6.
  std::function<void(std::uint64_t)> progress;
  /// Optional prebuilt table covering at least X; built internally otherwise.
  const FactorTable* table = nullptr;
};

struct CubicSummary {
  std::uint64_t forms = 0;
  std::uint64_t fields = 0;
  Histogram histogram;
};

/// One record per cubic field with |D_K| <= X: reduced forms that are maximal
/// at every prime whose square divides the discriminant. omega comes from the
/// shared factor table; is_cyclic iff the discriminant is a perfect square.
/// The library precondition is X >= 23.
CubicSummary enumerate_cubic_fields(std::uint64_t X, const RecordSink& sink, const CubicOptions& options = {});

/// Convenience wrapper collecting all records; intended for small X.
std::vector<FieldRecord> cubic_fields(std::uint64_t X, GaloisFilter only = GaloisFilter::kAll);

bool is_perfect_square(std::int64_t n);

}  // namespace ramlab
