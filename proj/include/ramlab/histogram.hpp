#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ramlab {

/// Exact counts indexed by omega value. total is always the sum of bins.
struct Histogram {
  std::map<int, std::uint64_t> bins;
  std::uint64_t total = 0;
  std::string label;

  void add(int omega, std::uint64_t count = 1);
  Histogram& merge(const Histogram& other);
  std::uint64_t count(int omega) const;
  bool empty() const noexcept { return total == 0; }

  /// Bins and totals only; labels are descriptive.
  friend bool operator==(const Histogram& lhs, const Histogram& rhs) {
    return lhs.total == rhs.total && lhs.bins == rhs.bins;
  }
};

/// One number field, identified by its discriminant.
struct FieldRecord {
  std::int64_t discriminant = 0;
  std::uint8_t omega = 0;
  bool is_cyclic = true;

  friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

}  // namespace ramlab
