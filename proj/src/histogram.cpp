#include "ramlab/histogram.hpp"

namespace ramlab {

void Histogram::add(int omega, std::uint64_t count) {
  if (count == 0) return;
  bins[omega] += count;
  total += count;
}

Histogram& Histogram::merge(const Histogram& other) {
  for (const auto& [omega, count] : other.bins) add(omega, count);
  return *this;
}

std::uint64_t Histogram::count(int omega) const {
  auto it = bins.find(omega);
  return it == bins.end() ? 0 : it->second;
}

}  // namespace ramlab
