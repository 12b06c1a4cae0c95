#include "coordnet/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace coordnet {

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

ZipfSampler::ZipfSampler(std::size_t size, double exponent) {
  if (size == 0) throw std::invalid_argument("zipf pool must be nonempty");
  cumulative_.resize(size);
  double total = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cumulative_[r] = total;
  }
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

std::size_t ZipfSampler::sample(Rng& rng) const {
  double u = rng.uniform_real();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace coordnet
