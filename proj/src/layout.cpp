// Copyright 2026 The kuniform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kuniform/layout.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "kuniform/types.hpp"

namespace kuniform {

QuditLayout::QuditLayout(int n, int d) : n_(n), d_(d), dim_(1) {
  if (n < 1) throw InputError("party count n must be >= 1");
  if (n > 63) throw InputError("party count n must be <= 63");
  if (d < 2) throw InputError("local dimension d must be >= 2");
  for (int i = 0; i < n; ++i) {
    if (dim_ > kMaxDimension / static_cast<std::size_t>(d)) {
      throw InputError("d^n = " + std::to_string(d) + "^" + std::to_string(n) +
                       " exceeds the supported state dimension");
    }
    dim_ *= static_cast<std::size_t>(d);
  }
  strides_.resize(static_cast<std::size_t>(n));
  std::size_t s = 1;
  for (int p = n; p >= 1; --p) {
    strides_[static_cast<std::size_t>(p - 1)] = s;
    s *= static_cast<std::size_t>(d);
  }
}

std::size_t QuditLayout::dim_of(int count) const {
  if (count < 0 || count > n_) throw InputError("subsystem size out of range");
  std::size_t r = 1;
  for (int i = 0; i < count; ++i) r *= static_cast<std::size_t>(d_);
  return r;
}

SubsetMask::SubsetMask(std::initializer_list<int> parties)
    : SubsetMask(from_indices(std::vector<int>(parties))) {}

SubsetMask SubsetMask::from_indices(const std::vector<int>& parties) {
  std::uint64_t bits = 0;
  for (int p : parties) {
    if (p < 1 || p > 64) {
      throw InputError("party index " + std::to_string(p) + " out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << (p - 1);
    if (bits & bit) {
      throw InputError("duplicate party index " + std::to_string(p));
    }
    bits |= bit;
  }
  return SubsetMask(bits);
}

SubsetMask SubsetMask::all(int n) {
  return SubsetMask(n >= 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << n) - 1);
}

int SubsetMask::size() const { return std::popcount(bits_); }

std::vector<int> SubsetMask::indices() const {
  std::vector<int> out;
  for (int p = 1; p <= 64; ++p) {
    if (contains(p)) out.push_back(p);
  }
  return out;
}

SubsetMask SubsetMask::complement(int n) const {
  return SubsetMask(all(n).bits_ & ~bits_);
}

void SubsetMask::validate(int n) const {
  if ((bits_ & ~all(n).bits_) != 0) {
    throw InputError("subset " + to_string() + " has a party index beyond n = " +
                     std::to_string(n));
  }
}

std::string SubsetMask::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int p : indices()) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  os << '}';
  return os.str();
}

bool SubsetMask::operator<(const SubsetMask& other) const {
  const auto a = indices();
  const auto b = other.indices();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<SubsetMask> subsets_of_size(int n, int k) {
  std::vector<SubsetMask> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(SubsetMask::from_indices(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<SubsetMask> all_subsets(int n) {
  if (n > 30) throw InputError("too many parties to enumerate all subsets");
  std::vector<SubsetMask> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    out.push_back(SubsetMask::from_bits(b));
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

}  // namespace kuniform
