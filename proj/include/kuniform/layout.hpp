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

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace kuniform {

/// n parties of local dimension d. Flat basis indices are base-d numbers
/// with party 1 as the most significant digit.
class QuditLayout {
 public:
  /// Largest supported Hilbert-space dimension d^n.
  static constexpr std::size_t kMaxDimension = std::size_t{1} << 28;

  QuditLayout(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t dim() const { return dim_; }

  /// d^count; throws InputError if it exceeds kMaxDimension.
  std::size_t dim_of(int count) const;

  /// Base-d digit of party `party` (1-based) in flat index `index`.
  int digit(std::size_t index, int party) const {
    return static_cast<int>((index / strides_[party - 1]) % d_);
  }
  /// Weight of party `party`'s digit in a flat index.
  std::size_t stride(int party) const { return strides_[party - 1]; }

  bool operator==(const QuditLayout& other) const = default;

 private:
  int n_;
  int d_;
  std::size_t dim_;
  std::vector<std::size_t> strides_;
};

/// A set of party indices (1-based), stored as a bitmask with bit i-1 set
/// for party i.
class SubsetMask {
 public:
  SubsetMask() = default;
  /// Builds from 1-based party indices; rejects duplicates and indices < 1.
  SubsetMask(std::initializer_list<int> parties);
  static SubsetMask from_indices(const std::vector<int>& parties);
  static SubsetMask from_bits(std::uint64_t bits) { return SubsetMask(bits); }
  /// The full set [n].
  static SubsetMask all(int n);

  std::uint64_t bits() const { return bits_; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool contains(int party) const { return (bits_ >> (party - 1)) & 1U; }
  /// Strictly increasing 1-based party list.
  std::vector<int> indices() const;
  SubsetMask complement(int n) const;
  SubsetMask intersect(const SubsetMask& other) const {
    return SubsetMask(bits_ & other.bits_);
  }

  /// Throws InputError unless every member lies in 1..n.
  void validate(int n) const;

  /// "{1,2,4}"
  std::string to_string() const;

  bool operator==(const SubsetMask& other) const = default;
  /// Lexicographic order of the sorted index lists.
  bool operator<(const SubsetMask& other) const;

 private:
  explicit SubsetMask(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// All k-subsets of [n] in lexicographic order of their index lists.
std::vector<SubsetMask> subsets_of_size(int n, int k);

/// All 2^n subsets of [n] in increasing bitmask order.
std::vector<SubsetMask> all_subsets(int n);

/// Binomial coefficient as a double (exact for the ranges used here).
double binomial(int n, int k);

}  // namespace kuniform
