#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tripec/parallel.hpp"

namespace tripec {

// Fixed-length binary word packed into 64-bit limbs; bits past `length` stay zero.
struct PackedBits {
  std::size_t length = 0;
  std::vector<std::uint64_t> words;

  PackedBits() = default;
  explicit PackedBits(std::size_t len) : length(len), words((len + 63) / 64, 0) {}

  void set(std::size_t i, bool value = true) {
    const auto mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words[i / 64] |= mask;
    } else {
      words[i / 64] &= ~mask;
    }
  }
  bool get(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1u; }
  int weight() const;
  PackedBits& operator^=(const PackedBits& other);
  bool operator==(const PackedBits&) const = default;
};

struct SpanEnumeration {
  unsigned threads = 1;
  // Basis vectors [0, low_bits) are walked in Gray-code order inside each
  // prefix; the remaining high vectors form prefixes split across workers.
  unsigned low_bits = 0;
  ProgressFn progress;
};

// Histogram (index = Hamming weight, size length+1) over all 2^k combinations
// of the basis, counted with multiplicity. Each step of the inner walk XORs one
// basis vector into the accumulator and takes one population count.
std::vector<std::uint64_t> span_weight_histogram(std::span<const PackedBits> basis,
                                                 const SpanEnumeration& options);

}  // namespace tripec
