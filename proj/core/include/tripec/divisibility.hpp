#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tripec/parallel.hpp"

namespace tripec {

// Digits and carries for s = sum d_l a^(l) modulo 2^m - 1, with c_{-1} = c_{m-1}.
struct CarryComputation {
  int m = 0;
  std::vector<std::int64_t> d_list;
  std::vector<std::uint64_t> a_list;
  std::uint64_t s = 0;
  std::vector<int> digits;            // s_0 ... s_{m-1}
  std::vector<std::int64_t> carries;  // c_0 ... c_{m-1}
  std::int64_t d_plus = 0;
  std::int64_t d_minus = 0;

  std::int64_t carry_sum() const;
};

inline constexpr int kMaxCarryDegree = 62;

// Throws std::invalid_argument when s is not congruent to sum d_l a^(l), a value
// lies outside [0, 2^m - 1], or some coefficient is zero.
CarryComputation add_with_carry(int m, std::span<const std::int64_t> d_list,
                                std::span<const std::uint64_t> a_list, std::uint64_t s);

// Which representative stands for residue 0 when s = 3a + 13b vanishes mod 2^m - 1.
enum class ZeroResidue { zero, all_ones };

struct NuSequence {
  int m = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t s = 0;
  std::vector<std::int64_t> carries;  // from 2a + a + 8b + 4b + b, each in [0, 4]
  std::vector<std::int64_t> nu;
  std::int64_t total = 0;
};

// Throws std::invalid_argument when a and b are both 0 mod 2^m - 1.
NuSequence nu_sequence(int m, std::uint64_t a, std::uint64_t b, ZeroResidue zero_rep = ZeroResidue::all_ones);

// bit-rotation of an m-bit word: 2^k a mod 2^m - 1 with the all-ones word fixed
std::uint64_t rotate_bits(std::uint64_t a, int k, int m);

inline constexpr int kMaxExhaustiveBits = 26;

struct WeightGain {
  int m = 0;
  std::vector<std::int64_t> d_list;
  int value = 0;  // M(m; d_list)
  std::uint64_t witness_s = 0;
  std::vector<std::uint64_t> witness_a;
};

// Exhaustive M(m; d_list). Every input ranges over [0, 2^m - 1], so residue 0
// is seen as both 0 and 2^m - 1, and s takes 2^m - 1 for residue 0. Throws
// std::length_error ("m exceeds exhaustive cap") when m * |d_list| > 26.
WeightGain max_weight_gain(int m, std::span<const std::int64_t> d_list, unsigned threads = 1,
                           const ProgressFn& progress = {});

int gold_closed_form(int m, int r);

struct Prop3Check {
  bool holds = true;
  std::vector<std::pair<int, int>> witnesses;  // (i, least t) for every i with nu_i >= 2
  std::optional<int> failing_index;
};

// For each i with nu_i >= 2, the least t <= m with nu_i + nu_{i-1} + ... + nu_{i-t+1} <= t.
Prop3Check check_prop3_hypothesis(const NuSequence& nu);

bool check_prop4_bound(const NuSequence& nu);

struct NuSweepReport {
  int m = 0;
  std::uint64_t sequences = 0;  // (a, b, representative of s) triples checked
  std::int64_t max_total = 0;
  std::uint64_t identity_failures = 0;
  std::uint64_t carry_range_failures = 0;
  std::uint64_t prop3_failures = 0;
  std::uint64_t prop4_failures = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_failure;  // (a, b)

  bool passed() const {
    return identity_failures == 0 && carry_range_failures == 0 && prop3_failures == 0 && prop4_failures == 0;
  }
};

// Every a, b in [0, 2^m - 1], not both 0 mod 2^m - 1, with both representatives
// of s when it is 0 mod 2^m - 1.
NuSweepReport sweep_nu_sequences(int m, unsigned threads = 1, const ProgressFn& progress = {});

}  // namespace tripec
