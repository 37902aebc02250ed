#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tripec/field.hpp"
#include "tripec/gray_span.hpp"

namespace tripec {

using BigInt = boost::multiprecision::cpp_int;

struct WeightDistribution {
  std::uint32_t length = 0;
  BigInt code_size = 0;
  std::map<std::uint32_t, BigInt> counts;  // weight -> number of codewords; zero counts omitted

  // Smallest nonzero weight with a positive count, if any.
  std::optional<std::uint32_t> min_positive_weight() const;
  bool operator==(const WeightDistribution&) const = default;
};

WeightDistribution from_histogram(std::uint32_t length, const std::vector<std::uint64_t>& histogram);

// Canonical CSV: "weight,count" header, ascending weight, decimal counts, '\n' line endings.
std::string to_csv(const WeightDistribution& dist);

// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

struct DualOptions {
  unsigned threads = 1;
  ProgressFn progress;  // units are values of the delta component
};

inline constexpr int kMaxDualDegree = 11;

// Weights of c(eps, gamma, delta) = (Tr(eps x + gamma x^d1 + delta x^d2))_{x in F*}
// over all 2^(3m) triples. Coordinates are ordered x = alpha^0 ... alpha^(n-1).
// Work is split over delta; each worker walks (eps, gamma) in Gray-code order.
// Throws std::invalid_argument unless 1, d1, d2 lie in distinct cosets of size m,
// and std::length_error when m exceeds kMaxDualDegree.
WeightDistribution dual_trace_distribution(const FieldTables& field, std::uint32_t d1, std::uint32_t d2,
                                           const DualOptions& options = {});

// The 3m basis words Tr(alpha^j x), Tr(alpha^j x^d1), Tr(alpha^j x^d2), j < m, in that order.
std::vector<PackedBits> dual_trace_basis(const FieldTables& field, std::uint32_t d1, std::uint32_t d2);

// Weight distribution of the dual code. Throws std::domain_error when a count
// comes out negative or non-integral, which means the input was not the
// distribution of a linear code.
WeightDistribution macwilliams_transform(const WeightDistribution& dist);

// Largest e with 2^e dividing every nonzero weight in the support.
int two_power_divisibility(const WeightDistribution& dist);

struct ApnReport {
  int m = 0;
  std::uint32_t exponent = 0;
  bool is_apn = false;
  std::uint32_t max_solutions = 0;  // max over e != 0 and c of #{x : (x+e)^d + x^d = c}
};

ApnReport apn_check(const FieldTables& field, std::uint32_t d);

struct ApnExponent {
  std::string family;
  int r = 0;  // family parameter, 0 when the family has none
  std::uint32_t exponent = 0;  // reduced mod n
};

// Every exponent from the known APN families that applies at odd m.
std::vector<ApnExponent> known_apn_exponents(int m);

using ExponentPair = std::pair<std::uint32_t, std::uint32_t>;

// Pairs listed for m in {5, 7, 9, 11} as having the triple-error-correcting BCH distribution.
std::vector<ExponentPair> listed_pairs(int m);

struct PairComparison {
  ExponentPair pair;
  WeightDistribution distribution;
  bool equal_to_baseline = false;
};

struct HarnessReport {
  int m = 0;
  WeightDistribution baseline;  // dual of C_{1,3,5}
  std::vector<PairComparison> results;
  bool all_equal() const;
};

HarnessReport table_harness(const FieldTables& field, const std::vector<ExponentPair>& pairs,
                            const DualOptions& options = {});

}  // namespace tripec
