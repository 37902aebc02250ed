#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "tripec/cyclic_code.hpp"
#include "tripec/weight_dist.hpp"

namespace tripec {
namespace {

BigInt binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// K_j(i) as the alternating binomial sum
BigInt krawtchouk(int n, int j, int i) {
  BigInt k = 0;
  for (int s = 0; s <= j; ++s) {
    BigInt term = binom(i, s) * binom(n - i, j - s);
    k += (s % 2 == 0) ? term : BigInt(-term);
  }
  return k;
}

WeightDistribution direct_sum_dual(const WeightDistribution& d) {
  WeightDistribution out;
  out.length = d.length;
  out.code_size = (BigInt(1) << d.length) / d.code_size;
  for (std::uint32_t j = 0; j <= d.length; ++j) {
    BigInt s = 0;
    for (const auto& [i, c] : d.counts) s += c * krawtchouk(static_cast<int>(d.length), static_cast<int>(j), static_cast<int>(i));
    EXPECT_EQ(s % d.code_size, 0);
    if (s != 0) out.counts[j] = s / d.code_size;
  }
  return out;
}

WeightDistribution primal(int m, std::vector<std::uint32_t> ex) {
  const auto f = build_field(m);
  return from_histogram(f.n(), enumerate_weight_histogram(define_code(f, ex)));
}

TEST(Distribution, HistogramAndCsv) {
  const auto d = from_histogram(7, {1, 0, 0, 7, 7, 0, 0, 1});
  EXPECT_EQ(d.code_size, 16);
  EXPECT_EQ(d.counts.size(), 4u);
  EXPECT_EQ(d.min_positive_weight(), std::optional<std::uint32_t>(3));
  EXPECT_EQ(to_csv(d), "weight,count\n0,1\n3,7\n4,7\n7,1\n");
  EXPECT_THROW(from_histogram(2, {1, 0, 0, 1}), std::invalid_argument);
}

TEST(Distribution, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(MacWilliams, HammingSimplexPair) {
  // dual of the [7,4] Hamming code is the [7,3] simplex code: all nonzero weights 4
  const auto dual = macwilliams_transform(from_histogram(7, {1, 0, 0, 7, 7, 0, 0, 1}));
  EXPECT_EQ(dual.code_size, 8);
  EXPECT_EQ(dual.counts, (std::map<std::uint32_t, BigInt>{{0, 1}, {4, 7}}));
}

TEST(MacWilliams, RecurrenceMatchesDirectSum) {
  for (auto ex : {std::vector<std::uint32_t>{1, 3, 13}, std::vector<std::uint32_t>{1, 3, 5}, std::vector<std::uint32_t>{1, 5}}) {
    const auto d = primal(5, ex);
    EXPECT_EQ(macwilliams_transform(d), direct_sum_dual(d));
  }
}

TEST(MacWilliams, InvolutionAtM5) {
  const auto d = primal(5, {1, 3, 13});
  EXPECT_EQ(macwilliams_transform(macwilliams_transform(d)), d);
}

TEST(MacWilliams, RejectsNonCodes) {
  WeightDistribution bad;
  bad.length = 3;
  bad.code_size = 2;
  bad.counts = {{0, 1}, {1, 1}};
  EXPECT_NO_THROW(macwilliams_transform(bad));
  bad.code_size = 3;
  bad.counts = {{0, 1}, {1, 2}};
  EXPECT_THROW(macwilliams_transform(bad), std::domain_error);
  bad.code_size = 2;
  bad.counts = {{0, 1}, {3, 2}};
  EXPECT_THROW(macwilliams_transform(bad), std::domain_error);
  WeightDistribution neg;
  neg.length = 4;
  neg.code_size = 4;
  neg.counts = {{0, 1}, {1, 3}};
  EXPECT_THROW(macwilliams_transform(neg), std::domain_error);
}

TEST(Dual, TraceEnumerationMatchesPrimalTransform) {
  const auto f = build_field(5);
  for (auto [d1, d2] : std::vector<ExponentPair>{{3, 13}, {3, 5}, {5, 7}, {3, 15}}) {
    const auto dual = dual_trace_distribution(f, d1, d2);
    EXPECT_EQ(dual.code_size, 1 << 15);
    EXPECT_EQ(macwilliams_transform(primal(5, {1, d1, d2})), dual) << d1 << "," << d2;
  }
}

TEST(Dual, BasisRowsAreTraceWords) {
  const auto f = build_field(5);
  const auto basis = dual_trace_basis(f, 3, 13);
  ASSERT_EQ(basis.size(), 15u);
  // row m+1: Tr(alpha x^3)
  for (std::uint32_t i = 0; i < 31; ++i) EXPECT_EQ(basis[6].get(i), f.trace(f.mul(f.exp(1), f.pow(f.exp(i), 3))) == 1);
}

TEST(Dual, ThreadCountDoesNotChangeResult) {
  const auto f = build_field(7);
  DualOptions one, four;
  four.threads = 4;
  EXPECT_EQ(dual_trace_distribution(f, 3, 13, one), dual_trace_distribution(f, 3, 13, four));
}

TEST(Dual, RejectsBadExponents) {
  const auto f = build_field(5);
  EXPECT_THROW(dual_trace_distribution(f, 3, 6), std::invalid_argument);   // same coset
  EXPECT_THROW(dual_trace_distribution(f, 2, 3), std::invalid_argument);   // coset of 1
  EXPECT_THROW(dual_trace_distribution(f, 0, 3), std::invalid_argument);
  const auto big = build_field(12);
  EXPECT_THROW(dual_trace_distribution(big, 3, 13), std::length_error);
}

TEST(Divisibility, TwoPowerExponent) {
  EXPECT_EQ(two_power_divisibility(from_histogram(8, {1, 0, 0, 0, 6, 0, 0, 0, 1})), 2);
  EXPECT_EQ(two_power_divisibility(from_histogram(7, {1, 0, 0, 7, 7, 0, 0, 1})), 0);
  EXPECT_THROW(two_power_divisibility(from_histogram(3, {1})), std::domain_error);
}

// differential uniformity counted pair by pair
std::uint32_t uniformity(const FieldTables& f, std::uint32_t d) {
  std::uint32_t best = 0;
  for (Element a = 1; a <= f.n(); ++a) {
    for (Element b = 0; b <= f.n(); ++b) {
      std::uint32_t c = 0;
      for (Element x = 0; x <= f.n(); ++x) c += (f.pow(x ^ a, d) ^ f.pow(x, d)) == b;
      best = std::max(best, c);
    }
  }
  return best;
}

TEST(Apn, AgreesWithPairCount) {
  for (int m : {4, 5}) {
    const auto f = build_field(m);
    for (std::uint32_t d = 1; d < f.n(); ++d) {
      const auto r = apn_check(f, d);
      ASSERT_EQ(r.max_solutions, uniformity(f, d)) << m << " " << d;
      ASSERT_EQ(r.is_apn, r.max_solutions == 2);
    }
  }
}

TEST(Apn, KnownFamiliesAtM5) {
  std::set<std::uint32_t> got;
  for (const auto& e : known_apn_exponents(5)) got.insert(e.exponent);
  // Gold r=1..4: 3 5 9 17; Kasami-Welch: 3 13 57 241 mod 31; Welch 7; Niho 5; inverse 15; Dobbertin 29
  EXPECT_EQ(got, (std::set<std::uint32_t>{3, 5, 9, 17, 13, 26, 24, 7, 15, 29}));
  const auto f = build_field(5);
  for (auto d : got) EXPECT_TRUE(apn_check(f, d).is_apn) << d;
}

TEST(Apn, ControlFails) {
  EXPECT_FALSE(apn_check(build_field(4), 5).is_apn);
  EXPECT_FALSE(apn_check(build_field(5), 1).is_apn);
}

TEST(Pairs, ListedCounts) {
  EXPECT_EQ(listed_pairs(5).size(), 4u);
  EXPECT_EQ(listed_pairs(7).size(), 8u);
  EXPECT_TRUE(listed_pairs(13).empty());
}

TEST(Pairs, HarnessAtM5) {
  const auto report = table_harness(build_field(5), listed_pairs(5));
  EXPECT_TRUE(report.all_equal());
  const auto control = table_harness(build_field(5), {{3, 15}});
  EXPECT_FALSE(control.all_equal());
}

}  // namespace
}  // namespace tripec
