#include "tripec/weight_dist.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tripec {

std::optional<std::uint32_t> WeightDistribution::min_positive_weight() const {
  for (const auto& [w, c] : counts) {
    if (w > 0 && c > 0) return w;
  }
  return std::nullopt;
}

WeightDistribution from_histogram(std::uint32_t length, const std::vector<std::uint64_t>& histogram) {
  WeightDistribution d;
  d.length = length;
  for (std::size_t w = 0; w < histogram.size(); ++w) {
    if (histogram[w] == 0) continue;
    if (w > length) throw std::invalid_argument("histogram weight exceeds code length");
    d.counts[static_cast<std::uint32_t>(w)] = histogram[w];
    d.code_size += histogram[w];
  }
  return d;
}

std::string to_csv(const WeightDistribution& dist) {
  std::ostringstream out;
  out << "weight,count\n";
  for (const auto& [w, c] : dist.counts) out << w << ',' << c << '\n';
  return out.str();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

std::vector<PackedBits> dual_trace_basis(const FieldTables& field, std::uint32_t d1, std::uint32_t d2) {
  const std::uint32_t n = field.n();
  const int m = field.m();
  std::vector<PackedBits> basis;
  basis.reserve(3 * m);
  for (std::uint32_t d : {1u, d1, d2}) {
    for (int j = 0; j < m; ++j) {
      const Element coeff = Element{1} << j;  // alpha^j
      PackedBits row(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        const Element x_pow = field.exp(std::uint64_t{i} * d);  // (alpha^i)^d
        if (field.trace(field.mul(coeff, x_pow))) row.set(i);
      }
      basis.push_back(std::move(row));
    }
  }
  return basis;
}

WeightDistribution dual_trace_distribution(const FieldTables& field, std::uint32_t d1, std::uint32_t d2,
                                           const DualOptions& options) {
  const std::uint32_t n = field.n();
  if (d1 < 1 || d1 >= n || d2 < 1 || d2 >= n) throw std::invalid_argument("exponents must lie in [1, n-1]");
  if (field.m() > kMaxDualDegree) {
    throw std::length_error("m=" + std::to_string(field.m()) + " exceeds the dual enumeration cap of " +
                            std::to_string(kMaxDualDegree));
  }
  const auto c1 = cyclotomic_coset(n, 1);
  const auto c2 = cyclotomic_coset(n, d1);
  const auto c3 = cyclotomic_coset(n, d2);
  const auto full = static_cast<std::size_t>(field.m());
  if (c2.size() != full || c3.size() != full || c1 == c2 || c1 == c3 || c2 == c3) {
    throw std::invalid_argument("the trace description needs 1, d1, d2 in three distinct cosets of size m");
  }
  const auto basis = dual_trace_basis(field, d1, d2);
  SpanEnumeration opts;
  opts.threads = options.threads;
  opts.low_bits = 2 * static_cast<unsigned>(field.m());
  opts.progress = options.progress;
  return from_histogram(n, span_weight_histogram(basis, opts));
}

WeightDistribution macwilliams_transform(const WeightDistribution& dist) {
  const std::uint32_t n = dist.length;
  if (dist.code_size <= 0) throw std::domain_error("empty code");
  BigInt total = 0;
  for (const auto& [w, c] : dist.counts) {
    if (w > n) throw std::domain_error("weight exceeds length");
    if (c < 0) throw std::domain_error("negative count in input distribution");
    total += c;
  }
  if (total != dist.code_size) throw std::domain_error("counts do not sum to the code size");

  const BigInt space = BigInt(1) << n;
  if (space % dist.code_size != 0) throw std::domain_error("code size does not divide 2^n");

  // sum_i A_i K_j(i) for every j; K_j(i) by the three-term recurrence
  // (j+1) K_{j+1} = (n-2i) K_j - (n-j+1) K_{j-1}.
  std::vector<BigInt> sums(n + 1, 0);
  for (const auto& [i, count] : dist.counts) {
    if (count == 0) continue;
    BigInt prev = 1;
    BigInt cur = BigInt(n) - 2 * BigInt(i);
    sums[0] += count;
    if (n >= 1) sums[1] += count * cur;
    for (std::uint32_t j = 1; j < n; ++j) {
      BigInt numer = (BigInt(n) - 2 * BigInt(i)) * cur - BigInt(n - j + 1) * prev;
      BigInt next = numer / (j + 1);
      if (next * (j + 1) != numer) throw std::logic_error("Krawtchouk recurrence lost exactness");
      prev = std::move(cur);
      cur = std::move(next);
      sums[j + 1] += count * cur;
    }
  }

  WeightDistribution out;
  out.length = n;
  out.code_size = space / dist.code_size;
  BigInt check = 0;
  for (std::uint32_t j = 0; j <= n; ++j) {
    if (sums[j] % dist.code_size != 0) {
      throw std::domain_error("non-integral count at weight " + std::to_string(j));
    }
    BigInt a = sums[j] / dist.code_size;
    if (a < 0) throw std::domain_error("negative count at weight " + std::to_string(j));
    if (a != 0) out.counts[j] = a;
    check += a;
  }
  if (check != out.code_size) throw std::domain_error("transformed counts do not sum to the dual size");
  return out;
}

int two_power_divisibility(const WeightDistribution& dist) {
  int e = -1;
  for (const auto& [w, c] : dist.counts) {
    if (w == 0 || c == 0) continue;
    const int tz = std::countr_zero(w);
    e = e < 0 ? tz : std::min(e, tz);
  }
  if (e < 0) throw std::domain_error("distribution has no nonzero weight");
  return e;
}

ApnReport apn_check(const FieldTables& field, std::uint32_t d) {
  const std::uint32_t q = field.order();
  if (d < 1 || d >= field.n()) throw std::invalid_argument("exponent must lie in [1, n-1]");
  std::vector<Element> power(q);
  for (Element x = 0; x < q; ++x) power[x] = field.pow(x, d);

  ApnReport report{field.m(), d, false, 0};
  std::vector<std::uint32_t> hits(q);
  for (Element e = 1; e < q; ++e) {
    std::fill(hits.begin(), hits.end(), 0);
    for (Element x = 0; x < q; ++x) ++hits[power[x ^ e] ^ power[x]];
    report.max_solutions = std::max(report.max_solutions, *std::max_element(hits.begin(), hits.end()));
  }
  report.is_apn = report.max_solutions == 2;
  return report;
}

namespace {

// 2^e mod n
std::uint64_t pow2_mod(std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  for (std::uint64_t i = 0; i < e; ++i) r = (2 * r) % n;
  return r;
}

}  // namespace

std::vector<ApnExponent> known_apn_exponents(int m) {
  if (m < 3) throw std::invalid_argument("known APN families need m >= 3");
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  auto reduce = [&](std::int64_t v) { return static_cast<std::uint32_t>(((v % std::int64_t(n)) + n) % n); };
  auto p2 = [&](std::int64_t e) { return static_cast<std::int64_t>(pow2_mod(e, n)); };

  std::vector<ApnExponent> out;
  for (int r = 1; r < m; ++r) {
    if (std::gcd(r, m) != 1) continue;
    out.push_back({"Gold", r, reduce(p2(r) + 1)});
  }
  for (int r = 1; r < m; ++r) {
    if (std::gcd(r, m) != 1) continue;
    out.push_back({"Kasami-Welch", r, reduce(p2(2 * r) - p2(r) + 1)});
  }
  if (m % 2 == 1) {
    out.push_back({"Welch", 0, reduce(p2((m - 1) / 2) + 3)});
    for (int r = 1; r < m; ++r) {
      if ((4 * r + 1) % m == 0) out.push_back({"Niho", r, reduce(p2(2 * r) + p2(r) - 1)});
    }
    out.push_back({"Inverse", 0, reduce(p2(m - 1) - 1)});
    if (m % 5 == 0) {
      const int r = m / 5;
      out.push_back({"Dobbertin", r, reduce(p2(4 * r) + p2(3 * r) + p2(2 * r) + p2(r) - 1)});
    }
  }
  return out;
}

std::vector<ExponentPair> listed_pairs(int m) {
  switch (m) {
    case 5: return {{3, 5}, {3, 13}, {5, 7}, {13, 7}};
    case 7: return {{3, 5}, {3, 9}, {5, 9}, {3, 13}, {9, 13}, {3, 11}, {5, 11}, {13, 39}};
    case 9: return {{3, 5}, {3, 9}, {3, 17}, {5, 9}, {5, 17}, {9, 17}, {3, 13}};
    case 11:
      return {{3, 5}, {3, 9}, {3, 17}, {3, 33}, {5, 9}, {5, 17}, {5, 33}, {9, 17}, {9, 33}, {17, 33}, {3, 13}};
    default: return {};
  }
}

bool HarnessReport::all_equal() const {
  return std::all_of(results.begin(), results.end(), [](const PairComparison& r) { return r.equal_to_baseline; });
}

HarnessReport table_harness(const FieldTables& field, const std::vector<ExponentPair>& pairs,
                            const DualOptions& options) {
  HarnessReport report;
  report.m = field.m();
  report.baseline = dual_trace_distribution(field, 3, 5, options);
  for (const auto& pair : pairs) {
    PairComparison cmp;
    cmp.pair = pair;
    cmp.distribution = dual_trace_distribution(field, pair.first, pair.second, options);
    cmp.equal_to_baseline = cmp.distribution == report.baseline;
    report.results.push_back(std::move(cmp));
  }
  return report;
}

}  // namespace tripec
