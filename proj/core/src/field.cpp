#include "tripec/field.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tripec {

namespace {

constexpr std::uint32_t kDefaultPolys[] = {
    0,        0,
    0x7,      // x^2+x+1
    0xB,      // x^3+x+1
    0x13,     // x^4+x+1
    0x25,     // x^5+x^2+1
    0x43,     // x^6+x+1
    0x83,     // x^7+x+1
    0x11D,    // x^8+x^4+x^3+x^2+1
    0x211,    // x^9+x^4+1
    0x409,    // x^10+x^3+1
    0x805,    // x^11+x^2+1
    0x1053,   // x^12+x^6+x^4+x+1
    0x201B,   // x^13+x^4+x^3+x+1
    0x4443,   // x^14+x^10+x^6+x+1
    0x8003,   // x^15+x+1
    0x1100B,  // x^16+x^12+x^3+x+1
};

void check_degree(int m) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw std::invalid_argument("extension degree m=" + std::to_string(m) +
                                " outside supported range [2, 16]");
  }
}

}  // namespace

std::uint32_t default_primitive_poly(int m) {
  check_degree(m);
  return kDefaultPolys[m];
}

FieldTables build_field(int m, std::optional<std::uint32_t> primitive_poly) {
  check_degree(m);
  const std::uint32_t poly = primitive_poly.value_or(kDefaultPolys[m]);
  if (std::bit_width(poly) != static_cast<unsigned>(m + 1)) {
    throw std::invalid_argument("polynomial does not have degree " + std::to_string(m));
  }

  auto data = std::make_shared<FieldTables::Data>();
  data->spec = FieldSpec{m, poly, (1u << m) - 1};
  const std::uint32_t n = data->spec.n;
  const std::uint32_t q = n + 1;
  data->exp.resize(n);
  data->log.assign(q, 0);

  // Walk the powers of x; primitivity means no element repeats before x^n = 1.
  std::vector<bool> seen(q, false);
  Element x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (x == 0 || seen[x]) {
      throw std::invalid_argument("polynomial is not primitive: x has order " + std::to_string(i));
    }
    seen[x] = true;
    data->exp[i] = x;
    data->log[x] = i;
    x <<= 1;
    if (x & q) x ^= poly;
  }
  if (x != 1) throw std::invalid_argument("polynomial is not primitive");

  // Tr is GF(2)-linear; compute it on the polynomial basis and extend by parity.
  auto mul = [&](Element a, Element b) -> Element {
    if (a == 0 || b == 0) return 0;
    return data->exp[(std::uint64_t{data->log[a]} + data->log[b]) % n];
  };
  std::uint32_t basis_trace = 0;
  for (int j = 0; j < m; ++j) {
    Element t = Element{1} << j;
    Element sum = 0;
    for (int k = 0; k < m; ++k) {
      sum ^= t;
      t = mul(t, t);
    }
    if (sum > 1) throw std::logic_error("trace left the prime field");
    basis_trace |= sum << j;
  }
  data->trace.resize(q);
  for (std::uint32_t e = 0; e < q; ++e) {
    data->trace[e] = static_cast<std::uint8_t>(std::popcount(e & basis_trace) & 1);
  }

  return FieldTables(std::move(data));
}

Element FieldTables::inv(Element a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  const auto l = data_->log[a];
  return data_->exp[(data_->spec.n - l) % data_->spec.n];
}

Element FieldTables::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = data_->spec.n;
  return data_->exp[(data_->log[a] * (e % n)) % n];
}

int bit_weight(std::uint64_t a) { return std::popcount(a); }

std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t n, std::uint32_t i) {
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint32_t> coset;
  std::uint64_t x = i % n;
  do {
    coset.push_back(static_cast<std::uint32_t>(x));
    x = (2 * x) % n;
  } while (x != coset.front());
  std::sort(coset.begin(), coset.end());
  return coset;
}

std::vector<std::uint32_t> coset_closure(std::uint32_t n, std::span<const std::uint32_t> exponents) {
  std::vector<std::uint32_t> out;
  for (auto e : exponents) {
    auto c = cyclotomic_coset(n, e % n);
    out.insert(out.end(), c.begin(), c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CosetPartition coset_partition(std::uint32_t n) {
  CosetPartition p{n, {}};
  std::vector<bool> covered(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    auto c = cyclotomic_coset(n, i);
    for (auto e : c) covered[e] = true;
    p.cosets.push_back(std::move(c));
  }
  return p;
}

std::optional<std::uint32_t> exponent_equivalent(std::uint32_t n,
                                                 std::span<const std::uint32_t> zeros_a,
                                                 std::span<const std::uint32_t> zeros_b) {
  const auto target = coset_closure(n, zeros_b);
  const auto source = coset_closure(n, zeros_a);
  if (source.size() != target.size()) return std::nullopt;

  std::vector<std::uint32_t> scaled(zeros_a.size());
  for (std::uint32_t d = 1; d < n; ++d) {
    if (std::gcd(d, n) != 1) continue;
    for (std::size_t k = 0; k < zeros_a.size(); ++k) {
      scaled[k] = static_cast<std::uint32_t>((std::uint64_t{d} * zeros_a[k]) % n);
    }
    if (coset_closure(n, scaled) == target) return d;
  }
  return std::nullopt;
}

}  // namespace tripec
