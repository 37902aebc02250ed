#include "tripec/cyclic_code.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tripec/gray_span.hpp"

namespace tripec {

namespace {

void trim(Gf2Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

Gf2Poly gf2_multiply(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.empty() || b.empty()) return {};
  Gf2Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
  }
  trim(out);
  return out;
}

Gf2Poly gf2_remainder(Gf2Poly a, const Gf2Poly& b) {
  Gf2Poly d = b;
  trim(d);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  while (a.size() >= d.size()) {
    const std::size_t shift = a.size() - d.size();
    for (std::size_t j = 0; j < d.size(); ++j) a[shift + j] ^= d[j];
    trim(a);
  }
  return a;
}

Element evaluate_at_power(const FieldTables& field, const Gf2Poly& p, std::uint64_t i) {
  Element acc = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k]) acc ^= field.exp((i % field.n()) * k);
  }
  return acc;
}

Gf2Poly minimal_polynomial(const FieldTables& field, std::uint32_t exponent) {
  // prod over the coset of (x + alpha^j), computed with field coefficients
  std::vector<Element> coeffs{1};
  for (auto j : cyclotomic_coset(field.n(), exponent % field.n())) {
    const Element root = field.exp(j);
    std::vector<Element> next(coeffs.size() + 1, 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] ^= coeffs[k];
      next[k] ^= field.mul(coeffs[k], root);
    }
    coeffs = std::move(next);
  }
  Gf2Poly out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] > 1) throw std::logic_error("minimal polynomial has a coefficient outside GF(2)");
    out[k] = static_cast<std::uint8_t>(coeffs[k]);
  }
  return out;
}

CyclicCode define_code(const FieldTables& field, std::span<const std::uint32_t> exponents) {
  if (exponents.empty()) throw std::invalid_argument("a cyclic code needs at least one zero");
  const std::uint32_t n = field.n();
  CyclicCode code{field, {}, {}, {}, 0, {}};
  code.zero_exponents.assign(exponents.begin(), exponents.end());
  for (auto e : exponents) {
    if (e >= n) throw std::invalid_argument("zero exponent outside [0, n-1]");
  }
  code.zero_cosets = coset_closure(n, exponents);

  for (auto e : exponents) {
    code.coset_representatives.push_back(cyclotomic_coset(n, e).front());
  }
  std::sort(code.coset_representatives.begin(), code.coset_representatives.end());
  code.coset_representatives.erase(
      std::unique(code.coset_representatives.begin(), code.coset_representatives.end()),
      code.coset_representatives.end());

  code.generator_poly = {1};
  for (auto rep : code.coset_representatives) {
    code.generator_poly = gf2_multiply(code.generator_poly, minimal_polynomial(field, rep));
  }
  code.dimension = n - static_cast<std::uint32_t>(code.zero_cosets.size());
  return code;
}

BinaryWord CyclicCode::encode(std::uint64_t message) const {
  BinaryWord word(length(), 0);
  for (std::uint32_t i = 0; i < dimension && i < 64; ++i) {
    if (!((message >> i) & 1u)) continue;
    for (std::size_t j = 0; j < generator_poly.size(); ++j) word[i + j] ^= generator_poly[j];
  }
  return word;
}

std::vector<std::uint64_t> enumerate_weight_histogram(const CyclicCode& code, std::uint32_t dimension_cap,
                                                      unsigned threads) {
  if (code.dimension > dimension_cap) {
    throw std::length_error("code dimension " + std::to_string(code.dimension) + " exceeds enumeration cap " +
                            std::to_string(dimension_cap) + "; use the MacWilliams route");
  }
  const std::uint32_t n = code.length();
  std::vector<PackedBits> basis;
  basis.reserve(code.dimension);
  for (std::uint32_t i = 0; i < code.dimension; ++i) {
    PackedBits row(n);
    for (std::size_t j = 0; j < code.generator_poly.size(); ++j) {
      if (code.generator_poly[j]) row.set(i + j);
    }
    basis.push_back(std::move(row));
  }
  SpanEnumeration opts;
  opts.threads = threads;
  const unsigned prefix_bits = std::min<unsigned>(code.dimension, 8);
  opts.low_bits = code.dimension - prefix_bits;
  if (opts.low_bits == 0) opts.low_bits = code.dimension;
  if (basis.empty()) {
    std::vector<std::uint64_t> h(n + 1, 0);
    h[0] = 1;
    return h;
  }
  return span_weight_histogram(basis, opts);
}

int enumerate_min_distance(const CyclicCode& code, std::uint32_t dimension_cap, unsigned threads) {
  const auto hist = enumerate_weight_histogram(code, dimension_cap, threads);
  for (std::size_t w = 1; w < hist.size(); ++w) {
    if (hist[w] != 0) return static_cast<int>(w);
  }
  return 0;
}

SpectrumSequence dft_spectrum(const FieldTables& field, std::span<const std::uint8_t> word) {
  const std::uint32_t n = field.n();
  if (word.size() != n) throw std::invalid_argument("word length must equal n");
  SpectrumSequence seq{field, std::vector<Element>(n, 0)};
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!word[i]) continue;
    for (std::uint32_t lambda = 0; lambda < n; ++lambda) {
      seq.values[lambda] ^= field.exp(std::uint64_t{i} * lambda);
    }
  }
  return seq;
}

int berlekamp_massey(const FieldTables& field, std::span<const Element> s) {
  std::vector<Element> c{1};
  std::vector<Element> b{1};
  int length = 0;
  std::size_t shift = 1;
  Element last = 1;
  for (std::size_t t = 0; t < s.size(); ++t) {
    Element d = s[t];
    for (int i = 1; i <= length && static_cast<std::size_t>(i) < c.size(); ++i) {
      d ^= field.mul(c[i], s[t - i]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const Element coef = field.mul(d, field.inv(last));
    auto updated = c;
    if (updated.size() < b.size() + shift) updated.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) updated[i + shift] ^= field.mul(coef, b[i]);
    if (2 * static_cast<std::size_t>(length) <= t) {
      b = c;
      length = static_cast<int>(t + 1) - length;
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(updated);
  }
  return length;
}

int linear_complexity(const SpectrumSequence& seq) {
  const std::size_t n = seq.values.size();
  std::vector<Element> doubled(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) doubled[i] = seq.values[i % n];
  return berlekamp_massey(seq.field, doubled);
}

Element gf_determinant(const FieldTables& field, GfMatrix a) {
  const std::size_t k = a.size();
  Element det = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && a[pivot][col] == 0) ++pivot;
    if (pivot == k) return 0;
    std::swap(a[pivot], a[col]);  // characteristic 2: no sign change
    det = field.mul(det, a[col][col]);
    const Element inv = field.inv(a[col][col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      if (a[r][col] == 0) continue;
      const Element f = field.mul(a[r][col], inv);
      for (std::size_t j = col; j < k; ++j) a[r][j] ^= field.mul(f, a[col][j]);
    }
  }
  return det;
}

const std::vector<std::vector<int>>& spectrum_layout(const std::string& name) {
  static const std::map<std::string, std::vector<std::vector<int>>> layouts = {
      {"M1",
       {{0, 1, 2, 4, 6, 8},
        {1, 2, 3, 5, 7, 9},
        {2, 3, 4, 6, 8, 10},
        {3, 4, 5, 7, 9, 11},
        {5, 6, 7, 9, 11, 13},
        {6, 7, 8, 10, 12, 14}}},
      {"M2",
       {{0, 1, 3, 4, 7, 8},
        {1, 2, 4, 5, 8, 9},
        {2, 3, 5, 6, 9, 10},
        {3, 4, 6, 7, 10, 11},
        {4, 5, 7, 8, 11, 12},
        {5, 6, 8, 9, 12, 13}}},
      {"M3",
       {{0, 1, 2, 4, 5, 6, 8},
        {1, 2, 3, 5, 6, 7, 9},
        {2, 3, 4, 6, 7, 8, 10},
        {4, 5, 6, 8, 9, 10, 12},
        {5, 6, 7, 9, 10, 11, 13},
        {7, 8, 9, 11, 12, 13, 15},
        {8, 9, 10, 12, 13, 14, 16}}},
      {"M4",
       {{0, 1, 2, 4, 6, 7, 8},
        {1, 2, 3, 5, 7, 8, 9},
        {2, 3, 4, 6, 8, 9, 10},
        {4, 5, 6, 8, 10, 11, 12},
        {5, 6, 7, 9, 11, 12, 13},
        {8, 9, 10, 12, 14, 15, 16},
        {12, 13, 14, 16, 18, 19, 20}}},
  };
  auto it = layouts.find(name);
  if (it == layouts.end()) throw std::invalid_argument("unknown spectrum matrix " + name);
  return it->second;
}

Element spectrum_entry(const FieldTables& field, int lambda, const SpectrumInputs& in, ParityCase parity) {
  if (lambda < 0) throw std::invalid_argument("negative spectrum index");
  if (lambda == 0) return parity == ParityCase::odd ? 1 : 0;
  int odd = lambda;
  std::uint64_t frobenius = 1;
  while (odd % 2 == 0) {
    odd /= 2;
    frobenius *= 2;
  }
  Element base = 0;
  switch (odd) {
    case 1:
    case 3:
    case 13: return 0;
    case 5: base = in.a5; break;
    case 7: base = in.a7; break;
    case 9: base = in.a9; break;
    case 11: base = in.a11; break;
    case 15: base = in.a15; break;
    case 19: base = in.a19; break;
    default: throw std::invalid_argument("spectrum index " + std::to_string(lambda) + " has no assigned value");
  }
  return field.pow(base, frobenius);
}

GfMatrix spectrum_matrix(const FieldTables& field, const std::string& name, const SpectrumInputs& in,
                         ParityCase parity) {
  const auto& layout = spectrum_layout(name);
  GfMatrix out(layout.size());
  for (std::size_t r = 0; r < layout.size(); ++r) {
    for (int lambda : layout[r]) out[r].push_back(spectrum_entry(field, lambda, in, parity));
  }
  return out;
}

bool DeterminantReport::all_match() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const DeterminantCheck& c) { return !c.applicable || (c.matches && !c.depends_on_unlisted); });
}

DeterminantReport verify_det_identities(const FieldTables& field, const SpectrumInputs& in, ParityCase parity) {
  const auto& f = field;
  auto p = [&](Element x, std::uint64_t e) { return f.pow(x, e); };
  auto mul = [&](std::initializer_list<Element> xs) {
    Element acc = 1;
    for (auto x : xs) acc = f.mul(acc, x);
    return acc;
  };
  const Element a5 = in.a5, a7 = in.a7, a9 = in.a9, a11 = in.a11;
  // A5^2 A9^2 + A5 A9 A7^2 + A7^4, shared by M2 (after substitution) and M4
  const Element quartic = mul({p(a5, 2), p(a9, 2)}) ^ mul({a5, a9, p(a7, 2)}) ^ p(a7, 4);

  std::vector<std::pair<std::string, Element>> forms;
  if (parity == ParityCase::odd) {
    forms.emplace_back("M1", mul({p(a5, 2), a7, p(a7, 3) ^ mul({p(a5, 2), a11})}));
    forms.emplace_back("M2",
                       mul({p(a5, 2), mul({p(a5, 2), p(a9, 2)}) ^ mul({a5, a9, p(a7, 2)}) ^ mul({p(a5, 2), a7, a11})}));
  } else {
    forms.emplace_back("M3", mul({p(a5, 7), p(a9, 2)}));
    forms.emplace_back("M4", mul({p(a5, 5), a7, quartic}));
  }

  DeterminantReport report;
  report.parity = parity;
  for (const auto& [name, closed] : forms) {
    DeterminantCheck check;
    check.matrix = name;
    check.applicable = !(name == "M3" && a7 != 0);
    check.direct = gf_determinant(f, spectrum_matrix(f, name, in, parity));
    check.closed_form = closed;
    check.matches = check.direct == check.closed_form;
    for (Element delta : {Element{1}, f.exp(1)}) {
      SpectrumInputs perturbed = in;
      perturbed.a19 ^= delta;
      if (gf_determinant(f, spectrum_matrix(f, name, perturbed, parity)) != check.direct) {
        check.depends_on_unlisted = true;
      }
    }
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace tripec
