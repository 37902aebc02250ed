#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tripec/field.hpp"

namespace tripec {

// Binary polynomial, coefficient of x^i at index i, no trailing zeros. The zero polynomial is empty.
using Gf2Poly = std::vector<std::uint8_t>;

// Binary word of length n, one bit per byte (c_0 ... c_{n-1}).
using BinaryWord = std::vector<std::uint8_t>;

struct CyclicCode {
  FieldTables field;
  std::vector<std::uint32_t> zero_exponents;
  std::vector<std::uint32_t> zero_cosets;            // coset closure of zero_exponents
  std::vector<std::uint32_t> coset_representatives;  // minimum of each coset in the closure
  std::uint32_t dimension = 0;
  Gf2Poly generator_poly;

  std::uint32_t length() const { return field.n(); }
  // Codeword m(x) g(x), where bit i of `message` is the coefficient of x^i (i < dimension).
  BinaryWord encode(std::uint64_t message) const;
};

// Minimal polynomial of alpha^exponent over GF(2).
Gf2Poly minimal_polynomial(const FieldTables& field, std::uint32_t exponent);
Gf2Poly gf2_multiply(const Gf2Poly& a, const Gf2Poly& b);
// Remainder of a modulo b (b nonzero).
Gf2Poly gf2_remainder(Gf2Poly a, const Gf2Poly& b);
// p(alpha^i) in GF(2^m).
Element evaluate_at_power(const FieldTables& field, const Gf2Poly& p, std::uint64_t i);

CyclicCode define_code(const FieldTables& field, std::span<const std::uint32_t> exponents);

inline constexpr std::uint32_t kDefaultDimensionCap = 24;

// Full weight histogram of the code (index = weight) by Gray-code enumeration of
// the message space. Throws std::length_error when dimension exceeds the cap.
std::vector<std::uint64_t> enumerate_weight_histogram(const CyclicCode& code,
                                                      std::uint32_t dimension_cap = kDefaultDimensionCap,
                                                      unsigned threads = 1);

// Minimum weight over all nonzero codewords (0 for the zero code).
int enumerate_min_distance(const CyclicCode& code, std::uint32_t dimension_cap = kDefaultDimensionCap,
                           unsigned threads = 1);

struct SpectrumSequence {
  FieldTables field;
  std::vector<Element> values;  // A_0 ... A_{n-1}
};

// A_lambda = sum_i c_i alpha^(i lambda).
SpectrumSequence dft_spectrum(const FieldTables& field, std::span<const std::uint8_t> word);

// Linear complexity of the period-n sequence (Berlekamp-Massey over two periods).
int linear_complexity(const SpectrumSequence& seq);

// Berlekamp-Massey over GF(2^m) on a finite sequence; returns the shortest LFSR length.
int berlekamp_massey(const FieldTables& field, std::span<const Element> sequence);

// --- Spectrum-matrix determinant identities -------------------------------

using GfMatrix = std::vector<std::vector<Element>>;

// Determinant by pivoted Gaussian elimination over GF(2^m).
Element gf_determinant(const FieldTables& field, GfMatrix matrix);

// Free spectrum values. A_19 only enters M4 and is not part of the closed forms.
struct SpectrumInputs {
  Element a5 = 0;
  Element a7 = 0;
  Element a9 = 0;
  Element a11 = 0;
  Element a15 = 0;
  Element a19 = 0;
};

enum class ParityCase { odd, even };  // A_0 = 1 or A_0 = 0

// Index layout (rows of spectrum indices) of the named submatrix: "M1".."M4".
const std::vector<std::vector<int>>& spectrum_layout(const std::string& name);

// A_lambda for a small integer index: zero when the odd part of lambda is 1, 3
// or 13; A_o^(2^k) when lambda = 2^k o with o a free index; A_0 from parity.
Element spectrum_entry(const FieldTables& field, int lambda, const SpectrumInputs& in, ParityCase parity);

GfMatrix spectrum_matrix(const FieldTables& field, const std::string& name, const SpectrumInputs& in,
                         ParityCase parity);

struct DeterminantCheck {
  std::string matrix;
  bool applicable = true;  // M3 only applies when A_7 = 0
  Element direct = 0;
  Element closed_form = 0;
  bool matches = false;
  bool depends_on_unlisted = false;  // determinant changed when A_19 was perturbed
};

struct DeterminantReport {
  ParityCase parity = ParityCase::odd;
  std::vector<DeterminantCheck> checks;
  bool all_match() const;
};

DeterminantReport verify_det_identities(const FieldTables& field, const SpectrumInputs& in, ParityCase parity);

}  // namespace tripec
