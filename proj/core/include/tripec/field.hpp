#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace tripec {

// Field elements are polynomial-basis bitmasks: bit j is the coefficient of alpha^j.
using Element = std::uint32_t;

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 16;

struct FieldSpec {
  int m = 0;
  std::uint32_t primitive_poly = 0;  // includes the x^m term
  std::uint32_t n = 0;               // 2^m - 1
};

// Minimal-weight primitive polynomial used when none is supplied.
std::uint32_t default_primitive_poly(int m);

// Log/antilog and trace tables for GF(2^m). Copies share the same immutable
// tables, so passing by value is cheap and safe across threads.
class FieldTables {
 public:
  const FieldSpec& spec() const { return data_->spec; }
  int m() const { return data_->spec.m; }
  std::uint32_t n() const { return data_->spec.n; }
  std::uint32_t order() const { return data_->spec.n + 1; }

  // alpha^(i mod n)
  Element exp(std::uint64_t i) const { return data_->exp[i % data_->spec.n]; }
  // discrete log of a nonzero element, in [0, n)
  std::uint32_t log(Element x) const { return data_->log[x]; }
  int trace(Element x) const { return data_->trace[x]; }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return data_->exp[(std::uint64_t{data_->log[a]} + data_->log[b]) % data_->spec.n];
  }
  Element square(Element a) const { return mul(a, a); }
  Element inv(Element a) const;
  // 0^0 is taken as 1.
  Element pow(Element a, std::uint64_t e) const;

  std::span<const Element> exp_table() const { return data_->exp; }
  std::span<const std::uint32_t> log_table() const { return data_->log; }
  std::span<const std::uint8_t> trace_table() const { return data_->trace; }

 private:
  friend FieldTables build_field(int m, std::optional<std::uint32_t> primitive_poly);

  struct Data {
    FieldSpec spec;
    std::vector<Element> exp;
    std::vector<std::uint32_t> log;
    std::vector<std::uint8_t> trace;
  };
  explicit FieldTables(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

// Throws std::invalid_argument when m is outside [2, 16] or the polynomial has
// the wrong degree or is not primitive.
FieldTables build_field(int m, std::optional<std::uint32_t> primitive_poly = std::nullopt);

int bit_weight(std::uint64_t a);

// Orbit of i under doubling mod n, sorted ascending.
std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t n, std::uint32_t i);

// Sorted union of the cosets of every exponent (reduced mod n).
std::vector<std::uint32_t> coset_closure(std::uint32_t n, std::span<const std::uint32_t> exponents);

struct CosetPartition {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> cosets;  // ordered by representative (the minimum)
};

CosetPartition coset_partition(std::uint32_t n);

// Smallest unit d mod n such that d * zeros_a covers exactly the cyclotomic
// cosets of zeros_b, or nullopt if no unit does.
std::optional<std::uint32_t> exponent_equivalent(std::uint32_t n,
                                                 std::span<const std::uint32_t> zeros_a,
                                                 std::span<const std::uint32_t> zeros_b);

}  // namespace tripec
