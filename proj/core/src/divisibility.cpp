#include "tripec/divisibility.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tripec {

namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

std::uint64_t mask_of(int m) { return (std::uint64_t{1} << m) - 1; }

void check_degree(int m) {
  if (m < 2 || m > kMaxCarryDegree) throw std::invalid_argument("m outside [2, 62]");
}

// d mod n as a nonnegative value
std::uint64_t coeff_mod(std::int64_t d, std::uint64_t n) {
  const auto r = static_cast<i128>(d) % static_cast<i128>(n);
  return static_cast<std::uint64_t>(r < 0 ? r + n : r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

int bit(std::uint64_t x, int i, int m) {
  i %= m;
  if (i < 0) i += m;
  return static_cast<int>((x >> i) & 1u);
}

}  // namespace

std::int64_t CarryComputation::carry_sum() const {
  return std::accumulate(carries.begin(), carries.end(), std::int64_t{0});
}

CarryComputation add_with_carry(int m, std::span<const std::int64_t> d_list,
                                std::span<const std::uint64_t> a_list, std::uint64_t s) {
  check_degree(m);
  if (d_list.size() != a_list.size() || d_list.empty()) {
    throw std::invalid_argument("d_list and a_list must be nonempty and of equal length");
  }
  const std::uint64_t n = mask_of(m);
  if (s > n) throw std::invalid_argument("s outside [0, 2^m - 1]");

  CarryComputation out;
  out.m = m;
  out.d_list.assign(d_list.begin(), d_list.end());
  out.a_list.assign(a_list.begin(), a_list.end());
  out.s = s;

  i128 total = 0;
  for (std::size_t l = 0; l < d_list.size(); ++l) {
    if (d_list[l] == 0) throw std::invalid_argument("coefficients must be nonzero");
    if (a_list[l] > n) throw std::invalid_argument("input outside [0, 2^m - 1]");
    (d_list[l] > 0 ? out.d_plus : out.d_minus) += d_list[l];
    total += static_cast<i128>(d_list[l]) * a_list[l];
  }
  const i128 diff = total - static_cast<i128>(s);
  if (diff % static_cast<i128>(n) != 0) {
    throw std::invalid_argument("s is not congruent to the weighted input sum mod 2^m - 1");
  }

  // Summing 2^i (2c_i + s_i) = 2^i (t_i + c_{i-1}) over i gives
  // (2^m - 1) c_{-1} = sum d_l a^(l) - s.
  const auto wrap = static_cast<std::int64_t>(diff / static_cast<i128>(n));
  std::int64_t prev = wrap;
  out.digits.resize(m);
  out.carries.resize(m);
  for (int i = 0; i < m; ++i) {
    std::int64_t t = 0;
    for (std::size_t l = 0; l < d_list.size(); ++l) t += d_list[l] * static_cast<std::int64_t>((a_list[l] >> i) & 1u);
    const int si = static_cast<int>((s >> i) & 1u);
    const std::int64_t twice = t + prev - si;
    if (twice % 2 != 0) throw std::logic_error("carry parity mismatch at digit " + std::to_string(i));
    out.digits[i] = si;
    out.carries[i] = twice / 2;
    prev = out.carries[i];
  }
  if (prev != wrap) throw std::logic_error("carry sequence does not close");
  return out;
}

std::uint64_t rotate_bits(std::uint64_t a, int k, int m) {
  k %= m;
  if (k < 0) k += m;
  if (k == 0) return a;
  const std::uint64_t mask = mask_of(m);
  return ((a << k) | (a >> (m - k))) & mask;
}

namespace {

// nu terms without the weight identity assertion.
NuSequence compute_nu(int m, std::uint64_t a, std::uint64_t b, std::uint64_t s) {
  static constexpr std::int64_t kOnes[5] = {1, 1, 1, 1, 1};
  const std::uint64_t inputs[5] = {rotate_bits(a, 1, m), a, rotate_bits(b, 3, m), rotate_bits(b, 2, m), b};
  auto carry = add_with_carry(m, kOnes, inputs, s);

  NuSequence out;
  out.m = m;
  out.a = a;
  out.b = b;
  out.s = s;
  out.nu.resize(m);
  for (int i = 0; i < m; ++i) {
    const std::int64_t c_prev = carry.carries[(i + m - 1) % m];
    out.nu[i] = bit(a, i - 1, m) + bit(a, i, m) + bit(b, i - 3, m) + bit(b, i - 2, m) + bit(b, i - 1, m) +
                bit(b, i, m) - c_prev - carry.carries[i];
    out.total += out.nu[i];
  }
  out.carries = std::move(carry.carries);
  return out;
}

std::int64_t weight_gain_twice(const NuSequence& nu) {
  return 2 * (std::int64_t{std::popcount(nu.s)} - std::popcount(nu.a) - std::popcount(nu.b));
}

}  // namespace

NuSequence nu_sequence(int m, std::uint64_t a, std::uint64_t b, ZeroResidue zero_rep) {
  check_degree(m);
  const std::uint64_t n = mask_of(m);
  if (a > n || b > n) throw std::invalid_argument("input outside [0, 2^m - 1]");
  if (a % n == 0 && b % n == 0) throw std::invalid_argument("a and b are both 0 mod 2^m - 1");
  std::uint64_t s = (mulmod(3, a, n) + mulmod(13 % n, b, n)) % n;
  if (s == 0 && zero_rep == ZeroResidue::all_ones) s = n;
  auto out = compute_nu(m, a, b, s);
  if (out.total != weight_gain_twice(out)) throw std::logic_error("w(nu) != 2(w(s) - w(a) - w(b))");
  return out;
}

WeightGain max_weight_gain(int m, std::span<const std::int64_t> d_list, unsigned threads,
                           const ProgressFn& progress) {
  if (d_list.empty()) throw std::invalid_argument("empty exponent list");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const auto j = static_cast<int>(d_list.size());
  if (m * j > kMaxExhaustiveBits) {
    throw std::length_error("m exceeds exhaustive cap (m * |d| = " + std::to_string(m * j) + " > " +
                            std::to_string(kMaxExhaustiveBits) + ")");
  }
  for (auto d : d_list) {
    if (d == 0) throw std::invalid_argument("coefficients must be nonzero");
  }
  const std::uint64_t n = mask_of(m);
  const std::uint64_t values = std::uint64_t{1} << m;  // representatives 0 ... 2^m - 1
  std::vector<std::uint64_t> coeff(j);
  for (int l = 0; l < j; ++l) coeff[l] = coeff_mod(d_list[l], n);
  const std::uint64_t rest = std::uint64_t{1} << (m * (j - 1));

  struct Best {
    bool found = false;
    int value = 0;
    std::uint64_t s = 0;
    std::vector<std::uint64_t> a;
  };
  const unsigned workers = resolve_threads(threads);
  std::vector<Best> best(workers);
  std::atomic<std::uint64_t> done{0};

  parallel_ranges(values, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& mine = best[w];
    std::vector<std::uint64_t> a(j);
    for (std::uint64_t first = begin; first < end; ++first) {
      a[0] = first;
      for (std::uint64_t idx = 0; idx < rest; ++idx) {
        bool all_zero = first % n == 0;
        std::uint64_t r = mulmod(coeff[0], first % n, n);
        int wa = std::popcount(first);
        for (int l = 1; l < j; ++l) {
          a[l] = (idx >> (m * (l - 1))) & n;
          all_zero = all_zero && a[l] % n == 0;
          r = (r + mulmod(coeff[l], a[l] % n, n)) % n;
          wa += std::popcount(a[l]);
        }
        if (all_zero) continue;
        const std::uint64_t s = r == 0 ? n : r;
        const int gain = std::popcount(s) - wa;
        if (!mine.found || gain > mine.value) {
          mine = {true, gain, s, a};
        }
      }
      if (progress) progress(++done, values);
    }
  });

  WeightGain out;
  out.m = m;
  out.d_list.assign(d_list.begin(), d_list.end());
  bool have = false;
  for (auto& b : best) {
    if (b.found && (!have || b.value > out.value)) {
      have = true;
      out.value = b.value;
      out.witness_s = b.s;
      out.witness_a = b.a;
    }
  }
  if (!have) throw std::logic_error("no admissible input");
  return out;
}

int gold_closed_form(int m, int r) {
  if (m < 1 || r < 1) throw std::invalid_argument("m and r must be positive");
  const int g = std::gcd(m, r);
  return (m / g) % 2 == 0 ? m / 2 : (m - g) / 2;
}

Prop3Check check_prop3_hypothesis(const NuSequence& nu) {
  Prop3Check out;
  const int m = static_cast<int>(nu.nu.size());
  for (int i = 0; i < m; ++i) {
    if (nu.nu[i] < 2) continue;
    std::int64_t window = 0;
    int found = 0;
    for (int t = 1; t <= m; ++t) {
      window += nu.nu[((i - t + 1) % m + m) % m];
      if (window <= t) {
        found = t;
        break;
      }
    }
    if (found == 0) {
      out.holds = false;
      out.failing_index = i;
      return out;
    }
    out.witnesses.emplace_back(i, found);
  }
  return out;
}

bool check_prop4_bound(const NuSequence& nu) { return nu.total <= nu.m; }

NuSweepReport sweep_nu_sequences(int m, unsigned threads, const ProgressFn& progress) {
  check_degree(m);
  if (m > 16) throw std::length_error("m exceeds exhaustive cap for the nu sweep");
  const std::uint64_t n = mask_of(m);
  const std::uint64_t values = std::uint64_t{1} << m;
  const unsigned workers = resolve_threads(threads);
  std::vector<NuSweepReport> partial(workers);
  for (auto& p : partial) p.max_total = std::numeric_limits<std::int64_t>::min();
  std::atomic<std::uint64_t> done{0};

  parallel_ranges(values, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& rep = partial[w];
    auto fail = [&](std::uint64_t a, std::uint64_t b) {
      if (!rep.first_failure) rep.first_failure = std::make_pair(a, b);
    };
    for (std::uint64_t a = begin; a < end; ++a) {
      for (std::uint64_t b = 0; b < values; ++b) {
        if (a % n == 0 && b % n == 0) continue;
        const std::uint64_t r = (mulmod(3, a % n, n) + mulmod(13 % n, b % n, n)) % n;
        const std::uint64_t reps[2] = {r, n};
        for (int k = 0; k < (r == 0 ? 2 : 1); ++k) {
          const auto nu = compute_nu(m, a, b, reps[k]);
          ++rep.sequences;
          rep.max_total = std::max(rep.max_total, nu.total);
          if (nu.total != weight_gain_twice(nu)) {
            ++rep.identity_failures;
            fail(a, b);
          }
          if (std::any_of(nu.carries.begin(), nu.carries.end(), [](std::int64_t c) { return c < 0 || c >= 5; })) {
            ++rep.carry_range_failures;
            fail(a, b);
          }
          if (!check_prop3_hypothesis(nu).holds) {
            ++rep.prop3_failures;
            fail(a, b);
          }
          if (!check_prop4_bound(nu)) {
            ++rep.prop4_failures;
            fail(a, b);
          }
        }
      }
      if (progress) progress(++done, values);
    }
  });

  NuSweepReport out;
  out.m = m;
  out.max_total = std::numeric_limits<std::int64_t>::min();
  for (const auto& p : partial) {
    out.sequences += p.sequences;
    out.max_total = std::max(out.max_total, p.max_total);
    out.identity_failures += p.identity_failures;
    out.carry_range_failures += p.carry_range_failures;
    out.prop3_failures += p.prop3_failures;
    out.prop4_failures += p.prop4_failures;
    if (!out.first_failure && p.first_failure) out.first_failure = p.first_failure;
  }
  return out;
}

}  // namespace tripec
