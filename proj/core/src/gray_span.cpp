#include "tripec/gray_span.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>

namespace tripec {

int PackedBits::weight() const {
  int w = 0;
  for (auto x : words) w += std::popcount(x);
  return w;
}

PackedBits& PackedBits::operator^=(const PackedBits& other) {
  if (other.length != length) throw std::invalid_argument("length mismatch in PackedBits xor");
  for (std::size_t i = 0; i < words.size(); ++i) words[i] ^= other.words[i];
  return *this;
}

namespace {

// Low basis vectors copied into a flat, fixed-stride table so the inner loop
// works on compile-time sized limbs.
template <std::size_t W>
struct Kernel {
  static void run(std::span<const PackedBits> basis, unsigned low_bits, std::uint64_t prefix_begin,
                  std::uint64_t prefix_end, std::vector<std::uint64_t>& hist,
                  const std::function<void()>& tick) {
    std::vector<std::array<std::uint64_t, W>> low(low_bits);
    for (unsigned j = 0; j < low_bits; ++j) {
      std::copy_n(basis[j].words.begin(), W, low[j].begin());
    }
    const std::uint64_t inner = std::uint64_t{1} << low_bits;
    for (std::uint64_t prefix = prefix_begin; prefix < prefix_end; ++prefix) {
      std::array<std::uint64_t, W> acc{};
      for (std::uint64_t p = prefix; p != 0; p &= p - 1) {
        const auto& v = basis[low_bits + std::countr_zero(p)].words;
        for (std::size_t k = 0; k < W; ++k) acc[k] ^= v[k];
      }
      auto weigh = [&] {
        int w = 0;
        for (std::size_t k = 0; k < W; ++k) w += std::popcount(acc[k]);
        ++hist[w];
      };
      weigh();
      for (std::uint64_t g = 1; g < inner; ++g) {
        const auto& v = low[std::countr_zero(g)];
        for (std::size_t k = 0; k < W; ++k) acc[k] ^= v[k];
        weigh();
      }
      if (tick) tick();
    }
  }
};

struct DynamicKernel {
  static void run(std::span<const PackedBits> basis, unsigned low_bits, std::uint64_t prefix_begin,
                  std::uint64_t prefix_end, std::vector<std::uint64_t>& hist,
                  const std::function<void()>& tick) {
    const std::size_t length = basis.front().length;
    const std::uint64_t inner = std::uint64_t{1} << low_bits;
    for (std::uint64_t prefix = prefix_begin; prefix < prefix_end; ++prefix) {
      PackedBits acc(length);
      for (std::uint64_t p = prefix; p != 0; p &= p - 1) acc ^= basis[low_bits + std::countr_zero(p)];
      ++hist[acc.weight()];
      for (std::uint64_t g = 1; g < inner; ++g) {
        acc ^= basis[std::countr_zero(g)];
        ++hist[acc.weight()];
      }
      if (tick) tick();
    }
  }
};

}  // namespace

std::vector<std::uint64_t> span_weight_histogram(std::span<const PackedBits> basis,
                                                 const SpanEnumeration& options) {
  if (basis.empty()) return {1};
  const std::size_t length = basis.front().length;
  for (const auto& b : basis) {
    if (b.length != length) throw std::invalid_argument("basis vectors differ in length");
  }
  const auto k = static_cast<unsigned>(basis.size());
  if (k > 48) throw std::invalid_argument("span too large to enumerate");
  const unsigned low_bits = std::min(options.low_bits == 0 ? k : options.low_bits, k);
  const std::uint64_t prefixes = std::uint64_t{1} << (k - low_bits);
  const unsigned workers = resolve_threads(options.threads);

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(length + 1, 0));
  std::atomic<std::uint64_t> done{0};
  std::function<void()> tick;
  if (options.progress) {
    tick = [&] { options.progress(++done, prefixes); };
  }

  const std::size_t limbs = (length + 63) / 64;
  parallel_ranges(prefixes, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& hist = partial[w];
    switch (limbs) {
      case 1: Kernel<1>::run(basis, low_bits, begin, end, hist, tick); break;
      case 2: Kernel<2>::run(basis, low_bits, begin, end, hist, tick); break;
      case 4: Kernel<4>::run(basis, low_bits, begin, end, hist, tick); break;
      case 8: Kernel<8>::run(basis, low_bits, begin, end, hist, tick); break;
      case 16: Kernel<16>::run(basis, low_bits, begin, end, hist, tick); break;
      case 32: Kernel<32>::run(basis, low_bits, begin, end, hist, tick); break;
      default: DynamicKernel::run(basis, low_bits, begin, end, hist, tick); break;
    }
  });

  std::vector<std::uint64_t> total(length + 1, 0);
  for (const auto& h : partial) {
    for (std::size_t w = 0; w <= length; ++w) total[w] += h[w];
  }
  return total;
}

}  // namespace tripec
