// One line per acceptance criterion: PASS/FAIL, wall time, detail.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tripec/carry_graph.hpp"
#include "tripec/cyclic_code.hpp"
#include "tripec/divisibility.hpp"
#include "tripec/weight_dist.hpp"

using namespace tripec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TRIPEC_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Digraph& graph() {
  static const Digraph g = build_digraph();
  return g;
}

Element leibniz(const FieldTables& f, const GfMatrix& a) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  Element det = 0;
  do {
    Element term = 1;
    for (std::size_t r = 0; r < a.size() && term; ++r) term = f.mul(term, a[r][perm[r]]);
    det ^= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Outcome c1_graph_audit() {
  const auto t0 = std::chrono::steady_clock::now();
  const Digraph g = build_digraph();
  const std::map<int, std::uint64_t> published{{-6, 1}, {-5, 16}, {-4, 36}, {-3, 43}, {-2, 43}, {-1, 42},
                                               {0, 43},  {1, 43},  {2, 36},  {3, 16},  {4, 1}};
  const bool hist = arc_weight_histogram(g) == published &&
                    parse_histogram_fixture(slurp("arc_weight_histogram.txt")) == published;
  const double t = since(t0);
  std::ostringstream d;
  d << g.vertices.size() << " vertices, " << g.arc_count() << " arcs, histogram " << (hist ? "matches" : "differs");
  return {g.vertices.size() == 40 && g.arc_count() == 320 && hist && t < 1.0, d.str()};
}

Outcome c2_listed_tails() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto expected = parse_arc_fixture(slurp("arcs_listed_tails.txt"));
  std::map<Vertex, std::vector<Arc>> by_tail;
  for (const auto& a : expected) by_tail[a.tail].push_back(a);
  int clean = 0;
  for (const auto& [tail, arcs] : by_tail) clean += diff_arcs(arcs, arcs_from(graph(), tail, true)).clean();
  const double t = since(t0);
  return {by_tail.size() == 17 && clean == 17 && t < 1.0,
          std::to_string(clean) + "/" + std::to_string(by_tail.size()) + " tables clean"};
}

Outcome c3_classified() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = classified_arcs(graph());
  const bool a = diff_arcs(parse_arc_fixture(slurp("arcs_weight2_head_in_gamma.txt")), c.head_in_gamma).clean();
  const bool b = diff_arcs(parse_arc_fixture(slurp("arcs_weight2_tail_outside_s3.txt")), c.tail_outside_s3).clean();
  const bool s = diff_arcs(parse_arc_fixture(slurp("arcs_weight2_tail_in_s3.txt")), c.tail_in_s3).clean();
  std::size_t heavy = 0;
  for (const auto& arcs : graph().out)
    for (const auto& arc : arcs) heavy += arc.weight >= 2;
  const bool partition = heavy == c.head_in_gamma.size() + c.tail_outside_s3.size() + c.tail_in_s3.size();
  const double t = since(t0);
  std::ostringstream d;
  d << c.head_in_gamma.size() << "/" << c.tail_outside_s3.size() << "/" << c.tail_in_s3.size() << " arcs, "
    << heavy << " of weight >= 2";
  return {a && b && s && partition && c.head_in_gamma.size() == 31 && c.tail_outside_s3.size() == 10 &&
              c.tail_in_s3.size() == 12 && t < 1.0,
          d.str()};
}

Outcome c4_weight_gain() {
  const std::vector<std::int64_t> d{3, 13};
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  for (int m : {5, 7, 9, 11, 13}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int v = max_weight_gain(m, d, 0).value;
    ok = ok && v == (m - 1) / 2;
    out << "m=" << m << ":" << v << " (" << since(t0) << "s) ";
  }
  return {ok, out.str()};
}

Outcome c5_carry_properties() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick_m(5, 13), pick_j(1, 5), pick_d(-15, 14);
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const int m = pick_m(rng);
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    std::vector<std::int64_t> d;
    std::vector<std::uint64_t> a;
    std::int64_t acc = 0, dp = 0, dm = 0, lhs = 0;
    for (int l = 0, j = pick_j(rng); l < j; ++l) {
      const int v = pick_d(rng);
      d.push_back(v >= 0 ? v + 1 : v);
      a.push_back(rng() % (n + 1));
      acc += d.back() * static_cast<std::int64_t>(a.back() % n);
      (d.back() > 0 ? dp : dm) += d.back();
      lhs += d.back() * std::popcount(a.back());
    }
    std::uint64_t s = static_cast<std::uint64_t>(((acc % static_cast<std::int64_t>(n)) + n) % n);
    if (s == 0 && (rng() & 1u)) s = n;
    const auto c = add_with_carry(m, d, a, s);
    const bool nonzero = std::any_of(a.begin(), a.end(), [&](std::uint64_t x) { return x % n != 0; });
    bool ok = c.carry_sum() == lhs - std::popcount(s);
    for (auto ci : c.carries) {
      ok = ok && ci >= dm - 1 && ci <= dp;
      if (nonzero) ok = ok && ci >= dm && ci < dp;
    }
    violations += !ok;
  }
  return {violations == 0, "10000 tuples, " + std::to_string(violations) + " violations"};
}

Outcome c6_bridge() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  for (int m : {5, 7}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto walks = validate_carry_walks(graph(), m, 0);
    const auto sweep = sweep_nu_sequences(m, 0);
    const double t = since(t0);
    ok = ok && walks.failures == 0 && sweep.identity_failures == 0 && (m != 7 || t < 1.0);
    out << "m=" << m << ": " << walks.walks << " walks, " << walks.failures << " failures (" << t << "s) ";
  }
  return {ok, out.str()};
}

Outcome c7_prop34() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  for (int m : {5, 7, 9, 11}) {
    const auto r = sweep_nu_sequences(m, 0);
    ok = ok && r.passed() && r.max_total <= m;
    out << "m=" << m << " max w(nu)=" << r.max_total << (r.passed() ? "" : " FAILED") << "; ";
  }
  const auto t0 = std::chrono::steady_clock::now();
  WalkSearchOptions opts;
  opts.max_length = 40;
  const auto search = search_closed_P_walks(graph(), opts);
  const double t = since(t0);
  opts.enforce_property3 = false;
  opts.max_length = 12;
  const auto control = search_closed_P_walks(graph(), opts);
  ok = ok && search.walks.empty() && t < 30.0 && !control.walks.empty();
  out << "length-40 search " << search.walks.size() << " walks (" << t << "s), control " << control.walks.size();
  return {ok, out.str()};
}

Outcome c8_theorem1() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  const std::map<int, double> limit{{5, 1.0}, {7, 60.0}, {9, 1200.0}};
  for (auto [m, lim] : limit) {
    const auto f = build_field(m);
    const auto t0 = std::chrono::steady_clock::now();
    DualOptions o;
    o.threads = 0;
    const bool eq = dual_trace_distribution(f, 3, 13, o) == dual_trace_distribution(f, 3, 5, o);
    const double t = since(t0);
    ok = ok && eq && t < lim;
    out << "m=" << m << " " << (eq ? "equal" : "DIFFERENT") << " (" << t << "s) ";
  }
  return {ok, out.str()};
}

Outcome c9_divisibility() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  for (int m : {5, 7}) {
    const auto dual = dual_trace_distribution(build_field(m), 3, 13, {0, {}});
    const int k = (m - 1) / 2;
    bool all = true, some = false;
    for (const auto& [w, c] : dual.counts) {
      if (w == 0) continue;
      all = all && w % (1u << k) == 0;
      some = some || w % (1u << (k + 1)) != 0;
    }
    ok = ok && all && some && two_power_divisibility(dual) == k;
    out << "m=" << m << " exponent " << two_power_divisibility(dual) << " ";
  }
  return {ok, out.str()};
}

Outcome c10_min_distance() {
  const auto f5 = build_field(5);
  const std::vector<std::uint32_t> ex{1, 3, 13};
  const int direct = enumerate_min_distance(define_code(f5, ex), kDefaultDimensionCap, 0);
  const auto via5 = macwilliams_transform(dual_trace_distribution(f5, 3, 13)).min_positive_weight();
  const auto via7 = macwilliams_transform(dual_trace_distribution(build_field(7), 3, 13, {0, {}})).min_positive_weight();
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "m=5 enumeration " << direct << ", MacWilliams " << (via5 ? int(*via5) : -1) << "; m=7 MacWilliams "
      << (via7 ? int(*via7) : -1);
  return {direct == 7 && via5 == 7u && via7 == 7u, out.str()};
}

Outcome c11_apn() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  bool dobbertin = false;
  for (int m : {5, 7, 9}) {
    const auto f = build_field(m);
    int pass = 0, total = 0;
    for (const auto& e : known_apn_exponents(m)) {
      ++total;
      pass += apn_check(f, e.exponent).is_apn;
      dobbertin = dobbertin || (m == 5 && e.family == "Dobbertin" && e.r == 1);
    }
    ok = ok && pass == total;
    out << "m=" << m << " " << pass << "/" << total << "; ";
  }
  const bool control = !apn_check(build_field(4), 5).is_apn;
  out << "control (4,5) " << (control ? "rejected" : "accepted");
  return {ok && dobbertin && control, out.str()};
}

Outcome c12_pairs() {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  bool ok = true;
  for (int m : {5, 7}) {
    DualOptions o;
    o.threads = 0;
    const auto r = table_harness(build_field(m), listed_pairs(m), o);
    int eq = 0;
    for (const auto& p : r.results) eq += p.equal_to_baseline;
    ok = ok && r.all_equal();
    out << "m=" << m << " " << eq << "/" << r.results.size() << " listed pairs equal; ";
  }
  const auto control = table_harness(build_field(7), {{3, 15}}, {0, {}});
  ok = ok && !control.all_equal();
  out << "control (3,15) " << (control.all_equal() ? "equal" : "differs");
  return {ok, out.str()};
}

Outcome c13_blahut() {
  const auto f = build_field(5);
  const std::vector<std::uint32_t> ex{1, 3, 13};
  const auto code = define_code(f, ex);
  std::mt19937_64 rng(13);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    BinaryWord w(31);
    for (auto& b : w) b = rng() & 1u;
    bad += linear_complexity(dft_spectrum(f, w)) != std::count(w.begin(), w.end(), 1);
    const auto c = code.encode(rng() & ((std::uint64_t{1} << code.dimension) - 1));
    bad += linear_complexity(dft_spectrum(f, c)) != std::count(c.begin(), c.end(), 1);
  }
  return {bad == 0, "200 words, " + std::to_string(bad) + " mismatches"};
}

Outcome c14_determinants() {
  const auto f = build_field(5);
  std::mt19937 rng(14);
  std::uniform_int_distribution<Element> pick(0, 31);
  std::map<std::string, std::pair<int, int>> tally;  // matched, checked
  auto run = [&](ParityCase parity, bool zero_a7) {
    for (int t = 0; t < 1000; ++t) {
      SpectrumInputs in{pick(rng), pick(rng), pick(rng), pick(rng), pick(rng), pick(rng)};
      if (zero_a7) in.a7 = 0;
      for (const auto& c : verify_det_identities(f, in, parity).checks) {
        if (!c.applicable) continue;
        const Element direct = leibniz(f, spectrum_matrix(f, c.matrix, in, parity));
        auto& [ok, n] = tally[c.matrix];
        ++n;
        ok += direct == c.closed_form && direct == c.direct;
      }
    }
  };
  run(ParityCase::odd, false);
  run(ParityCase::even, true);
  run(ParityCase::even, false);
  bool ok = tally.size() == 4;
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  for (const auto& [name, counts] : tally) {
    ok = ok && counts.first == counts.second && counts.second >= 1000;
    out << name << " " << counts.first << "/" << counts.second << " ";
  }
  return {ok, out.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"graph audit", c1_graph_audit},
      {"listed-tail arc tables", c2_listed_tails},
      {"weight>=2 arc classification", c3_classified},
      {"M(m;3,13) = (m-1)/2", c4_weight_gain},
      {"carry identity and bounds", c5_carry_properties},
      {"nu identity and carry walks", c6_bridge},
      {"nu hypotheses and closed-walk search", c7_prop34},
      {"dual distributions equal", c8_theorem1},
      {"dual weight divisibility", c9_divisibility},
      {"minimum distance", c10_min_distance},
      {"APN screening", c11_apn},
      {"listed exponent pairs", c12_pairs},
      {"weight = linear complexity", c13_blahut},
      {"spectrum determinant identities", c14_determinants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%-4s %2zu  %-38s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
