#include "tripec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripec/carry_graph.hpp"
#include "tripec/cyclic_code.hpp"
#include "tripec/divisibility.hpp"
#include "tripec/field.hpp"
#include "tripec/weight_dist.hpp"

namespace tripec {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kLongRunDegree = 9;

// Thrown for bad input; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int m = 5;
  std::vector<std::uint32_t> d;
  std::vector<std::int64_t> coeffs;
  std::vector<std::uint32_t> against = {3, 5};
  std::string poly;
  std::string out;
  std::string csv;
  std::string fixtures = TRIPEC_FIXTURE_DIR;
  std::string emit_dir;
  std::string start;
  unsigned threads = 0;
  int max_len = 40;
  bool long_run = false;
  bool listed = false;
  bool known = false;
  bool no_property3 = false;
};

class Report {
 public:
  explicit Report(std::string command) { body_["command"] = std::move(command); }

  json& operator[](const char* key) { return body_[key]; }

  void check(const std::string& name, bool pass, json detail = nullptr) {
    json c = {{"name", name}, {"pass", pass}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks_.push_back(std::move(c));
    passed_ = passed_ && pass;
  }
  void artifact(const std::string& path) { artifacts_.push_back(path); }
  void fail(const std::string& error) {
    body_["error"] = error;
    passed_ = false;
  }
  bool passed() const { return passed_; }

  json finish(double seconds) {
    body_["checks"] = checks_;
    body_["artifacts"] = artifacts_;
    body_["passed"] = passed_;
    body_["wall_time_seconds"] = seconds;
    return body_;
  }

 private:
  json body_ = json::object();
  json checks_ = json::array();
  json artifacts_ = json::array();
  bool passed_ = true;
};

// Percent progress on the diagnostic stream, one line per 10% step.
ProgressFn progress_printer(std::ostream& err, std::string label) {
  auto mu = std::make_shared<std::mutex>();
  auto last = std::make_shared<int>(-1);
  return [&err, label = std::move(label), mu, last](std::uint64_t done, std::uint64_t total) {
    const int pct = total == 0 ? 100 : static_cast<int>(100 * done / total);
    std::lock_guard lock(*mu);
    if (pct / 10 == *last / 10 && pct != 100) return;
    if (pct == 100 && *last == 100) return;
    *last = pct;
    err << label << ": " << pct << "%\n" << std::flush;
  };
}

std::string to_octal(std::uint64_t v) {
  std::ostringstream s;
  s << std::oct << v;
  return s.str();
}

FieldTables field_from(const Options& o) {
  std::optional<std::uint32_t> poly;
  if (!o.poly.empty()) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(o.poly, &used, 8);
    } catch (const std::exception&) {
      throw UsageError("--poly must be an octal number");
    }
    if (used != o.poly.size()) throw UsageError("--poly must be an octal number");
    poly = static_cast<std::uint32_t>(v);
  }
  try {
    return build_field(o.m, poly);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::pair<std::uint32_t, std::uint32_t> exponent_pair(const std::vector<std::uint32_t>& d) {
  if (d.size() != 2) throw UsageError("--d takes exactly two exponents d1,d2");
  return {d[0], d[1]};
}

void require_dual_scope(const Options& o) {
  if (o.m > kMaxDualDegree) {
    throw UsageError("m=" + std::to_string(o.m) + " exceeds the dual distribution cap of " +
                     std::to_string(kMaxDualDegree));
  }
  if (o.m >= kLongRunDegree && !o.long_run) {
    throw UsageError("m=" + std::to_string(o.m) + " dual distributions need --long-run");
  }
}

json distribution_json(const WeightDistribution& d) {
  json counts = json::object();
  for (const auto& [w, c] : d.counts) counts[std::to_string(w)] = c.str();
  return {{"length", d.length}, {"code_size", d.code_size.str()}, {"counts", counts}};
}

WeightDistribution dual_of(const FieldTables& f, std::uint32_t d1, std::uint32_t d2, const Options& o,
                           std::ostream& err) {
  DualOptions opt;
  opt.threads = o.threads;
  if (o.m >= 7) opt.progress = progress_printer(err, "dual " + std::to_string(d1) + "," + std::to_string(d2));
  try {
    return dual_trace_distribution(f, d1, d2, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UsageError("cannot write " + p.string());
  out << text;
}

json arcs_json(const std::vector<Arc>& arcs) {
  json a = json::array();
  for (const auto& arc : arcs) a.push_back(arc.tail.str() + " -> " + arc.head.str() + " : " + std::to_string(arc.weight));
  return a;
}

json vertices_json(const std::vector<Vertex>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

Vertex parse_vertex_arg(const std::string& s) {
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("--start must look like x,y,z,u");
    }
  }
  if (parts.size() != 4) throw UsageError("--start must look like x,y,z,u");
  Vertex v{parts[0], parts[1], parts[2], parts[3]};
  if (v.x < 0 || v.x > 1 || v.y < 0 || v.y > 1 || v.z < 0 || v.z > 1 || v.u < 0 || v.u > 4) {
    throw UsageError("--start component out of range");
  }
  return v;
}

// --- subcommands ---------------------------------------------------------------

void field_info(const Options& o, Report& r, std::ostream&) {
  const auto f = field_from(o);
  r["m"] = f.m();
  r["n"] = f.n();
  r["primitive_poly_octal"] = to_octal(f.spec().primitive_poly);
  r["trace_of_one"] = f.trace(1);
  r.check("trace_of_one_is_m_mod_2", f.trace(1) == o.m % 2);
  bool round_trip = true;
  for (Element x = 1; x < f.order(); ++x) round_trip = round_trip && f.exp(f.log(x)) == x;
  r.check("log_exp_round_trip", round_trip);
}

CyclicCode code_from(const FieldTables& f, const Options& o) {
  std::vector<std::uint32_t> zeros = {1};
  zeros.insert(zeros.end(), o.d.begin(), o.d.end());
  try {
    return define_code(f, zeros);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void code_info(const Options& o, Report& r, std::ostream&) {
  const auto f = field_from(o);
  const auto code = code_from(f, o);
  r["m"] = o.m;
  r["length"] = code.length();
  r["zeros"] = code.zero_exponents;
  r["coset_representatives"] = code.coset_representatives;
  r["dimension"] = code.dimension;
  std::string g;
  for (auto it = code.generator_poly.rbegin(); it != code.generator_poly.rend(); ++it) g.push_back('0' + *it);
  r["generator_poly"] = g;
  Gf2Poly xn1(code.length() + 1, 0);
  xn1.front() = 1;
  xn1.back() = 1;
  const auto rem = gf2_remainder(xn1, code.generator_poly);
  r.check("generator_degree_is_n_minus_k", code.generator_poly.size() - 1 == code.length() - code.dimension);
  r.check("generator_divides_x^n-1", rem.empty());
}

void code_mindist(const Options& o, Report& r, std::ostream& err) {
  const auto f = field_from(o);
  const auto code = code_from(f, o);
  r["m"] = o.m;
  r["dimension"] = code.dimension;
  std::optional<int> exhaustive;
  std::optional<std::uint32_t> via_dual;
  if (code.dimension <= kDefaultDimensionCap) {
    exhaustive = enumerate_min_distance(code, kDefaultDimensionCap, o.threads);
    r["exhaustive_min_distance"] = *exhaustive;
  } else {
    r["exhaustive_min_distance"] = nullptr;
  }
  if (o.d.size() == 2 && o.m <= kMaxDualDegree && (o.m < kLongRunDegree || o.long_run)) {
    const auto dual = dual_of(f, o.d[0], o.d[1], o, err);
    via_dual = macwilliams_transform(dual).min_positive_weight();
    r["macwilliams_min_distance"] = via_dual ? json(*via_dual) : json(nullptr);
  } else {
    r["macwilliams_min_distance"] = nullptr;
  }
  if (!exhaustive && !via_dual) throw UsageError("no route can reach this code; lower m or pass --long-run");
  if (exhaustive && via_dual) r.check("routes_agree", static_cast<std::uint32_t>(*exhaustive) == *via_dual);
  r["min_distance"] = exhaustive ? *exhaustive : static_cast<int>(*via_dual);
}

void dual_wdist(const Options& o, Report& r, std::ostream& err) {
  require_dual_scope(o);
  const auto f = field_from(o);
  const auto [d1, d2] = exponent_pair(o.d);
  const auto dist = dual_of(f, d1, d2, o, err);
  const auto csv = to_csv(dist);
  r["m"] = o.m;
  r["d"] = o.d;
  r["distribution"] = distribution_json(dist);
  r["csv_sha256"] = sha256_hex(csv);
  if (!o.csv.empty()) {
    write_file(o.csv, csv);
    r.artifact(o.csv);
  }
  r.check("code_size_is_2^3m", dist.code_size == BigInt(1) << (3 * o.m));
}

void dual_compare(const Options& o, Report& r, std::ostream& err) {
  require_dual_scope(o);
  const auto f = field_from(o);
  r["m"] = o.m;
  if (o.listed) {
    DualOptions opt;
    opt.threads = o.threads;
    const auto pairs = listed_pairs(o.m);
    if (pairs.empty()) throw UsageError("no listed pairs for m=" + std::to_string(o.m));
    const auto h = table_harness(f, pairs, opt);
    r["baseline_sha256"] = sha256_hex(to_csv(h.baseline));
    json rows = json::array();
    for (const auto& p : h.results) {
      rows.push_back({{"d1", p.pair.first}, {"d2", p.pair.second}, {"equal", p.equal_to_baseline}});
      r.check("pair_" + std::to_string(p.pair.first) + "_" + std::to_string(p.pair.second), p.equal_to_baseline);
    }
    r["pairs"] = rows;
    return;
  }
  const auto [d1, d2] = exponent_pair(o.d);
  const auto [b1, b2] = exponent_pair(o.against);
  const auto a = dual_of(f, d1, d2, o, err);
  const auto b = dual_of(f, b1, b2, o, err);
  r["d"] = o.d;
  r["against"] = o.against;
  r["sha256"] = sha256_hex(to_csv(a));
  r["against_sha256"] = sha256_hex(to_csv(b));
  r["equal"] = a == b;
  r.check("distributions_equal", a == b);
}

void apn_command(const Options& o, Report& r, std::ostream&) {
  const auto f = field_from(o);
  r["m"] = o.m;
  json rows = json::array();
  auto run = [&](const std::string& family, int param, std::uint32_t d) {
    if (d == 0 || d >= f.n()) throw UsageError("exponent must lie in [1, n-1]");
    const auto rep = apn_check(f, d);
    rows.push_back({{"family", family}, {"r", param}, {"exponent", d}, {"apn", rep.is_apn},
                    {"max_solutions", rep.max_solutions}});
    r.check("apn_" + (family.empty() ? std::string("d") : family) + "_" + std::to_string(d), rep.is_apn);
  };
  if (o.known) {
    for (const auto& e : known_apn_exponents(o.m)) run(e.family, e.r, e.exponent);
  }
  for (auto d : o.d) run("", 0, d);
  if (rows.empty()) throw UsageError("give --d or --known");
  r["exponents"] = rows;
}

void divis_m(const Options& o, Report& r, std::ostream& err) {
  if (o.coeffs.empty()) throw UsageError("--d needs at least one coefficient");
  WeightGain g;
  try {
    g = max_weight_gain(o.m, o.coeffs, o.threads, o.m >= 11 ? progress_printer(err, "M") : ProgressFn{});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  r["m"] = o.m;
  r["d_list"] = o.coeffs;
  r["M"] = g.value;
  r["witness"] = {{"s", g.witness_s}, {"a_list", g.witness_a}};
  if (o.coeffs == std::vector<std::int64_t>{3, 13} && o.m % 2 == 1) {
    r.check("equals_(m-1)/2", g.value == (o.m - 1) / 2);
  }
  if (o.coeffs.size() == 1 && o.coeffs[0] > 2 && std::has_single_bit(static_cast<std::uint64_t>(o.coeffs[0] - 1))) {
    const int rr = std::countr_zero(static_cast<std::uint64_t>(o.coeffs[0] - 1));
    r.check("matches_gold_closed_form", g.value == gold_closed_form(o.m, rr));
  }
}

void divis_sweep(const Options& o, Report& r, std::ostream& err) {
  if (o.m < 3 || o.m > 13) throw UsageError("divis sweep supports 3 <= m <= 13");
  const auto sweep = sweep_nu_sequences(o.m, o.threads, progress_printer(err, "nu sweep"));
  r["m"] = o.m;
  r["sequences"] = sweep.sequences;
  r["max_w_nu"] = sweep.max_total;
  r.check("w_nu_identity", sweep.identity_failures == 0, sweep.identity_failures);
  r.check("carries_in_0_4", sweep.carry_range_failures == 0, sweep.carry_range_failures);
  r.check("window_condition", sweep.prop3_failures == 0, sweep.prop3_failures);
  r.check("w_nu_at_most_m", sweep.prop4_failures == 0, sweep.prop4_failures);
  if (sweep.first_failure) r["first_failure"] = {sweep.first_failure->first, sweep.first_failure->second};
  if (2 * o.m <= kMaxExhaustiveBits) {
    const std::int64_t d[] = {3, 13};
    const auto g = max_weight_gain(o.m, d, o.threads);
    r["M"] = g.value;
    r.check("max_w_nu_equals_2M", sweep.max_total == 2 * g.value);
  }
  if (o.m <= 9) {
    const auto g = build_digraph();
    const auto walks = validate_carry_walks(g, o.m, o.threads);
    r["carry_walks"] = walks.walks;
    r.check("carry_walks_in_graph", walks.failures == 0, walks.first_failure.empty() ? json(nullptr) : json(walks.first_failure));
  }
}

void graph_verify(const Options& o, Report& r, std::ostream&) {
  const fs::path dir = o.fixtures;
  const auto g = build_digraph();
  r["vertices"] = g.vertices.size();
  r["arcs"] = g.arc_count();
  r.check("vertex_count_40", g.vertices.size() == 40);
  r.check("arc_count_320", g.arc_count() == 320);

  const auto hist = arc_weight_histogram(g);
  const auto expected_hist = parse_histogram_fixture(read_file(dir / "arc_weight_histogram.txt"));
  json h = json::object();
  for (const auto& [w, c] : hist) h[std::to_string(w)] = c;
  r["weight_histogram"] = h;
  r.check("weight_histogram_matches_fixture", hist == expected_hist);

  const auto sinks = zero_outdegree_vertices(g);
  r["zero_outdegree"] = vertices_json(sinks);
  bool gamma_inside = true;
  for (const auto& v : gamma_set()) gamma_inside = gamma_inside && contains(sinks, v);
  r.check("gamma_has_no_outgoing_arcs", gamma_inside);

  auto diff_check = [&](const std::string& name, const std::vector<Arc>& expected, const std::vector<Arc>& got) {
    const auto d = diff_arcs(expected, got);
    json detail = {{"expected", expected.size()}, {"generated", got.size()}};
    if (!d.clean()) {
      detail["missing"] = arcs_json(d.missing);
      detail["unexpected"] = arcs_json(d.unexpected);
    }
    r.check(name, d.clean(), detail);
  };

  const auto listed = parse_arc_fixture(read_file(dir / "arcs_listed_tails.txt"));
  const auto regenerated = regenerate_for_tails(g, listed);
  diff_check("listed_tail_arcs_match_fixture", listed, regenerated);
  std::vector<Vertex> listed_tails;
  for (const auto& a : listed) {
    if (!contains(listed_tails, a.tail)) listed_tails.push_back(a.tail);
  }
  std::vector<Vertex> unchecked;
  for (const auto& v : g.vertices) {
    if (!contains(gamma_set(), v) && !contains(listed_tails, v) && !g.out[v.index()].empty()) unchecked.push_back(v);
  }
  r["listed_tails"] = listed_tails.size();
  r["tails_without_fixture"] = vertices_json(unchecked);

  const auto cls = classified_arcs(g);
  diff_check("head_in_gamma_arcs_match_fixture",
             parse_arc_fixture(read_file(dir / "arcs_weight2_head_in_gamma.txt")), cls.head_in_gamma);
  diff_check("tail_outside_s3_arcs_match_fixture",
             parse_arc_fixture(read_file(dir / "arcs_weight2_tail_outside_s3.txt")), cls.tail_outside_s3);
  diff_check("tail_in_s3_arcs_match_fixture",
             parse_arc_fixture(read_file(dir / "arcs_weight2_tail_in_s3.txt")), cls.tail_in_s3);
  std::size_t heavy = 0;
  for (const auto& [w, c] : hist) {
    if (w >= 2) heavy += c;
  }
  r.check("classified_lists_partition_weight2_arcs",
          cls.head_in_gamma.size() + cls.tail_outside_s3.size() + cls.tail_in_s3.size() == heavy);

  json reach = json::array();
  bool all_contained = true;
  for (const auto& c : reachable_set_checks(g)) {
    reach.push_back({{"eta", c.eta ? json(*c.eta) : json("-")}, {"omega", c.omega}, {"bound", c.bound},
                     {"reached", vertices_json(c.reached)}, {"contained", c.contained}});
    all_contained = all_contained && c.contained;
  }
  r["reachable_sets"] = reach;
  r.check("reachable_sets_within_bounds", all_contained);

  if (!o.emit_dir.empty()) {
    const fs::path out = o.emit_dir;
    const std::pair<const char*, std::string> files[] = {
        {"arc_weight_histogram.txt", format_histogram(hist)},
        {"arcs_listed_tails.txt", format_arcs(regenerated)},
        {"arcs_weight2_head_in_gamma.txt", format_arcs(cls.head_in_gamma)},
        {"arcs_weight2_tail_outside_s3.txt", format_arcs(cls.tail_outside_s3)},
        {"arcs_weight2_tail_in_s3.txt", format_arcs(cls.tail_in_s3)},
    };
    for (const auto& [name, text] : files) {
      write_file(out / name, text);
      r.artifact((out / name).string());
    }
  }
}

void graph_walks(const Options& o, Report& r, std::ostream&) {
  if (o.max_len < 2 || o.max_len > 200) throw UsageError("--max-len must lie in [2, 200]");
  const auto g = build_digraph();
  WalkSearchOptions opt;
  opt.max_length = o.max_len;
  opt.enforce_property3 = !o.no_property3;
  opt.threads = o.threads;
  if (!o.start.empty()) opt.start = parse_vertex_arg(o.start);
  const auto res = search_closed_P_walks(g, opt);
  r["max_length"] = o.max_len;
  r["property3"] = opt.enforce_property3;
  r["start"] = o.start.empty() ? json(nullptr) : json(o.start);
  r["states_explored"] = res.states_explored;
  r["closed_walks_found"] = res.walks.size();
  json examples = json::array();
  for (std::size_t i = 0; i < res.walks.size() && i < 5; ++i) {
    examples.push_back({{"vertices", vertices_json(res.walks[i].vertices)}, {"weights", res.walks[i].weights}});
  }
  r["examples"] = examples;
  bool witnesses_valid = true;
  for (const auto& w : res.walks) witnesses_valid = witnesses_valid && is_closed_P_walk(w, opt.enforce_property3);
  r.check("witnesses_recheck", witnesses_valid);
  if (opt.enforce_property3) {
    r.check("no_closed_walk", res.walks.empty());
  } else {
    r.check("control_finds_closed_walks", !res.walks.empty());
  }
}

void verify_theorem1(const Options& o, Report& r, std::ostream& err) {
  if (o.m < 5 || o.m % 2 == 0) throw UsageError("verify theorem1 needs odd m >= 5");
  require_dual_scope(o);
  const auto f = field_from(o);
  const auto kw = dual_of(f, 3, 13, o, err);
  const auto bch = dual_of(f, 3, 5, o, err);
  const bool equal = kw == bch;
  const int div = two_power_divisibility(kw);
  const auto primal = macwilliams_transform(kw);
  const auto dmin = primal.min_positive_weight();
  const int k = (o.m - 1) / 2;

  r["m"] = o.m;
  r["equal_to_bch"] = equal;
  r["divisibility"] = div;
  r["min_distance"] = dmin ? json(*dmin) : json(nullptr);
  r["dual_sha256"] = sha256_hex(to_csv(kw));
  r["dual_distribution"] = distribution_json(kw);
  r.check("equal_to_bch", equal);
  r.check("divisibility_is_(m-1)/2", div == k, div);
  r.check("min_distance_at_least_7", dmin && *dmin >= 7, dmin ? json(*dmin) : json(nullptr));
  if (!o.csv.empty()) {
    write_file(o.csv, to_csv(kw));
    r.artifact(o.csv);
  }
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weight-distribution, divisibility and carry-graph checks for C_{1,3,13}", "tripec"};
  app.require_subcommand(1);

  std::function<void(const Options&, Report&, std::ostream&)> action;
  std::string command;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Also write the JSON report to this path");
    sub->add_option("--threads", o.threads, "Worker threads, 0 = one per hardware thread");
  };
  auto add_m = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "Field degree")->check(CLI::Range(2, 64));
    sub->add_option("--poly", o.poly, "Primitive polynomial in octal");
  };
  auto bind = [&](CLI::App* sub, std::string name, auto fn) {
    sub->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  auto* field = app.add_subcommand("field", "Field tables");
  field->require_subcommand(1);
  auto* field_i = field->add_subcommand("info", "Field parameters");
  add_m(field_i);
  add_common(field_i);
  bind(field_i, "field info", field_info);

  auto* code = app.add_subcommand("code", "The cyclic code C_{1,d1,d2}");
  code->require_subcommand(1);
  auto* code_i = code->add_subcommand("info", "Dimension and generator polynomial");
  auto* code_md = code->add_subcommand("mindist", "Minimum distance by enumeration and MacWilliams");
  for (auto* sub : {code_i, code_md}) {
    add_m(sub);
    add_common(sub);
    sub->add_option("--d", o.d, "Zeros besides 1, e.g. 3,13")->delimiter(',')->required();
    sub->add_flag("--long-run", o.long_run, "Allow the m >= 9 distribution job");
  }
  bind(code_i, "code info", code_info);
  bind(code_md, "code mindist", code_mindist);

  auto* dual = app.add_subcommand("dual", "Dual-code weight distributions");
  dual->require_subcommand(1);
  auto* dual_w = dual->add_subcommand("wdist", "Weight distribution of the dual of C_{1,d1,d2}");
  auto* dual_c = dual->add_subcommand("compare", "Compare two dual distributions");
  for (auto* sub : {dual_w, dual_c}) {
    add_m(sub);
    add_common(sub);
    sub->add_flag("--long-run", o.long_run, "Allow m >= 9");
  }
  dual_w->add_option("--d", o.d, "d1,d2")->delimiter(',')->required();
  dual_w->add_option("--csv", o.csv, "Write the distribution as CSV");
  dual_c->add_option("--d", o.d, "d1,d2")->delimiter(',');
  dual_c->add_option("--against", o.against, "Baseline pair (default 3,5)")->delimiter(',');
  dual_c->add_flag("--listed", o.listed, "Compare every listed pair for m against the baseline");
  bind(dual_w, "dual wdist", dual_wdist);
  bind(dual_c, "dual compare", dual_compare);

  auto* apn = app.add_subcommand("apn", "Differential uniformity of power maps");
  apn->require_subcommand(1);
  auto* apn_c = apn->add_subcommand("check", "APN test for x^d");
  add_m(apn_c);
  add_common(apn_c);
  apn_c->add_option("--d", o.d, "Exponents")->delimiter(',');
  apn_c->add_flag("--known", o.known, "Every exponent of the known APN families for m");
  bind(apn_c, "apn check", apn_command);

  auto* divis = app.add_subcommand("divis", "Add-with-carry weight gain");
  divis->require_subcommand(1);
  auto* divis_mc = divis->add_subcommand("M", "Exhaustive M(m; d_list)");
  add_common(divis_mc);
  divis_mc->add_option("--m", o.m, "Field degree")->check(CLI::Range(2, 128));
  divis_mc->add_option("--d", o.coeffs, "Coefficients, e.g. 3,13")->delimiter(',')->required();
  bind(divis_mc, "divis M", divis_m);
  auto* divis_s = divis->add_subcommand("sweep", "nu-sequence checks over every (a, b)");
  add_common(divis_s);
  divis_s->add_option("--m", o.m, "Field degree");
  bind(divis_s, "divis sweep", divis_sweep);

  auto* graph = app.add_subcommand("graph", "The carry digraph");
  graph->require_subcommand(1);
  auto* graph_v = graph->add_subcommand("verify", "Regenerate and diff every arc table");
  add_common(graph_v);
  graph_v->add_option("--fixtures", o.fixtures, "Fixture directory");
  graph_v->add_option("--emit-dir", o.emit_dir, "Write regenerated tables here");
  bind(graph_v, "graph verify", graph_verify);
  auto* graph_w = graph->add_subcommand("walks", "Bounded search for closed constrained walks");
  add_common(graph_w);
  graph_w->add_option("--max-len", o.max_len, "Longest walk searched");
  graph_w->add_flag("--no-property3", o.no_property3, "Drop the running-weight constraint (control)");
  graph_w->add_option("--start", o.start, "Only start from this vertex, x,y,z,u");
  bind(graph_w, "graph walks", graph_walks);

  auto* verify = app.add_subcommand("verify", "End-to-end checks");
  verify->require_subcommand(1);
  auto* verify_t = verify->add_subcommand("theorem1", "Dual of C_{1,3,13} against C_{1,3,5}");
  add_m(verify_t);
  add_common(verify_t);
  verify_t->add_flag("--long-run", o.long_run, "Allow m >= 9");
  verify_t->add_option("--csv", o.csv, "Write the dual distribution as CSV");
  bind(verify_t, "verify theorem1", verify_theorem1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report(command);
  json params = json::object();
  if (command.rfind("graph", 0) != 0) params["m"] = o.m;
  if (!o.d.empty()) params["d"] = o.d;
  if (!o.coeffs.empty()) params["d_list"] = o.coeffs;
  if (!o.poly.empty()) params["poly_octal"] = o.poly;
  report["parameters"] = params;

  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    action(o, report, err);
    exit_code = report.passed() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    report.fail(e.what());
    exit_code = 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    report.fail(e.what());
    exit_code = 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto text = report.finish(seconds).dump(2) + "\n";
  out << text;
  if (!o.out.empty()) {
    try {
      write_file(o.out, text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return exit_code;
}

}  // namespace tripec
