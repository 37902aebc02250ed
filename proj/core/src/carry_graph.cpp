#include "tripec/carry_graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tripec {

int Vertex::component(int k) const {
  switch (k) {
    case 1: return x;
    case 2: return y;
    case 3: return z;
    case 4: return u;
    default: throw std::out_of_range("vertex component index must be 1..4");
  }
}

Vertex Vertex::from_index(int idx) {
  if (idx < 0 || idx >= kVertexCount) throw std::out_of_range("vertex index");
  Vertex v;
  v.u = idx % 5;
  idx /= 5;
  v.z = idx % 2;
  idx /= 2;
  v.y = idx % 2;
  v.x = idx / 2;
  return v;
}

std::string Vertex::str() const {
  return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + "," + std::to_string(u);
}

std::optional<int> arc_weight(const Vertex& t, const Vertex& h) {
  const int digit = t.x + t.y + t.z + h.x + h.z - 2 * t.u + h.u;
  if (digit != 0 && digit != 1) return std::nullopt;
  return t.x + t.y + t.z + h.x + h.y + h.z - t.u - h.u;
}

std::size_t Digraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& arcs : out) total += arcs.size();
  return total;
}

const std::vector<Vertex>& gamma_set() {
  static const std::vector<Vertex> s = {{0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}};
  return s;
}

const std::vector<Vertex>& s1_set() {
  static const std::vector<Vertex> s = {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 0}};
  return s;
}

const std::vector<Vertex>& s2_set() {
  static const std::vector<Vertex> s = [] {
    auto v = s1_set();
    v.insert(v.end(), {{0, 0, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 1}});
    std::sort(v.begin(), v.end());
    return v;
  }();
  return s;
}

const std::vector<Vertex>& s3_set() {
  static const std::vector<Vertex> s = [] {
    auto v = s2_set();
    v.insert(v.end(), {{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 0, 1}});
    std::sort(v.begin(), v.end());
    return v;
  }();
  return s;
}

bool contains(const std::vector<Vertex>& set, const Vertex& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

Digraph build_digraph() {
  Digraph g;
  g.out.resize(kVertexCount);
  for (int i = 0; i < kVertexCount; ++i) g.vertices.push_back(Vertex::from_index(i));
  for (const auto& t : g.vertices) {
    for (const auto& h : g.vertices) {
      if (auto w = arc_weight(t, h)) g.out[t.index()].push_back({t, h, *w});
    }
  }
  return g;
}

std::map<int, std::uint64_t> arc_weight_histogram(const Digraph& g) {
  std::map<int, std::uint64_t> hist;
  for (const auto& arcs : g.out) {
    for (const auto& a : arcs) ++hist[a.weight];
  }
  return hist;
}

std::vector<Vertex> zero_outdegree_vertices(const Digraph& g) {
  std::vector<Vertex> out;
  for (const auto& v : g.vertices) {
    if (g.out[v.index()].empty()) out.push_back(v);
  }
  return out;
}

std::vector<Arc> arcs_from(const Digraph& g, const Vertex& tail, bool exclude_gamma_heads) {
  std::vector<Arc> out;
  for (const auto& a : g.out.at(tail.index())) {
    if (exclude_gamma_heads && contains(gamma_set(), a.head)) continue;
    out.push_back(a);
  }
  return out;
}

ClassifiedArcs classified_arcs(const Digraph& g) {
  ClassifiedArcs c;
  for (const auto& arcs : g.out) {
    for (const auto& a : arcs) {
      if (a.weight < 2) continue;
      if (contains(gamma_set(), a.head)) {
        c.head_in_gamma.push_back(a);
      } else if (contains(s3_set(), a.tail)) {
        c.tail_in_s3.push_back(a);
      } else {
        c.tail_outside_s3.push_back(a);
      }
    }
  }
  return c;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::size_t line) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

Vertex parse_vertex(std::string_view s, std::size_t line) {
  int parts[4];
  for (int k = 0; k < 4; ++k) {
    const auto comma = s.find(',');
    if ((k < 3) != (comma != std::string_view::npos)) {
      throw std::invalid_argument("line " + std::to_string(line) + ": vertex needs four components");
    }
    parts[k] = parse_int(s.substr(0, comma), line);
    if (k < 3) s.remove_prefix(comma + 1);
  }
  Vertex v{parts[0], parts[1], parts[2], parts[3]};
  if (v.x < 0 || v.x > 1 || v.y < 0 || v.y > 1 || v.z < 0 || v.z > 1 || v.u < 0 || v.u > 4) {
    throw std::invalid_argument("line " + std::to_string(line) + ": vertex component out of range");
  }
  return v;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    auto nl = text.find('\n');
    auto row = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    row = trim(row);
    if (!row.empty()) fn(row, line);
  }
}

}  // namespace

std::vector<Arc> parse_arc_fixture(std::string_view text) {
  std::vector<Arc> arcs;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    const auto arrow = row.find("->");
    const auto colon = row.find(':');
    if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow) {
      throw std::invalid_argument("line " + std::to_string(line) + ": expected 'x,y,z,u -> x,y,z,u : w'");
    }
    Arc a;
    a.tail = parse_vertex(trim(row.substr(0, arrow)), line);
    a.head = parse_vertex(trim(row.substr(arrow + 2, colon - arrow - 2)), line);
    a.weight = parse_int(row.substr(colon + 1), line);
    arcs.push_back(a);
  });
  return arcs;
}

std::string format_arcs(std::span<const Arc> arcs) {
  std::vector<Arc> sorted(arcs.begin(), arcs.end());
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto& a : sorted) out << a.tail.str() << " -> " << a.head.str() << " : " << a.weight << '\n';
  return out.str();
}

std::map<int, std::uint64_t> parse_histogram_fixture(std::string_view text) {
  std::map<int, std::uint64_t> hist;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    const auto colon = row.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(line) + ": expected 'w : count'");
    }
    const int w = parse_int(row.substr(0, colon), line);
    const int c = parse_int(row.substr(colon + 1), line);
    if (c < 0) throw std::invalid_argument("line " + std::to_string(line) + ": negative count");
    hist[w] += static_cast<std::uint64_t>(c);
  });
  return hist;
}

std::string format_histogram(const std::map<int, std::uint64_t>& hist) {
  std::ostringstream out;
  for (const auto& [w, c] : hist) out << w << " : " << c << '\n';
  return out.str();
}

ArcDiff diff_arcs(std::span<const Arc> expected, std::span<const Arc> generated) {
  std::vector<Arc> e(expected.begin(), expected.end());
  std::vector<Arc> g(generated.begin(), generated.end());
  std::sort(e.begin(), e.end());
  std::sort(g.begin(), g.end());
  ArcDiff d;
  std::set_difference(e.begin(), e.end(), g.begin(), g.end(), std::back_inserter(d.missing));
  std::set_difference(g.begin(), g.end(), e.begin(), e.end(), std::back_inserter(d.unexpected));
  return d;
}

std::vector<Arc> regenerate_for_tails(const Digraph& g, std::span<const Arc> expected) {
  std::vector<Vertex> tails;
  for (const auto& a : expected) tails.push_back(a.tail);
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  std::vector<Arc> out;
  for (const auto& t : tails) {
    auto arcs = arcs_from(g, t, true);
    out.insert(out.end(), arcs.begin(), arcs.end());
  }
  return out;
}

CarryWalk walk_from_carry_data(const Digraph& g, const NuSequence& nu) {
  const int m = nu.m;
  if (m < 2 || static_cast<int>(nu.nu.size()) != m || static_cast<int>(nu.carries.size()) != m) {
    throw std::invalid_argument("malformed nu-sequence");
  }
  auto bit = [m](std::uint64_t v, int i) { return static_cast<int>((v >> (((i % m) + m) % m)) & 1u); };
  CarryWalk walk;
  for (int i = 0; i < m; ++i) {
    const auto c = nu.carries[i];
    if (c < 0 || c > 4) throw std::logic_error("carry " + std::to_string(c) + " has no vertex");
    walk.vertices.push_back({bit(nu.a, i), bit(nu.b, i), bit(nu.b, i - 2), static_cast<int>(c)});
  }
  for (int i = 0; i < m; ++i) {
    const auto& tail = walk.vertices[i];
    const auto& head = walk.vertices[(i + m - 1) % m];
    const auto& arcs = g.out.at(tail.index());
    const auto it = std::find_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.head == head; });
    if (it == arcs.end()) {
      throw std::logic_error("no arc " + tail.str() + " -> " + head.str() + " at i=" + std::to_string(i));
    }
    if (it->weight != nu.nu[i]) {
      throw std::logic_error("arc weight " + std::to_string(it->weight) + " != nu_" + std::to_string(i) + " = " +
                             std::to_string(nu.nu[i]));
    }
    walk.arcs.push_back(*it);
  }
  return walk;
}

CarryWalkSweep validate_carry_walks(const Digraph& g, int m, unsigned threads) {
  if (m < 2 || m > 16) throw std::invalid_argument("m outside [2, 16] for the carry-walk sweep");
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  const std::uint64_t values = n + 1;
  const unsigned workers = resolve_threads(threads);
  std::vector<CarryWalkSweep> partial(workers);

  parallel_ranges(values, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& rep = partial[w];
    for (std::uint64_t a = begin; a < end; ++a) {
      for (std::uint64_t b = 0; b < values; ++b) {
        if (a % n == 0 && b % n == 0) continue;
        const bool zero = (3 * (a % n) + 13 * (b % n)) % n == 0;
        for (auto rep_kind : {ZeroResidue::zero, ZeroResidue::all_ones}) {
          if (!zero && rep_kind == ZeroResidue::all_ones) continue;
          ++rep.walks;
          try {
            const auto nu = nu_sequence(m, a, b, rep_kind);
            const auto walk = walk_from_carry_data(g, nu);
            std::int64_t total = 0;
            for (const auto& arc : walk.arcs) total += arc.weight;
            if (total != nu.total) throw std::logic_error("walk weight differs from w(nu)");
          } catch (const std::exception& e) {
            if (rep.failures++ == 0) {
              rep.first_failure = "a=" + std::to_string(a) + " b=" + std::to_string(b) + ": " + e.what();
            }
          }
        }
      }
    }
  });

  CarryWalkSweep out;
  out.m = m;
  for (const auto& p : partial) {
    out.walks += p.walks;
    out.failures += p.failures;
    if (out.first_failure.empty()) out.first_failure = p.first_failure;
  }
  return out;
}

std::vector<Successor> constrained_successors(const Digraph& g, const WalkState& state) {
  std::vector<Successor> out;
  for (const auto& arc : g.out.at(state.current.index())) {
    if (contains(gamma_set(), arc.head)) continue;
    if (state.previous_third && arc.head.y != *state.previous_third) continue;
    if (state.deficit && arc.weight < *state.deficit) continue;
    WalkState next{arc.head, state.current.z, std::nullopt};
    if (state.deficit) next.deficit = *state.deficit + 1 - arc.weight;
    out.push_back({arc, next});
  }
  return out;
}

std::vector<Vertex> SbsTree::vertices() const {
  std::vector<Vertex> out;
  for (const auto& node : nodes) out.push_back(node.state.current);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string label(const WalkState& s) {
  std::string eta = s.previous_third ? std::to_string(*s.previous_third) : "-";
  std::string omega = s.deficit ? std::to_string(*s.deficit) : "*";
  return "(" + s.current.str() + ")-(" + eta + "," + omega + ")->";
}

}  // namespace

std::string SbsTree::render() const {
  std::ostringstream out;
  std::vector<std::pair<int, std::string>> stack = {{0, label(nodes.at(0).state)}};
  while (!stack.empty()) {
    auto [idx, prefix] = stack.back();
    stack.pop_back();
    const auto& node = nodes[idx];
    if (node.children.empty()) {
      out << prefix << (node.repeated ? "*" : "O") << '\n';
      continue;
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
      stack.emplace_back(*it, prefix + label(nodes[*it].state));
    }
  }
  return out.str();
}

SbsTree expand_sbs(const Digraph& g, const WalkState& start) {
  if (contains(gamma_set(), start.current)) throw std::invalid_argument("SBS start lies in Gamma");
  auto relax = [](WalkState s) {
    if (s.deficit && *s.deficit <= kMinArcWeight) s.deficit.reset();
    return s;
  };
  SbsTree tree;
  tree.nodes.push_back({relax(start), -1, {}, false});
  std::vector<WalkState> seen = {tree.nodes[0].state};
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    const auto succ = constrained_successors(g, tree.nodes[idx].state);
    for (const auto& s : succ) {
      const auto next = relax(s.next);
      const bool repeat = std::find(seen.begin(), seen.end(), next) != seen.end();
      const int child = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({next, idx, {}, repeat});
      tree.nodes[idx].children.push_back(child);
      if (!repeat) {
        seen.push_back(next);
        queue.push_back(child);
      }
    }
  }
  return tree;
}

std::vector<ContainmentCheck> reachable_set_checks(const Digraph& g) {
  struct Case {
    int omega;
    const char* bound;
    const std::vector<Vertex>& set;
  };
  const Case cases[] = {{1, "S1", s1_set()}, {0, "S1", s1_set()}, {-1, "S2", s2_set()}, {-2, "S3", s3_set()}};
  const std::optional<int> etas[] = {0, 1, std::nullopt};
  std::vector<ContainmentCheck> out;
  for (const auto& c : cases) {
    for (const auto& eta : etas) {
      ContainmentCheck chk;
      chk.eta = eta;
      chk.omega = c.omega;
      chk.bound = c.bound;
      chk.reached = expand_sbs(g, WalkState{Vertex{}, eta, c.omega}).vertices();
      chk.contained = std::all_of(chk.reached.begin(), chk.reached.end(),
                                  [&](const Vertex& v) { return contains(c.set, v); });
      out.push_back(std::move(chk));
    }
  }
  return out;
}

namespace {

// Search key: vertex, previous third (2 = unset), exact deficit, P_1(2).
struct SearchKey {
  int vertex;
  int prev_third;
  int deficit;
  int p1y;
  bool operator==(const SearchKey&) const = default;
};

struct SearchKeyHash {
  std::size_t operator()(const SearchKey& k) const {
    return ((static_cast<std::size_t>(k.vertex) * 3 + k.prev_third) * 1024 + (k.deficit + 512)) * 3 + k.p1y;
  }
};

struct Parent {
  SearchKey key;
  int weight;
};

WalkSearchResult search_from(const Digraph& g, const Vertex& start, const WalkSearchOptions& opt) {
  WalkSearchResult res;
  constexpr int kUnset = 2;
  const int no_deficit = 0;
  SearchKey root{start.index(), kUnset, opt.enforce_property3 ? 2 : no_deficit, kUnset};
  std::vector<std::unordered_map<SearchKey, Parent, SearchKeyHash>> layers(1);
  layers[0].emplace(root, Parent{root, 0});
  std::vector<bool> reported(2 * (opt.max_length + 1), false);

  for (int len = 1; len <= opt.max_length; ++len) {
    std::unordered_map<SearchKey, Parent, SearchKeyHash> next;
    for (const auto& [key, _] : layers.back()) {
      WalkState st{Vertex::from_index(key.vertex), std::nullopt, std::nullopt};
      if (key.prev_third != kUnset) st.previous_third = key.prev_third;
      if (opt.enforce_property3) st.deficit = key.deficit;
      for (const auto& s : constrained_successors(g, st)) {
        SearchKey nk{s.next.current.index(), *s.next.previous_third,
                     opt.enforce_property3 ? *s.next.deficit : no_deficit,
                     len == 1 ? s.next.current.y : key.p1y};
        next.emplace(nk, Parent{key, s.arc.weight});
      }
    }
    res.states_explored += next.size();
    layers.push_back(std::move(next));

    for (const auto& [key, parent] : layers.back()) {
      if (key.vertex != root.vertex || key.prev_third != key.p1y) continue;
      const std::size_t slot = 2 * len + key.p1y;
      if (reported[slot]) continue;
      reported[slot] = true;
      ClosedWalk walk;
      SearchKey cur = key;
      for (int l = len; l > 0; --l) {
        const auto& p = layers[l].at(cur);
        walk.vertices.push_back(Vertex::from_index(cur.vertex));
        walk.weights.push_back(p.weight);
        cur = p.key;
      }
      walk.vertices.push_back(start);
      std::reverse(walk.vertices.begin(), walk.vertices.end());
      std::reverse(walk.weights.begin(), walk.weights.end());
      res.walks.push_back(std::move(walk));
    }
    if (layers.back().empty()) break;
  }
  // Witnesses in (length, P_1(2)) order for a stable report.
  std::stable_sort(res.walks.begin(), res.walks.end(), [](const ClosedWalk& a, const ClosedWalk& b) {
    if (a.weights.size() != b.weights.size()) return a.weights.size() < b.weights.size();
    return a.vertices[1].y < b.vertices[1].y;
  });
  return res;
}

}  // namespace

WalkSearchResult search_closed_P_walks(const Digraph& g, const WalkSearchOptions& options) {
  if (options.max_length < 2) throw std::invalid_argument("max_length must be at least 2");
  if (options.max_length > 200) throw std::invalid_argument("max_length above 200 is not supported");
  std::vector<Vertex> starts;
  if (options.start) {
    if (contains(gamma_set(), *options.start)) return {};
    starts.push_back(*options.start);
  } else {
    for (const auto& v : g.vertices) {
      if (!contains(gamma_set(), v)) starts.push_back(v);
    }
  }
  const unsigned workers = resolve_threads(options.threads);
  std::vector<WalkSearchResult> per_start(starts.size());
  parallel_ranges(starts.size(), workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (auto i = begin; i < end; ++i) per_start[i] = search_from(g, starts[i], options);
  });
  WalkSearchResult out;
  for (auto& r : per_start) {
    out.states_explored += r.states_explored;
    for (auto& w : r.walks) out.walks.push_back(std::move(w));
  }
  return out;
}

bool is_closed_P_walk(const ClosedWalk& walk, bool enforce_property3) {
  const auto q = walk.weights.size();
  if (q == 0 || walk.vertices.size() != q + 1 || walk.vertices.front() != walk.vertices.back()) return false;
  int total = 0;
  for (std::size_t i = 0; i < q; ++i) {
    const auto& t = walk.vertices[i];
    const auto& h = walk.vertices[i + 1];
    if (contains(gamma_set(), t) || contains(gamma_set(), h)) return false;
    const auto w = arc_weight(t, h);
    if (!w || *w != walk.weights[i]) return false;
    if (i >= 1 && h.y != walk.vertices[i - 1].z) return false;
    if (enforce_property3 && *w < static_cast<int>(i) + 2 - total) return false;
    total += *w;
  }
  return walk.vertices[q - 1].z == walk.vertices[1].y;
}

}  // namespace tripec
