#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tripec/divisibility.hpp"

namespace tripec {

// (x, y, z, u) with x, y, z bits and u in [0, 4]. Components are 1-based in
// component(): P(1) = x ... P(4) = u.
struct Vertex {
  int x = 0;
  int y = 0;
  int z = 0;
  int u = 0;

  int component(int k) const;
  int index() const { return ((x * 2 + y) * 2 + z) * 5 + u; }
  static Vertex from_index(int idx);
  std::string str() const;  // "x,y,z,u"

  auto operator<=>(const Vertex&) const = default;
};

inline constexpr int kVertexCount = 40;
inline constexpr int kMinArcWeight = -6;
inline constexpr int kMaxArcWeight = 4;

struct Arc {
  Vertex tail;
  Vertex head;
  int weight = 0;

  auto operator<=>(const Arc&) const = default;
};

// Arc condition x1+y1+z1+x2+z2-2u1+u2 in {0, 1}; nullopt when there is no arc.
std::optional<int> arc_weight(const Vertex& tail, const Vertex& head);

struct Digraph {
  std::vector<Vertex> vertices;        // in index order
  std::vector<std::vector<Arc>> out;   // by tail index, heads in index order

  std::size_t arc_count() const;
};

const std::vector<Vertex>& gamma_set();
const std::vector<Vertex>& s1_set();
const std::vector<Vertex>& s2_set();
const std::vector<Vertex>& s3_set();
bool contains(const std::vector<Vertex>& set, const Vertex& v);

Digraph build_digraph();

std::map<int, std::uint64_t> arc_weight_histogram(const Digraph& g);

std::vector<Vertex> zero_outdegree_vertices(const Digraph& g);

// Sorted by head.
std::vector<Arc> arcs_from(const Digraph& g, const Vertex& tail, bool exclude_gamma_heads);

struct ClassifiedArcs {
  std::vector<Arc> head_in_gamma;     // weight >= 2, head in Gamma
  std::vector<Arc> tail_outside_s3;   // weight >= 2, head not in Gamma, tail not in S3
  std::vector<Arc> tail_in_s3;        // weight >= 2, head not in Gamma, tail in S3
};

ClassifiedArcs classified_arcs(const Digraph& g);

// --- fixtures ---------------------------------------------------------------

// Lines "x,y,z,u -> x,y,z,u : w"; blank lines and '#' comments are skipped.
// Throws std::invalid_argument with the line number on malformed input.
std::vector<Arc> parse_arc_fixture(std::string_view text);
std::string format_arcs(std::span<const Arc> arcs);

// Lines "w : count".
std::map<int, std::uint64_t> parse_histogram_fixture(std::string_view text);
std::string format_histogram(const std::map<int, std::uint64_t>& hist);

struct ArcDiff {
  std::vector<Arc> missing;     // expected but not generated
  std::vector<Arc> unexpected;  // generated but not expected
  bool clean() const { return missing.empty() && unexpected.empty(); }
};

ArcDiff diff_arcs(std::span<const Arc> expected, std::span<const Arc> generated);

// Arcs from every tail that occurs in `expected`, head-not-in-Gamma filter applied.
std::vector<Arc> regenerate_for_tails(const Digraph& g, std::span<const Arc> expected);

// --- carry walks ------------------------------------------------------------

struct CarryWalk {
  std::vector<Vertex> vertices;  // V_0 ... V_{m-1}, V_i = (a_i, b_i, b_{i-2}, c_i)
  std::vector<Arc> arcs;         // V_i -> V_{i-1}, weight nu_i
};

// Throws std::logic_error when an arc is missing from g or its weight differs from nu_i.
CarryWalk walk_from_carry_data(const Digraph& g, const NuSequence& nu);

struct CarryWalkSweep {
  int m = 0;
  std::uint64_t walks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

// Every valid (a, b) at m, both representatives of s for residue 0.
CarryWalkSweep validate_carry_walks(const Digraph& g, int m, unsigned threads = 1);

// --- constrained walks --------------------------------------------------------

// Walk position: the next head must have second component previous_third (when
// set), lie outside Gamma, and carry weight >= deficit (when set). The deficit
// is (i + 2) - T_i for the arc about to be taken.
struct WalkState {
  Vertex current;
  std::optional<int> previous_third;
  std::optional<int> deficit;

  auto operator<=>(const WalkState&) const = default;
};

struct Successor {
  Arc arc;
  WalkState next;
};

// Empty result is a dead end.
std::vector<Successor> constrained_successors(const Digraph& g, const WalkState& state);

struct SbsNode {
  WalkState state;  // vertex and the (eta, omega) label of its outgoing step
  int parent = -1;
  std::vector<int> children;
  bool repeated = false;  // state already expanded elsewhere in the tree
};

struct SbsTree {
  std::vector<SbsNode> nodes;  // nodes[0] is the root

  std::vector<Vertex> vertices() const;  // sorted, distinct
  // One line per leaf path, e.g. "(0,0,0,0)-(0,1)->(1,0,0,0)-(0,1)->(0,0,0,0)-(0,1)->*"
  std::string render() const;
};

// Breadth-first expansion; a state seen before becomes a repeated leaf. Deficits
// at or below the minimum arc weight drop to "no constraint", which can only
// add walks, so containment results stay valid.
SbsTree expand_sbs(const Digraph& g, const WalkState& start);

struct ContainmentCheck {
  std::optional<int> eta;
  int omega = 0;
  std::string bound;             // "S1", "S2" or "S3"
  std::vector<Vertex> reached;   // vertices of the expansion from (0,0,0,0)
  bool contained = false;
};

// Expansions from (0,0,0,0) under (eta, omega) for eta in {0, 1, free}: omega in
// {0, 1} stays in S1, omega = -1 in S2, omega = -2 in S3.
std::vector<ContainmentCheck> reachable_set_checks(const Digraph& g);

struct ClosedWalk {
  std::vector<Vertex> vertices;  // P_0 ... P_q with P_q = P_0
  std::vector<int> weights;      // w(theta_0) ... w(theta_{q-1})
};

struct WalkSearchOptions {
  int max_length = 40;
  bool enforce_property3 = true;
  std::optional<Vertex> start;  // restrict to one starting vertex
  unsigned threads = 1;
};

struct WalkSearchResult {
  std::vector<ClosedWalk> walks;  // one witness per (start, P_1(2), length)
  std::uint64_t states_explored = 0;
};

// Layered search from every non-Gamma start; closure requires P_q = P_0 and
// P_{q-1}(3) = P_1(2). Deficits are kept exactly, so the search is exhaustive
// up to max_length.
WalkSearchResult search_closed_P_walks(const Digraph& g, const WalkSearchOptions& options);

// Exact check of Properties I-III and closure for a concrete walk.
bool is_closed_P_walk(const ClosedWalk& walk, bool enforce_property3 = true);

}  // namespace tripec
