#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tripec/carry_graph.hpp"

namespace tripec {
namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TRIPEC_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> lines(const std::string& text) {
  std::set<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.insert(l);
  return out;
}

const Digraph& graph() {
  static const Digraph g = build_digraph();
  return g;
}

TEST(Vertex, IndexRoundTrip) {
  for (int i = 0; i < kVertexCount; ++i) {
    const auto v = Vertex::from_index(i);
    EXPECT_EQ(v.index(), i);
    EXPECT_EQ(v.component(1), v.x);
    EXPECT_EQ(v.component(4), v.u);
  }
  EXPECT_EQ((Vertex{1, 0, 1, 3}).str(), "1,0,1,3");
}

TEST(Digraph, ArcsMatchPairwiseRule) {
  // rebuild the arc set straight from the two rules
  std::set<std::tuple<int, int, int>> expected;
  for (int x1 = 0; x1 < 2; ++x1) for (int y1 = 0; y1 < 2; ++y1) for (int z1 = 0; z1 < 2; ++z1) for (int u1 = 0; u1 < 5; ++u1)
    for (int x2 = 0; x2 < 2; ++x2) for (int y2 = 0; y2 < 2; ++y2) for (int z2 = 0; z2 < 2; ++z2) for (int u2 = 0; u2 < 5; ++u2) {
      const int c = x1 + y1 + z1 + x2 + z2 - 2 * u1 + u2;
      if (c != 0 && c != 1) continue;
      const Vertex t{x1, y1, z1, u1}, h{x2, y2, z2, u2};
      expected.emplace(t.index(), h.index(), x1 + y1 + z1 + x2 + y2 + z2 - u1 - u2);
    }
  std::set<std::tuple<int, int, int>> got;
  for (const auto& arcs : graph().out)
    for (const auto& a : arcs) got.emplace(a.tail.index(), a.head.index(), a.weight);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(graph().vertices.size(), 40u);
  EXPECT_EQ(graph().arc_count(), 320u);
}

TEST(Digraph, HistogramMatchesPublishedCounts) {
  const std::map<int, std::uint64_t> published{{-6, 1}, {-5, 16}, {-4, 36}, {-3, 43}, {-2, 43}, {-1, 42},
                                               {0, 43},  {1, 43},  {2, 36},  {3, 16},  {4, 1}};
  EXPECT_EQ(arc_weight_histogram(graph()), published);
  EXPECT_EQ(parse_histogram_fixture(slurp("arc_weight_histogram.txt")), published);
}

TEST(Digraph, SinksIncludeGamma) {
  const auto sinks = zero_outdegree_vertices(graph());
  std::set<std::string> names;
  for (const auto& v : sinks) names.insert(v.str());
  EXPECT_EQ(names, (std::set<std::string>{"0,0,0,4", "0,0,1,4", "0,1,0,4", "0,1,1,0", "1,0,0,4", "1,0,1,0",
                                          "1,1,0,0", "1,1,1,0"}));
  for (const auto& v : gamma_set()) EXPECT_TRUE(contains(sinks, v)) << v.str();
}

TEST(VertexSets, Nested) {
  for (const auto& v : s1_set()) EXPECT_TRUE(contains(s2_set(), v));
  for (const auto& v : s2_set()) EXPECT_TRUE(contains(s3_set(), v));
  EXPECT_EQ(s1_set().size(), 5u);
  EXPECT_EQ(s2_set().size(), 8u);
  EXPECT_EQ(s3_set().size(), 11u);
}

TEST(Fixtures, ParseFormatRoundTrip) {
  const auto arcs = parse_arc_fixture(slurp("arcs_listed_tails.txt"));
  EXPECT_EQ(arcs.size(), 144u);
  EXPECT_EQ(parse_arc_fixture(format_arcs(arcs)), arcs);
  const auto hist = parse_histogram_fixture(slurp("arc_weight_histogram.txt"));
  EXPECT_EQ(parse_histogram_fixture(format_histogram(hist)), hist);
}

TEST(Fixtures, MalformedLinesReportLineNumber) {
  try {
    parse_arc_fixture("0,0,0,0 -> 0,0,0,0 : 0\n0,0,0 -> 1,0,0,0 : 1\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_histogram_fixture("x : 3\n"), std::invalid_argument);
}

TEST(Fixtures, ListedTailsDiffClean) {
  const auto expected = parse_arc_fixture(slurp("arcs_listed_tails.txt"));
  std::set<Vertex> tails;
  for (const auto& a : expected) tails.insert(a.tail);
  EXPECT_EQ(tails.size(), 17u);
  const auto diff = diff_arcs(expected, regenerate_for_tails(graph(), expected));
  EXPECT_TRUE(diff.clean()) << diff.missing.size() << " missing, " << diff.unexpected.size() << " unexpected";
}

TEST(Fixtures, DiffReportsBothSides) {
  auto expected = parse_arc_fixture(slurp("arcs_weight2_tail_in_s3.txt"));
  auto generated = expected;
  generated.pop_back();
  generated.push_back({Vertex{0, 0, 0, 0}, Vertex{0, 0, 0, 0}, 0});
  const auto diff = diff_arcs(expected, generated);
  EXPECT_EQ(diff.missing.size(), 1u);
  EXPECT_EQ(diff.unexpected.size(), 1u);
}

TEST(Classified, MatchFixturesAndPartition) {
  const auto c = classified_arcs(graph());
  EXPECT_TRUE(diff_arcs(parse_arc_fixture(slurp("arcs_weight2_head_in_gamma.txt")), c.head_in_gamma).clean());
  EXPECT_TRUE(diff_arcs(parse_arc_fixture(slurp("arcs_weight2_tail_outside_s3.txt")), c.tail_outside_s3).clean());
  EXPECT_TRUE(diff_arcs(parse_arc_fixture(slurp("arcs_weight2_tail_in_s3.txt")), c.tail_in_s3).clean());
  EXPECT_EQ(c.head_in_gamma.size(), 31u);
  EXPECT_EQ(c.tail_outside_s3.size(), 10u);
  EXPECT_EQ(c.tail_in_s3.size(), 12u);
  std::size_t heavy = 0;
  for (const auto& arcs : graph().out)
    for (const auto& a : arcs) heavy += a.weight >= 2;
  EXPECT_EQ(heavy, 31u + 10u + 12u);
}

TEST(CarryWalks, FromNuSequence) {
  const auto nu = nu_sequence(7, 0b1011001, 0b0110101);
  const auto walk = walk_from_carry_data(graph(), nu);
  ASSERT_EQ(walk.arcs.size(), 7u);
  std::int64_t total = 0;
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(walk.arcs[i].weight, nu.nu[i]);
    total += walk.arcs[i].weight;
  }
  EXPECT_EQ(total, nu.total);
}

TEST(CarryWalks, SweepM5) {
  const auto r = validate_carry_walks(graph(), 5, 2);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GT(r.walks, 1000u);
}

TEST(Constrained, SuccessorsRespectRules) {
  for (int i = 0; i < kVertexCount; ++i) {
    const auto v = Vertex::from_index(i);
    for (int eta : {0, 1})
      for (int omega : {-3, 0, 2}) {
        for (const auto& s : constrained_successors(graph(), WalkState{v, eta, omega})) {
          EXPECT_FALSE(contains(gamma_set(), s.arc.head));
          EXPECT_EQ(s.arc.head.y, eta);
          EXPECT_GE(s.arc.weight, omega);
          EXPECT_EQ(s.next.previous_third, std::optional<int>(v.z));
          EXPECT_EQ(s.next.deficit, std::optional<int>(omega + 1 - s.arc.weight));
        }
      }
  }
}

TEST(Sbs, ExampleExpansion) {
  const auto tree = expand_sbs(graph(), WalkState{Vertex{}, 0, 1});
  EXPECT_EQ(lines(tree.render()),
            (std::set<std::string>{"(0,0,0,0)-(0,1)->(1,0,0,0)-(0,1)->(0,0,0,0)-(0,1)->*",
                                   "(0,0,0,0)-(0,1)->(0,0,1,0)-(0,1)->(0,0,0,0)-(1,1)->(0,1,0,0)-(0,1)->(0,0,0,0)-(0,1)->*"}));
  std::set<std::string> names;
  for (const auto& v : tree.vertices()) names.insert(v.str());
  EXPECT_EQ(names, (std::set<std::string>{"0,0,0,0", "0,0,1,0", "0,1,0,0", "1,0,0,0"}));
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const auto& parent = tree.nodes[tree.nodes[i].parent];
    EXPECT_NE(std::find(parent.children.begin(), parent.children.end(), static_cast<int>(i)), parent.children.end());
  }
}

TEST(Sbs, GammaStartRejected) {
  EXPECT_THROW(expand_sbs(graph(), WalkState{gamma_set()[0], std::nullopt, 0}), std::invalid_argument);
}

TEST(Sbs, ReachableSetsContained) {
  const auto checks = reachable_set_checks(graph());
  EXPECT_EQ(checks.size(), 12u);
  for (const auto& c : checks) EXPECT_TRUE(c.contained) << c.bound << " omega=" << c.omega;
}

TEST(WalkSearch, NoClosedWalksShort) {
  WalkSearchOptions opts;
  opts.max_length = 16;
  EXPECT_TRUE(search_closed_P_walks(graph(), opts).walks.empty());
}

TEST(WalkSearch, ControlWitnessesBreakPropertyThree) {
  WalkSearchOptions opts;
  opts.max_length = 12;
  opts.enforce_property3 = false;
  const auto r = search_closed_P_walks(graph(), opts);
  ASSERT_FALSE(r.walks.empty());
  for (const auto& w : r.walks) {
    EXPECT_TRUE(is_closed_P_walk(w, false));
    EXPECT_FALSE(is_closed_P_walk(w, true));
  }
}

TEST(WalkSearch, RejectsBadLength) {
  WalkSearchOptions opts;
  opts.max_length = 1;
  EXPECT_THROW(search_closed_P_walks(graph(), opts), std::invalid_argument);
}

TEST(WalkSearch, HandWalkChecks) {
  ClosedWalk loop{{Vertex{}, Vertex{}}, {0}};
  EXPECT_TRUE(is_closed_P_walk(loop, false));
  ClosedWalk open{{Vertex{}, Vertex{1, 0, 0, 0}}, {1}};
  EXPECT_FALSE(is_closed_P_walk(open, false));
}

}  // namespace
}  // namespace tripec
