#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "reltutte/canonical.hpp"
#include "reltutte/graph.hpp"
#include "testutil.hpp"

using namespace reltutte;

namespace {

ColoredMultigraph make(std::vector<int> vs, std::vector<Edge> es) {
  return ColoredMultigraph(std::move(vs), std::move(es));
}

ColoredMultigraph triangle(const std::string& c = "+") {
  return make({1, 2, 3}, {{1, 1, 2, c}, {2, 2, 3, c}, {3, 3, 1, c}});
}

// Two triangles sharing vertex 3.
ColoredMultigraph bowtie() {
  return make({1, 2, 3, 4, 5}, {{1, 1, 2, "+"},
                                {2, 2, 3, "+"},
                                {3, 3, 1, "+"},
                                {4, 3, 4, "+"},
                                {5, 4, 5, "+"},
                                {6, 5, 3, "+"}});
}

std::vector<std::string> block_keys(const ColoredMultigraph& g) {
  std::vector<std::string> keys;
  for (const ColoredMultigraph& b : blocks(g)) keys.push_back(canonical_key(b));
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(make({1}, {{1, 1, 2, "+"}}), Error);
  CHECK_THROWS_AS(make({1, 2}, {{1, 1, 2, "+"}, {1, 2, 1, "-"}}), Error);
  CHECK_THROWS_AS(make({1, 2}, {{1, 1, 2, ""}}), BadColor);
  ColoredMultigraph g = make({2, 1, 1}, {{1, 1, 2, "+"}});
  CHECK(g.vertices() == std::vector<int>{1, 2});
}

TEST_CASE("delete_edge") {
  ColoredMultigraph pair = make({1, 2}, {{1, 1, 2, "+"}, {2, 1, 2, "0"}});
  ColoredMultigraph d = delete_edge(pair, 1);
  CHECK(d.edge_count() == 1);
  CHECK(d.edge(2).color == "0");
  CHECK(d.vertex_count() == 2);

  ColoredMultigraph withLoop = make({1}, {{1, 1, 1, "+"}});
  CHECK(delete_edge(withLoop, 1).edge_count() == 0);

  ColoredMultigraph bridge = make({1, 2}, {{1, 1, 2, "+"}});
  ColoredMultigraph iso2 = delete_edge(bridge, 1);
  CHECK(component_count(iso2) == 2);
  CHECK_THROWS_AS(delete_edge(bridge, 9), UnknownEdge);
}

TEST_CASE("contract_edge") {
  ColoredMultigraph tri = triangle();
  ColoredMultigraph c = contract_edge(tri, 1);
  CHECK(c.vertex_count() == 2);
  CHECK(c.edge_count() == 2);
  CHECK(c.edge(2).u != c.edge(2).v);
  CHECK(c.edge(3).u != c.edge(3).v);
  // Parallel pair between the merged vertex and vertex 3.
  CHECK(isomorphic(c, make({1, 2}, {{1, 1, 2, "+"}, {2, 1, 2, "+"}})));

  ColoredMultigraph path = make({1, 2, 3}, {{1, 1, 2, "+"}, {2, 2, 3, "+"}});
  CHECK(isomorphic(contract_edge(path, 1), make({1, 2}, {{1, 1, 2, "+"}})));

  ColoredMultigraph pair = make({1, 2}, {{1, 1, 2, "+"}, {2, 1, 2, "+"}});
  ColoredMultigraph looped = contract_edge(pair, 1);
  CHECK(looped.vertex_count() == 1);
  CHECK(looped.edge(2).is_loop());

  CHECK_THROWS_AS(contract_edge(looped, 2), ContractLoop);
  CHECK_THROWS_AS(contract_edge(pair, 7), UnknownEdge);
}

TEST_CASE("is_bridge and is_loop") {
  ColoredMultigraph bridge = make({1, 2}, {{1, 1, 2, "+"}});
  CHECK(is_bridge(bridge, 1));
  CHECK_FALSE(is_loop(bridge, 1));

  ColoredMultigraph loop = make({1}, {{1, 1, 1, "+"}});
  CHECK(is_loop(loop, 1));
  CHECK_FALSE(is_bridge(loop, 1));

  for (int id : {1, 2, 3}) CHECK_FALSE(is_bridge(triangle(), id));
  CHECK_THROWS_AS(is_bridge(bridge, 3), UnknownEdge);
}

TEST_CASE("components and rank") {
  ColoredMultigraph edgeless = make({1, 2, 3}, {});
  CHECK(components(edgeless).size() == 3);
  CHECK(rank(edgeless) == 0);

  CHECK(components(triangle()).size() == 1);
  CHECK(rank(triangle()) == 2);

  ColoredMultigraph two = make({1, 2, 3, 4}, {{1, 1, 2, "+"}, {2, 3, 4, "+"}});
  auto comps = components(two);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{1, 2});
  CHECK(comps[1] == std::vector<int>{3, 4});
  CHECK(rank(two) == 2);
}

TEST_CASE("blocks") {
  CHECK(blocks(bowtie()).size() == 2);
  CHECK(blocks(make({1, 2}, {{1, 1, 2, "+"}})).size() == 1);

  ColoredMultigraph pendant = make({1, 2, 3, 4},
                                   {{1, 1, 2, "+"}, {2, 2, 3, "+"}, {3, 3, 1, "+"}, {4, 3, 4, "+"}});
  CHECK(blocks(pendant).size() == 2);

  // Loops are their own blocks; a parallel pair is one block.
  ColoredMultigraph mixed = make({1, 2}, {{1, 1, 1, "+"}, {2, 1, 2, "+"}, {3, 1, 2, "+"}});
  CHECK(blocks(mixed).size() == 2);
  CHECK(blocks(make({1}, {})).empty());
}

TEST_CASE("vertex_pivot moves a bowtie triangle to an outer vertex") {
  ColoredMultigraph g = bowtie();
  // Move the triangle {1,2,3} (incident edges 2 and 3 at the center) onto
  // vertex 4 of the other triangle.
  ColoredMultigraph p = vertex_pivot(g, 3, {2, 3}, 4);
  CHECK(component_count(p) == component_count(g));
  CHECK(block_keys(p) == block_keys(g));
  // The result chains the triangles at vertex 4: {1,2,4} and {3,4,5}. Two
  // triangles sharing one vertex are again a bowtie, so the isomorphism
  // class is unchanged here; the pivot still physically moved the block.
  ColoredMultigraph path2 = make({1, 2, 3, 4, 5}, {{1, 1, 2, "+"},
                                                   {2, 2, 4, "+"},
                                                   {3, 4, 1, "+"},
                                                   {4, 3, 4, "+"},
                                                   {5, 4, 5, "+"},
                                                   {6, 5, 3, "+"}});
  CHECK(p == path2);
  CHECK(isomorphic(p, g));

  // Pivot back: vertex 4 is now the cut vertex.
  ColoredMultigraph back = vertex_pivot(p, 4, {2, 3}, 3);
  CHECK(isomorphic(back, g));
  CHECK(back == g);
}

TEST_CASE("vertex_pivot can change the isomorphism class with three blocks") {
  // Path 1-2-3-4; move the leaf edge at 2 onto vertex 3: a star arises.
  ColoredMultigraph path = make({1, 2, 3, 4}, {{1, 1, 2, "+"}, {2, 2, 3, "+"}, {3, 3, 4, "+"}});
  ColoredMultigraph star = vertex_pivot(path, 2, {1}, 3);
  CHECK(isomorphic(star, make({1, 2, 3, 4},
                              {{1, 1, 3, "+"}, {2, 2, 3, "+"}, {3, 3, 4, "+"}})));
  CHECK_FALSE(isomorphic(star, path));
  CHECK(block_keys(star) == block_keys(path));
  ColoredMultigraph back = vertex_pivot(star, 3, {1}, 2);
  CHECK(isomorphic(back, path));
}

TEST_CASE("vertex_pivot relocates loops") {
  ColoredMultigraph g = make({1, 2}, {{1, 1, 1, "0"}, {2, 1, 2, "+"}});
  ColoredMultigraph p = vertex_pivot(g, 1, {1}, 2);
  CHECK(p.edge(1).u == 2);
  CHECK(p.edge(1).v == 2);
  CHECK(isomorphic(p, make({1, 2}, {{1, 2, 2, "0"}, {2, 1, 2, "+"}}), {1}, {1}));
  CHECK(block_keys(p) == block_keys(g));
}

TEST_CASE("vertex_pivot validates its inputs") {
  ColoredMultigraph g = bowtie();
  CHECK_THROWS_AS(vertex_pivot(g, 1, {1}, 4), NotACutVertex);   // not a cut vertex
  CHECK_THROWS_AS(vertex_pivot(g, 99, {1}, 4), NotACutVertex);  // no such vertex
  CHECK_THROWS_AS(vertex_pivot(g, 3, {2}, 4), BadPartition);    // splits one branch
  CHECK_THROWS_AS(vertex_pivot(g, 3, {}, 4), BadPartition);
  CHECK_THROWS_AS(vertex_pivot(g, 3, {2, 3, 4, 6}, 4), BadPartition);  // moves every branch
  CHECK_THROWS_AS(vertex_pivot(g, 3, {2, 3, 7}, 4), BadPartition);
  CHECK_THROWS_AS(vertex_pivot(g, 3, {2, 3}, 99), InvalidAttachment);
  CHECK_THROWS_AS(vertex_pivot(g, 3, {2, 3}, 1), InvalidAttachment);  // inside moved part
  // Attaching back at the cut vertex itself is the identity pivot.
  CHECK(vertex_pivot(g, 3, {2, 3}, 3) == g);
}

TEST_CASE("vertex_pivot keeps block multisets on random separable graphs") {
  int done = 0;
  while (done < 30) {
    ColoredMultigraph g = testutil::random_graph(6, testutil::rand_int(3, 8), {"+", "-", "0"});
    for (int v : g.vertices()) {
      auto branches = detail::branches_at(g, v);
      if (branches.size() < 2) continue;
      std::set<int> moved(branches[0].incident_edges.begin(), branches[0].incident_edges.end());
      int attach = v;
      if (!branches[1].vertices.empty()) attach = branches[1].vertices.front();
      ColoredMultigraph p = vertex_pivot(g, v, moved, attach);
      CHECK(block_keys(p) == block_keys(g));
      CHECK(component_count(p) == component_count(g));
      ++done;
      break;
    }
  }
}

TEST_CASE("canonical keys decide isomorphism") {
  // Same triangle with different ids and vertex names.
  ColoredMultigraph t1 = triangle();
  ColoredMultigraph t2 = make({7, 8, 9}, {{4, 9, 7, "+"}, {5, 8, 9, "+"}, {6, 7, 8, "+"}});
  CHECK(canonical_key(t1) == canonical_key(t2));
  // Colors matter.
  CHECK(canonical_key(t1) != canonical_key(triangle("-")));
  // A 6-cycle is not two 3-cycles (refinement alone cannot tell).
  ColoredMultigraph c6 = make({1, 2, 3, 4, 5, 6}, {{1, 1, 2, "+"},
                                                   {2, 2, 3, "+"},
                                                   {3, 3, 4, "+"},
                                                   {4, 4, 5, "+"},
                                                   {5, 5, 6, "+"},
                                                   {6, 6, 1, "+"}});
  ColoredMultigraph c33 = make({1, 2, 3, 4, 5, 6}, {{1, 1, 2, "+"},
                                                    {2, 2, 3, "+"},
                                                    {3, 3, 1, "+"},
                                                    {4, 4, 5, "+"},
                                                    {5, 5, 6, "+"},
                                                    {6, 6, 4, "+"}});
  CHECK(canonical_key(c6) != canonical_key(c33));
  // Parallel pair vs. two disjoint edges.
  CHECK(canonical_key(make({1, 2}, {{1, 1, 2, "+"}, {2, 1, 2, "+"}})) !=
        canonical_key(make({1, 2, 3, 4}, {{1, 1, 2, "+"}, {2, 3, 4, "+"}})));
  // Loop multiplicity.
  CHECK(canonical_key(make({1}, {{1, 1, 1, "+"}})) !=
        canonical_key(make({1}, {{1, 1, 1, "+"}, {2, 1, 1, "+"}})));
  // Zero-set membership is part of the structure.
  ColoredMultigraph e1 = make({1, 2}, {{1, 1, 2, "+"}});
  CHECK(canonical_key(e1, {}) != canonical_key(e1, {1}));
  // Isolated vertices count.
  CHECK(canonical_key(make({1, 2}, {})) != canonical_key(make({1, 2, 3}, {})));
  CHECK(canonical_key(make({1, 2}, {})) == canonical_key(make({5, 9}, {})));
}

TEST_CASE("contract and delete commute on disjoint edges") {
  for (int i = 0; i < 40; ++i) {
    ColoredMultigraph g = testutil::random_graph(5, 7, {"+", "-"});
    std::vector<int> ids = g.edge_ids();
    int a = ids[static_cast<std::size_t>(testutil::rand_int(0, 6))];
    int b = ids[static_cast<std::size_t>(testutil::rand_int(0, 6))];
    if (a == b || g.edge(a).is_loop()) continue;
    ColoredMultigraph g1 = delete_edge(contract_edge(g, a), b);
    ColoredMultigraph g2 = contract_edge(delete_edge(g, b), a);
    CHECK(isomorphic(g1, g2));
  }
}

TEST_CASE("labeling validation") {
  ColoredMultigraph g = make({1, 2, 3}, {{1, 1, 2, "+", 1}, {2, 2, 3, "-", 2}, {3, 3, 1, "0", 0}});
  CHECK_NOTHROW(validate_labeling(g, {3}));
  ColoredMultigraph dup = make({1, 2, 3}, {{1, 1, 2, "+", 1}, {2, 2, 3, "-", 1}});
  CHECK_THROWS_AS(validate_labeling(dup, {}), BadLabeling);
  ColoredMultigraph zeroed = make({1, 2}, {{1, 1, 2, "+", 0}});
  CHECK_THROWS_AS(validate_labeling(zeroed, {}), BadLabeling);
  ColoredMultigraph labeledZero = make({1, 2}, {{1, 1, 2, "0", 3}});
  CHECK_THROWS_AS(validate_labeling(labeledZero, {1}), BadLabeling);
}
