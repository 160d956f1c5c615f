#pragma once

// Edge-colored multigraphs (loops and parallel edges allowed) with the
// structural operations the engines need: deletion, contraction, bridge and
// loop tests, components and rank, block decomposition, vertex pivot, and
// the contracting-set machinery for a distinguished zero-edge subgraph.
//
// Graphs are immutable values; every operation returns a new graph. Edge ids
// are stable across deletion and contraction so that edge ids in C/D/H sets
// never rely on structural matching.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reltutte/errors.hpp"

namespace reltutte {

inline const std::string kZeroColor = "0";

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  std::string color;
  int label = 0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(const std::vector<int>& ids) {
    for (int id : ids) parent_[id] = id;
  }
  int find(int a) {
    auto it = parent_.find(a);
    if (it == parent_.end()) throw InternalError("union-find: unknown element");
    while (it->second != a) {
      a = it->second;
      it = parent_.find(a);
    }
    return a;
  }
  // Returns true when the two elements were in different classes.
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent_[std::max(ra, rb)] = std::min(ra, rb);
    return true;
  }
  int classes() const {
    int n = 0;
    for (const auto& [k, v] : parent_)
      if (k == v) ++n;
    return n;
  }

 private:
  std::map<int, int> parent_;
};

}  // namespace detail

class ColoredMultigraph {
 public:
  ColoredMultigraph() = default;

  ColoredMultigraph(std::vector<int> vertices, std::vector<Edge> edges) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    vertices_ = std::move(vertices);
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (i > 0 && edges[i - 1].id == e.id)
        throw Error("duplicate edge id " + std::to_string(e.id));
      if (!has_vertex_in(vertices_, e.u) || !has_vertex_in(vertices_, e.v))
        throw Error("edge " + std::to_string(e.id) + " references a missing vertex");
      if (e.color.empty()) throw BadColor("edge " + std::to_string(e.id) + " has an empty color");
    }
    edges_ = std::move(edges);
  }

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(int v) const { return has_vertex_in(vertices_, v); }
  bool has_edge(int id) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{id},
                              [](const Edge& a, const Edge& b) { return a.id < b.id; });
  }
  const Edge& edge(int id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, int key) { return e.id < key; });
    if (it == edges_.end() || it->id != id)
      throw UnknownEdge("no edge with id " + std::to_string(id));
    return *it;
  }

  std::vector<int> edge_ids() const {
    std::vector<int> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back(e.id);
    return out;
  }

  friend bool operator==(const ColoredMultigraph&, const ColoredMultigraph&) = default;

 private:
  static bool has_vertex_in(const std::vector<int>& vs, int v) {
    return std::binary_search(vs.begin(), vs.end(), v);
  }

  std::vector<int> vertices_;  // sorted, unique
  std::vector<Edge> edges_;    // sorted by id
};

inline ColoredMultigraph delete_edge(const ColoredMultigraph& g, int id) {
  g.edge(id);  // throws UnknownEdge
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (const Edge& e : g.edges())
    if (e.id != id) edges.push_back(e);
  return ColoredMultigraph(g.vertices(), std::move(edges));
}

// Merges the endpoints of a non-loop edge; the smaller vertex id survives.
inline ColoredMultigraph contract_edge(const ColoredMultigraph& g, int id) {
  const Edge& e = g.edge(id);
  if (e.is_loop()) throw ContractLoop("cannot contract loop edge " + std::to_string(id));
  int keep = std::min(e.u, e.v), drop = std::max(e.u, e.v);
  std::vector<int> vertices;
  vertices.reserve(g.vertex_count() - 1);
  for (int v : g.vertices())
    if (v != drop) vertices.push_back(v);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (const Edge& f : g.edges()) {
    if (f.id == id) continue;
    Edge nf = f;
    if (nf.u == drop) nf.u = keep;
    if (nf.v == drop) nf.v = keep;
    edges.push_back(nf);
  }
  return ColoredMultigraph(std::move(vertices), std::move(edges));
}

inline bool is_loop(const ColoredMultigraph& g, int id) { return g.edge(id).is_loop(); }

inline std::vector<std::vector<int>> components(const ColoredMultigraph& g) {
  detail::UnionFind uf(g.vertices());
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
  std::map<int, std::vector<int>> byRoot;
  for (int v : g.vertices()) byRoot[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(byRoot.size());
  for (auto& [root, vs] : byRoot) out.push_back(std::move(vs));
  return out;
}

inline int component_count(const ColoredMultigraph& g) {
  detail::UnionFind uf(g.vertices());
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
  return uf.classes();
}

inline int rank(const ColoredMultigraph& g) {
  return static_cast<int>(g.vertex_count()) - component_count(g);
}

inline bool is_bridge(const ColoredMultigraph& g, int id) {
  const Edge& e = g.edge(id);
  if (e.is_loop()) return false;
  return component_count(delete_edge(g, id)) > component_count(g);
}

namespace detail {

// Depth-first block decomposition (biconnected components). Loops become
// their own single-edge blocks; isolated vertices yield no block.
struct BlockFinder {
  const ColoredMultigraph& g;
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (edge id, other end)
  std::map<int, int> disc, low;
  std::set<int> visited_edges;
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> blocks;
  int timer = 0;

  explicit BlockFinder(const ColoredMultigraph& graph) : g(graph) {
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) {
        blocks.push_back({e.id});
        continue;
      }
      adj[e.u].emplace_back(e.id, e.v);
      adj[e.v].emplace_back(e.id, e.u);
    }
    for (int v : g.vertices())
      if (!disc.count(v) && adj.count(v)) dfs(v);
  }

  void dfs(int u) {
    disc[u] = low[u] = ++timer;
    for (const auto& [eid, w] : adj[u]) {
      if (visited_edges.count(eid)) continue;
      visited_edges.insert(eid);
      edge_stack.push_back(eid);
      if (!disc.count(w)) {
        dfs(w);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<int> block;
          while (true) {
            int top = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(top);
            if (top == eid) break;
          }
          std::sort(block.begin(), block.end());
          blocks.push_back(std::move(block));
        }
      } else {
        low[u] = std::min(low[u], disc[w]);
      }
    }
  }
};

}  // namespace detail

// Returns the subgraph spanned by the given edges plus their endpoints
// (and no other vertices).
inline ColoredMultigraph edge_subgraph(const ColoredMultigraph& g, const std::vector<int>& ids) {
  std::vector<int> vertices;
  std::vector<Edge> edges;
  for (int id : ids) {
    const Edge& e = g.edge(id);
    edges.push_back(e);
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  return ColoredMultigraph(std::move(vertices), std::move(edges));
}

inline std::vector<ColoredMultigraph> blocks(const ColoredMultigraph& g) {
  detail::BlockFinder finder(g);
  std::sort(finder.blocks.begin(), finder.blocks.end());
  std::vector<ColoredMultigraph> out;
  out.reserve(finder.blocks.size());
  for (const auto& ids : finder.blocks) out.push_back(edge_subgraph(g, ids));
  return out;
}

namespace detail {

// A branch at a vertex is one maximal piece of the graph hanging off it:
// either a loop at the vertex, or a component of g minus the vertex together
// with the edges connecting it to the vertex. Distinct blocks incident to
// the vertex always land in distinct branches.
struct Branch {
  std::vector<int> incident_edges;  // edges touching the pivot vertex
  std::vector<int> interior_edges;  // edges not touching the pivot vertex
  std::vector<int> vertices;        // vertices other than the pivot vertex
};

inline std::vector<Branch> branches_at(const ColoredMultigraph& g, int v) {
  std::vector<Branch> out;
  std::vector<int> rest_vertices;
  for (int w : g.vertices())
    if (w != v) rest_vertices.push_back(w);
  UnionFind uf(rest_vertices);
  for (const Edge& e : g.edges()) {
    if (e.u == v && e.v == v) {
      out.push_back(Branch{{e.id}, {}, {}});
    } else if (e.u != v && e.v != v) {
      uf.unite(e.u, e.v);
    }
  }
  std::map<int, std::size_t> root_to_branch;
  for (const Edge& e : g.edges()) {
    if (e.is_loop() || (e.u != v && e.v != v)) continue;
    int other = e.u == v ? e.v : e.u;
    int root = uf.find(other);
    auto it = root_to_branch.find(root);
    if (it == root_to_branch.end()) {
      root_to_branch[root] = out.size();
      out.push_back(Branch{{e.id}, {}, {}});
    } else {
      out[it->second].incident_edges.push_back(e.id);
    }
  }
  for (const Edge& e : g.edges()) {
    if (e.is_loop() || e.u == v || e.v == v) continue;
    auto it = root_to_branch.find(uf.find(e.u));
    if (it != root_to_branch.end()) out[it->second].interior_edges.push_back(e.id);
  }
  for (int w : rest_vertices) {
    auto it = root_to_branch.find(uf.find(w));
    if (it != root_to_branch.end()) out[it->second].vertices.push_back(w);
  }
  return out;
}

}  // namespace detail

// Detaches the selected branches at `cutpoint` and re-glues them at
// `attachment`. `moved_incident` must be exactly the set of cutpoint-incident
// edges of a nonempty proper subset of the branches; the attachment vertex
// must stay reachable from the cutpoint after the detach (so the component
// count is preserved). Preserves the multiset of blocks.
inline ColoredMultigraph vertex_pivot(const ColoredMultigraph& g, int cutpoint,
                                      const std::set<int>& moved_incident, int attachment) {
  if (!g.has_vertex(cutpoint))
    throw NotACutVertex("no vertex " + std::to_string(cutpoint));
  std::vector<detail::Branch> branches = detail::branches_at(g, cutpoint);
  if (branches.size() < 2)
    throw NotACutVertex("vertex " + std::to_string(cutpoint) +
                        " does not separate its incident blocks");

  std::set<int> moved_vertices;
  std::set<int> chosen;  // incident edges of the selected branches
  bool any_moved = false, any_kept = false;
  for (const detail::Branch& b : branches) {
    bool take = moved_incident.count(b.incident_edges.front()) > 0;
    for (int id : b.incident_edges) {
      if ((moved_incident.count(id) > 0) != take)
        throw BadPartition("side selection splits a single branch at the cut vertex");
      if (take) chosen.insert(id);
    }
    if (take) {
      any_moved = true;
      moved_vertices.insert(b.vertices.begin(), b.vertices.end());
    } else {
      any_kept = true;
    }
  }
  if (chosen != moved_incident)
    throw BadPartition("side selection mentions edges not incident to the cut vertex");
  if (!any_moved || !any_kept)
    throw BadPartition("side selection must move a nonempty proper subset of branches");

  if (!g.has_vertex(attachment))
    throw InvalidAttachment("no vertex " + std::to_string(attachment));
  if (moved_vertices.count(attachment))
    throw InvalidAttachment("attachment vertex lies in the detached part");
  // The attachment must be in the cut vertex's component once the selected
  // branches are detached: that component consists of the cut vertex and the
  // kept branches.
  bool reachable = attachment == cutpoint;
  for (const detail::Branch& b : branches) {
    if (reachable) break;
    if (moved_incident.count(b.incident_edges.front())) continue;
    reachable = std::find(b.vertices.begin(), b.vertices.end(), attachment) != b.vertices.end();
  }
  if (!reachable)
    throw InvalidAttachment("attachment vertex is not reachable from the cut vertex");

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    Edge ne = e;
    if (moved_incident.count(e.id)) {
      if (ne.u == cutpoint) ne.u = attachment;
      if (ne.v == cutpoint) ne.v = attachment;
    }
    edges.push_back(ne);
  }
  return ColoredMultigraph(g.vertices(), std::move(edges));
}

struct ContractingSplit {
  std::vector<int> contracting;  // C, sorted
  std::vector<int> deleting;     // D, sorted
  std::vector<int> zero;         // H, sorted
};

namespace detail {

inline std::set<int> default_zero_set(const ColoredMultigraph& g) {
  std::set<int> H;
  for (const Edge& e : g.edges())
    if (e.color == kZeroColor) H.insert(e.id);
  return H;
}

// The regular edges are everything outside H. Every zero-colored edge must
// be inside H; H edges may carry named colors (they are then visible only to
// the graph invariant applied to the residual graph).
inline std::vector<int> regular_edges(const ColoredMultigraph& g, const std::set<int>& H) {
  std::vector<int> out;
  for (const Edge& e : g.edges()) {
    if (H.count(e.id)) continue;
    if (e.color == kZeroColor)
      throw BadPartition("zero-colored edge " + std::to_string(e.id) +
                         " is not in the zero set");
    out.push_back(e.id);
  }
  return out;
}

inline void check_subset(const ColoredMultigraph& g, const std::set<int>& s,
                         const std::string& what) {
  for (int id : s)
    if (!g.has_edge(id)) throw BadPartition(what + " mentions unknown edge " + std::to_string(id));
}

}  // namespace detail

// True iff C is acyclic and deleting D = E \ (C ∪ H) does not increase the
// component count. Checked two independent ways: directly, and by growing a
// spanning forest of C ∪ H that starts from C and must reach full rank.
inline bool is_contracting_set(const ColoredMultigraph& g, const std::set<int>& H,
                               const std::set<int>& C) {
  detail::check_subset(g, H, "zero set");
  detail::check_subset(g, C, "contracting set");
  for (int id : C)
    if (H.count(id)) throw BadPartition("edge " + std::to_string(id) + " is in both C and H");
  detail::regular_edges(g, H);  // validates zero-colored edges all live in H

  // Direct reading: C acyclic, component count preserved without D.
  detail::UnionFind acyclic(g.vertices());
  bool c_forest = true;
  for (int id : C) {
    const Edge& e = g.edge(id);
    if (e.is_loop() || !acyclic.unite(e.u, e.v)) {
      c_forest = false;
      break;
    }
  }
  bool direct = false;
  if (c_forest) {
    detail::UnionFind keep(g.vertices());
    for (const Edge& e : g.edges())
      if (C.count(e.id) || H.count(e.id)) keep.unite(e.u, e.v);
    direct = keep.classes() == component_count(g);
  }

  // Basis reading: extend the forest C greedily inside C ∪ H; C is a
  // contracting set iff the result is a maximal forest of the whole graph.
  bool basis = false;
  if (c_forest) {
    detail::UnionFind forest(g.vertices());
    int size = 0;
    for (int id : C) {
      const Edge& e = g.edge(id);
      forest.unite(e.u, e.v);
      ++size;
    }
    for (int id : H) {
      const Edge& e = g.edge(id);
      if (!e.is_loop() && forest.unite(e.u, e.v)) ++size;
    }
    basis = size == rank(g);
  }

  if (direct != basis)
    throw InternalError("contracting-set characterizations disagree");
  return direct;
}

// All contracting sets, ordered by size and then lexicographically by sorted
// edge ids.
inline std::vector<ContractingSplit> enumerate_contracting_sets(const ColoredMultigraph& g,
                                                                const std::set<int>& H) {
  std::vector<int> regular = detail::regular_edges(g, H);
  std::size_t n = regular.size();
  if (n > 30) throw Error("too many regular edges to enumerate");
  std::vector<std::vector<int>> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::set<int> C;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) C.insert(regular[i]);
    if (is_contracting_set(g, H, C)) found.emplace_back(C.begin(), C.end());
  }
  std::sort(found.begin(), found.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<ContractingSplit> out;
  out.reserve(found.size());
  for (const auto& C : found) {
    ContractingSplit s;
    s.contracting = C;
    s.zero.assign(H.begin(), H.end());
    for (int id : regular)
      if (!std::binary_search(C.begin(), C.end(), id)) s.deleting.push_back(id);
    out.push_back(std::move(s));
  }
  return out;
}

// Checks the labeling discipline: zero-set edges carry label 0, all other
// labels are positive and pairwise distinct.
inline void validate_labeling(const ColoredMultigraph& g, const std::set<int>& H) {
  std::set<int> seen;
  for (const Edge& e : g.edges()) {
    if (H.count(e.id)) {
      if (e.label != 0)
        throw BadLabeling("zero edge " + std::to_string(e.id) + " must be labeled 0");
    } else {
      if (e.label <= 0)
        throw BadLabeling("regular edge " + std::to_string(e.id) +
                          " needs a positive label");
      if (!seen.insert(e.label).second)
        throw BadLabeling("duplicate label " + std::to_string(e.label));
    }
  }
}

}  // namespace reltutte
