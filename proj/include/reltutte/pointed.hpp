#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "reltutte/dc.hpp"
#include "reltutte/errors.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/poly.hpp"
#include "reltutte/psi.hpp"

namespace reltutte {

namespace detail {

// Graphic rank of an edge subset over the full vertex set of g.
inline int subset_rank(const ColoredMultigraph& g, const std::vector<int>& subset) {
  UnionFind uf(g.vertices());
  int rank = 0;
  for (int id : subset) {
    const Edge& e = g.edge(id);
    if (uf.unite(e.u, e.v)) ++rank;
  }
  return rank;
}

inline void check_enumerable(size_t n, const char* what) {
  if (n > 30) throw Error(std::string(what) + ": more than 30 edges to enumerate");
}

}  // namespace detail

// Three-variable Tutte polynomial of g pointed by the edge set A, by direct
// summation: over all X inside E\A, the term
// (x-1)^(r(E) - r(X u A)) * (y-1)^(|X| - r(X)) * z^(r(X u A) - r(X)).
inline MultiPoly set_pointed_direct(const ColoredMultigraph& g, const std::set<int>& A) {
  detail::check_subset(g, A, "pointed set");
  std::vector<int> rest;
  for (const Edge& e : g.edges()) {
    if (!A.count(e.id)) rest.push_back(e.id);
  }
  detail::check_enumerable(rest.size(), "set-pointed summation");
  std::vector<int> base(A.begin(), A.end());
  int r_full = detail::subset_rank(g, g.edge_ids());
  MultiPoly xm1 = MultiPoly::var(var_px()) - MultiPoly::constant(1);
  MultiPoly ym1 = MultiPoly::var(var_py()) - MultiPoly::constant(1);
  MultiPoly total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
    std::vector<int> X;
    for (size_t i = 0; i < rest.size(); ++i) {
      if (mask >> i & 1) X.push_back(rest[i]);
    }
    int r_x = detail::subset_rank(g, X);
    std::vector<int> XA = X;
    XA.insert(XA.end(), base.begin(), base.end());
    int r_xa = detail::subset_rank(g, XA);
    MultiPoly term = xm1.pow(static_cast<unsigned>(r_full - r_xa)) *
                     ym1.pow(static_cast<unsigned>(X.size() - r_x)) *
                     MultiPoly::var(var_pz(), r_xa - r_x);
    total += term;
  }
  return total;
}

// The same polynomial through the relative-Tutte engine: recolor E\A with a
// single color, treat A as the zero subgraph, evaluate residues by z^rank,
// then forget the activity split (x_c, y_c -> 1; X_c -> x, Y_c -> y).
inline MultiPoly set_pointed_via_relative(const ColoredMultigraph& g, const std::set<int>& A,
                                          MemoCache* cache = nullptr) {
  detail::check_subset(g, A, "pointed set");
  const std::string color = "e";
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    bool zero = A.count(e.id) > 0;
    edges.push_back({e.id, e.u, e.v, zero ? kZeroColor : color, 0});
  }
  ColoredMultigraph recolored(g.vertices(), std::move(edges));
  MultiPoly t = relative_tutte_dc(recolored, A, psi_rank_z, cache);
  std::map<VarId, MultiPoly> sub;
  sub[var_x(color)] = MultiPoly::constant(1);
  sub[var_y(color)] = MultiPoly::constant(1);
  sub[var_X(color)] = MultiPoly::var(var_px());
  sub[var_Y(color)] = MultiPoly::var(var_py());
  return substitute(t, sub);
}

// Cluster generating function: each edge survives independently with its
// exact rational probability; Z is the expectation of kappa^(#components).
inline MultiPoly random_cluster_Z(const ColoredMultigraph& g,
                                  const std::map<int, mpq_class>& p_raw) {
  std::map<int, mpq_class> p = p_raw;
  for (auto& [id, prob] : p) prob.canonicalize();
  for (const Edge& e : g.edges()) {
    auto it = p.find(e.id);
    if (it == p.end())
      throw Error("no survival probability for edge " + std::to_string(e.id));
    if (it->second < 0 || it->second > 1)
      throw Error("survival probability of edge " + std::to_string(e.id) +
                  " is outside [0, 1]");
  }
  if (p.size() != g.edge_count()) {
    for (const auto& [id, prob] : p) g.edge(id);  // reports the unknown edge
  }
  std::vector<int> ids = g.edge_ids();
  detail::check_enumerable(ids.size(), "cluster summation");
  MultiPoly total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    mpq_class weight = 1;
    detail::UnionFind uf(g.vertices());
    int components = static_cast<int>(g.vertex_count());
    for (size_t i = 0; i < ids.size(); ++i) {
      const mpq_class& pe = p.at(ids[i]);
      if (mask >> i & 1) {
        weight *= pe;
        const Edge& e = g.edge(ids[i]);
        if (uf.unite(e.u, e.v)) --components;
      } else {
        weight *= 1 - pe;
      }
    }
    if (weight == 0) continue;
    total += MultiPoly::constant(weight) * MultiPoly::var(var_kappa(), components);
  }
  return total;
}

}  // namespace reltutte
