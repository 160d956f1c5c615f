#pragma once

// The shipped library of pivot-invariant graph invariants used to evaluate
// the residual graph of each contracting set, plus the zero-order count they
// build on.

#include <set>
#include <string>
#include <vector>

#include "reltutte/dc.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/poly.hpp"

namespace reltutte {

namespace detail {

inline void require_all_zero(const ColoredMultigraph& g, const std::string& who) {
  for (const Edge& e : g.edges())
    if (e.color != kZeroColor)
      throw BadColor(who + " expects only zero-colored edges, got color '" + e.color +
                     "' on edge " + std::to_string(e.id));
}

inline std::vector<ColoredMultigraph> component_subgraphs(const ColoredMultigraph& g) {
  std::vector<ColoredMultigraph> out;
  for (const std::vector<int>& comp : components(g)) {
    std::set<int> in(comp.begin(), comp.end());
    std::vector<Edge> es;
    for (const Edge& e : g.edges())
      if (in.count(e.u)) es.push_back(e);
    out.emplace_back(comp, es);
  }
  return out;
}

}  // namespace detail

// Number of state circles a zero-edge residual graph stands for: per
// connected component, log2|T(-1,-1)| + 1, summed over components. The
// magnitude of T(-1,-1) is always a power of two for graphs (it counts the
// bicycle space), so the error branch is a broken-invariant signal.
inline int zero_order(const ColoredMultigraph& g) {
  detail::require_all_zero(g, "zero_order");
  int order = 0;
  for (const ColoredMultigraph& comp : detail::component_subgraphs(g)) {
    mpz_class t = ordinary_tutte_at(comp, -1, -1);
    mpz_class a = abs(t);
    if (a == 0 || mpz_popcount(a.get_mpz_t()) != 1)
      throw NotPowerOfTwo("|T(-1,-1)| = " + a.get_str() + " is not a power of two");
    int log2 = static_cast<int>(mpz_sizeinbase(a.get_mpz_t(), 2)) - 1;
    order += log2 + 1;
  }
  return order;
}

inline MultiPoly psi_knot(const ColoredMultigraph& g) {
  return MultiPoly::var(var_d(), zero_order(g) - 1);
}

inline MultiPoly psi_one(const ColoredMultigraph&) { return MultiPoly::constant(1); }

inline MultiPoly psi_alpha(const ColoredMultigraph& g) {
  return MultiPoly::var(var_alpha(component_count(g)));
}

inline MultiPoly psi_chromatic(const ColoredMultigraph& g) {
  detail::require_all_zero(g, "psi_chromatic");
  MultiPoly sign = MultiPoly::constant(g.edge_count() % 2 == 0 ? 1 : -1);
  return sign * (-MultiPoly::var(var_px())).pow(static_cast<unsigned>(component_count(g)));
}

inline MultiPoly psi_rank_z(const ColoredMultigraph& g) {
  return MultiPoly::var(var_pz(), rank(g));
}

// Treats the residual graph as a colored Tutte instance of its own (empty
// zero set), so relative Tutte computations nest. The residue must carry
// named colors on every edge.
inline MultiPoly psi_nested_tutte(const ColoredMultigraph& g) {
  for (const Edge& e : g.edges())
    if (e.color == kZeroColor)
      throw BadColor("nested evaluation needs named colors on the zero set, edge " +
                     std::to_string(e.id) + " is zero-colored");
  return relative_tutte_dc(g, {}, psi_one);
}

inline PsiMap psi_by_name(const std::string& name) {
  if (name == "knot") return psi_knot;
  if (name == "one") return psi_one;
  if (name == "alpha") return psi_alpha;
  if (name == "chromatic") return psi_chromatic;
  if (name == "rank-z") return psi_rank_z;
  if (name == "nested-tutte") return psi_nested_tutte;
  throw Error("unknown graph invariant '" + name +
              "' (expected knot|one|alpha|chromatic|rank-z|nested-tutte)");
}

}  // namespace reltutte
