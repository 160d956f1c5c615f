#pragma once

// Relative activities, edge weights, and the contracting-set expansion of the
// relative Tutte polynomial.
//
// Every regular edge of a split earns one of four weights:
//   in C, internally active      -> X[color]
//   in C, internally inactive    -> x[color]
//   in D, externally active      -> Y[color]
//   in D, externally inactive    -> y[color]
// and the zero edges contribute only through the graph invariant applied to
// the residual graph (D deleted, then C contracted). Both activity tests are
// computed in two independent ways and cross-checked on every call: the
// direct cycle/cocycle definition, and the "becomes a bridge / becomes a
// loop after the larger labels are processed" reformulation.

#include <functional>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "reltutte/graph.hpp"
#include "reltutte/poly.hpp"

namespace reltutte {

enum class ActivityTag {
  InternallyActive,
  InternallyInactive,
  ExternallyActive,
  ExternallyInactive,
};

// Edge id -> label. Zero edges carry 0, regular edges distinct positive ints.
using ProperLabeling = std::map<int, int>;

// A graph invariant used to evaluate the residual graph of each split.
using PsiMap = std::function<MultiPoly(const ColoredMultigraph&)>;

inline ProperLabeling default_labeling(const ColoredMultigraph& g, const std::set<int>& H) {
  ProperLabeling phi;
  int next = 1;
  for (const Edge& e : g.edges()) phi[e.id] = H.count(e.id) ? 0 : next++;
  return phi;
}

inline ProperLabeling labeling_from_graph(const ColoredMultigraph& g, const std::set<int>& H) {
  validate_labeling(g, H);
  ProperLabeling phi;
  for (const Edge& e : g.edges()) phi[e.id] = e.label;
  return phi;
}

inline void validate_proper(const ColoredMultigraph& g, const std::set<int>& H,
                            const ProperLabeling& phi) {
  std::set<int> seen;
  for (const Edge& e : g.edges()) {
    auto it = phi.find(e.id);
    if (it == phi.end())
      throw BadLabeling("edge " + std::to_string(e.id) + " has no label");
    if (H.count(e.id)) {
      if (it->second != 0)
        throw BadLabeling("zero edge " + std::to_string(e.id) + " must be labeled 0");
    } else {
      if (it->second <= 0)
        throw BadLabeling("regular edge " + std::to_string(e.id) + " needs a positive label");
      if (!seen.insert(it->second).second)
        throw BadLabeling("duplicate label " + std::to_string(it->second));
    }
  }
}

namespace detail {

inline void validate_split(const ColoredMultigraph& g, const ContractingSplit& s) {
  std::set<int> all;
  for (int id : s.contracting) all.insert(id);
  for (int id : s.deleting) all.insert(id);
  for (int id : s.zero) all.insert(id);
  if (all.size() != s.contracting.size() + s.deleting.size() + s.zero.size())
    throw BadSplit("split parts overlap");
  if (all.size() != g.edge_count()) throw BadSplit("split does not cover the edge set");
  for (int id : all) g.edge(id);
  std::set<int> H(s.zero.begin(), s.zero.end());
  std::set<int> C(s.contracting.begin(), s.contracting.end());
  if (!is_contracting_set(g, H, C)) throw BadSplit("C is not a contracting set");
}

inline int label_of(const ProperLabeling& phi, int id) {
  auto it = phi.find(id);
  if (it == phi.end()) throw BadLabeling("edge " + std::to_string(id) + " has no label");
  return it->second;
}

// Direct reading: e must bridge (V, C∪H); it is active iff its label is
// smaller than that of every D-edge joining the two components which e's
// removal separates.
inline bool internally_active_direct(const ColoredMultigraph& g, const ContractingSplit& s,
                                     const ProperLabeling& phi, int e) {
  UnionFind uf(g.vertices());
  for (int id : s.contracting)
    if (id != e) uf.unite(g.edge(id).u, g.edge(id).v);
  for (int id : s.zero) {
    const Edge& z = g.edge(id);
    if (!z.is_loop()) uf.unite(z.u, z.v);
  }
  const Edge& ee = g.edge(e);
  if (ee.is_loop() || uf.find(ee.u) == uf.find(ee.v)) return false;  // not a bridge of C∪H
  int su = uf.find(ee.u), sv = uf.find(ee.v);
  for (int id : s.deleting) {
    const Edge& f = g.edge(id);
    if (f.is_loop()) continue;
    int a = uf.find(f.u), b = uf.find(f.v);
    bool crosses = (a == su && b == sv) || (a == sv && b == su);
    if (crosses && label_of(phi, id) < label_of(phi, e)) return false;
  }
  return true;
}

// Reformulation: e becomes a bridge once every D-edge with a larger label is
// deleted.
inline bool internally_active_indirect(const ColoredMultigraph& g, const ContractingSplit& s,
                                       const ProperLabeling& phi, int e) {
  ColoredMultigraph h = g;
  for (int id : s.deleting)
    if (label_of(phi, id) > label_of(phi, e)) h = delete_edge(h, id);
  return is_bridge(h, e);
}

// Direct reading: f closes a (unique) cycle with C and carries the smallest
// label on it. Loops close the one-edge cycle and are always active.
inline bool externally_active_direct(const ColoredMultigraph& g, const ContractingSplit& s,
                                     const ProperLabeling& phi, int f) {
  const Edge& fe = g.edge(f);
  if (fe.is_loop()) return true;
  // Walk the C-forest from fe.u to fe.v.
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (edge, other)
  for (int id : s.contracting) {
    const Edge& e = g.edge(id);
    adj[e.u].emplace_back(id, e.v);
    adj[e.v].emplace_back(id, e.u);
  }
  std::map<int, std::pair<int, int>> parent;  // vertex -> (via edge, from)
  std::vector<int> stack = {fe.u};
  parent[fe.u] = {-1, fe.u};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == fe.v) break;
    for (const auto& [id, w] : adj[v]) {
      if (parent.count(w)) continue;
      parent[w] = {id, v};
      stack.push_back(w);
    }
  }
  if (!parent.count(fe.v)) return false;  // no cycle in C∪{f}
  int lf = label_of(phi, f);
  for (int v = fe.v; v != fe.u;) {
    auto [id, from] = parent[v];
    if (label_of(phi, id) < lf) return false;
    v = from;
  }
  return true;
}

// Reformulation: f becomes a loop after every C-edge with a larger label is
// contracted.
inline bool externally_active_indirect(const ColoredMultigraph& g, const ContractingSplit& s,
                                       const ProperLabeling& phi, int f) {
  ColoredMultigraph h = g;
  for (int id : s.contracting)
    if (label_of(phi, id) > label_of(phi, f)) h = contract_edge(h, id);
  return is_loop(h, f);
}

inline bool internally_active(const ColoredMultigraph& g, const ContractingSplit& s,
                              const ProperLabeling& phi, int e) {
  bool direct = internally_active_direct(g, s, phi, e);
  if (direct != internally_active_indirect(g, s, phi, e))
    throw InternalError("internal-activity formulations disagree");
  return direct;
}

inline bool externally_active(const ColoredMultigraph& g, const ContractingSplit& s,
                              const ProperLabeling& phi, int f) {
  bool direct = externally_active_direct(g, s, phi, f);
  if (direct != externally_active_indirect(g, s, phi, f))
    throw InternalError("external-activity formulations disagree");
  return direct;
}

}  // namespace detail

inline ActivityTag internal_activity(const ColoredMultigraph& g, const ContractingSplit& s,
                                     const ProperLabeling& phi, int e) {
  detail::validate_split(g, s);
  validate_proper(g, std::set<int>(s.zero.begin(), s.zero.end()), phi);
  if (!std::binary_search(s.contracting.begin(), s.contracting.end(), e))
    throw BadSplit("edge " + std::to_string(e) + " is not in the contracting set");
  return detail::internally_active(g, s, phi, e) ? ActivityTag::InternallyActive
                                                 : ActivityTag::InternallyInactive;
}

inline ActivityTag external_activity(const ColoredMultigraph& g, const ContractingSplit& s,
                                     const ProperLabeling& phi, int f) {
  detail::validate_split(g, s);
  validate_proper(g, std::set<int>(s.zero.begin(), s.zero.end()), phi);
  if (!std::binary_search(s.deleting.begin(), s.deleting.end(), f))
    throw BadSplit("edge " + std::to_string(f) + " is not in the deleting set");
  return detail::externally_active(g, s, phi, f) ? ActivityTag::ExternallyActive
                                                 : ActivityTag::ExternallyInactive;
}

inline MultiPoly edge_weight(const ColoredMultigraph& g, const ProperLabeling& phi,
                             const ContractingSplit& s, int e) {
  const std::string& color = g.edge(e).color;
  if (std::binary_search(s.contracting.begin(), s.contracting.end(), e)) {
    return internal_activity(g, s, phi, e) == ActivityTag::InternallyActive
               ? MultiPoly::var(var_X(color))
               : MultiPoly::var(var_x(color));
  }
  if (std::binary_search(s.deleting.begin(), s.deleting.end(), e)) {
    return external_activity(g, s, phi, e) == ActivityTag::ExternallyActive
               ? MultiPoly::var(var_Y(color))
               : MultiPoly::var(var_y(color));
  }
  throw BadSplit("edge " + std::to_string(e) + " is a zero edge and carries no weight");
}

// Residual graph of a split: delete all of D, then contract all of C, both
// in increasing edge-id order (the order does not affect the result).
inline ColoredMultigraph residual_graph(const ColoredMultigraph& g, const ContractingSplit& s) {
  ColoredMultigraph h = g;
  for (int id : s.deleting) h = delete_edge(h, id);
  for (int id : s.contracting) h = contract_edge(h, id);
  return h;
}

namespace detail {

inline MultiPoly split_term(const ColoredMultigraph& g, const ContractingSplit& s,
                            const ProperLabeling& phi, const PsiMap& psi) {
  MultiPoly term = MultiPoly::constant(1);
  for (int e : s.contracting) {
    const std::string& color = g.edge(e).color;
    term *= MultiPoly::var(internally_active(g, s, phi, e) ? var_X(color) : var_x(color));
  }
  for (int f : s.deleting) {
    const std::string& color = g.edge(f).color;
    term *= MultiPoly::var(externally_active(g, s, phi, f) ? var_Y(color) : var_y(color));
  }
  return term * psi(residual_graph(g, s));
}

}  // namespace detail

// Contracting-set expansion: sum over all contracting sets of the product of
// regular-edge weights times psi of the residual graph. Each split's term is
// independent, so the sum parallelizes; canonical form makes the result
// order-independent.
inline MultiPoly relative_tutte_expansion(const ColoredMultigraph& g, const std::set<int>& H,
                                          const ProperLabeling& phi, const PsiMap& psi,
                                          int threads = 1) {
  validate_proper(g, H, phi);
  std::vector<ContractingSplit> splits = enumerate_contracting_sets(g, H);
  std::vector<MultiPoly> terms(splits.size());
  if (threads <= 1 || splits.size() < 2) {
    for (std::size_t i = 0; i < splits.size(); ++i)
      terms[i] = detail::split_term(g, splits[i], phi, psi);
  } else {
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), splits.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < splits.size(); i += workers)
            terms[i] = detail::split_term(g, splits[i], phi, psi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  MultiPoly sum;
  for (const MultiPoly& t : terms) sum += t;
  return sum;
}

}  // namespace reltutte
