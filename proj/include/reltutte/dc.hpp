#pragma once

// Deletion/contraction evaluation of the relative Tutte polynomial, with a
// canonical-key memo cache, plus ordinary Tutte evaluation (symbolic and at
// integer points).
//
// Recursion on any regular edge e of color c:
//   neither bridge nor loop:  y[c]*T(G\e) + x[c]*T(G/e)
//   bridge:                   X[c]*T(G/e)
//   loop:                     Y[c]*T(G\e)
// and once only zero edges remain, the graph invariant takes over. The edge
// choice changes intermediate terms but (after localization, or literally in
// single-color instances) not the result; a pluggable picker lets tests
// exercise arbitrary orders.

#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "reltutte/activities.hpp"
#include "reltutte/canonical.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/poly.hpp"

namespace reltutte {

// Concurrent get-or-insert map from canonical keys to finished polynomials.
// Duplicate computation is allowed; a key is only ever associated with one
// value (first write wins, later writes for the same key must be equal).
// REL_TUTTE_CACHE_LIMIT caps the entry count; once full, inserts are ignored.
class MemoCache {
 public:
  MemoCache() : limit_(limit_from_env()) {}
  explicit MemoCache(std::size_t limit) : limit_(limit) {}

  std::optional<MultiPoly> lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const std::string& key, const MultiPoly& value) {
    std::lock_guard<std::mutex> lock(mu_);
    if (map_.count(key)) return;
    if (map_.size() >= limit_) return;
    map_.emplace(key, value);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
  }
  std::size_t limit() const { return limit_; }

  static std::size_t limit_from_env() {
    const char* s = std::getenv("REL_TUTTE_CACHE_LIMIT");
    if (!s || !*s) return std::numeric_limits<std::size_t>::max();
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end) throw Error("REL_TUTTE_CACHE_LIMIT is not a number");
    return static_cast<std::size_t>(v);
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, MultiPoly> map_;
  std::size_t limit_;
};

// Chooses the next regular edge to recurse on. Receives the current graph
// and the (sorted) regular edge ids, which are never empty.
using EdgePicker = std::function<int(const ColoredMultigraph&, const std::vector<int>&)>;

// Loops first, then bridges (both multiply without branching), then the
// smallest id.
inline int default_edge_picker(const ColoredMultigraph& g, const std::vector<int>& regular) {
  for (int id : regular)
    if (g.edge(id).is_loop()) return id;
  for (int id : regular)
    if (is_bridge(g, id)) return id;
  return regular.front();
}

namespace detail {

inline MultiPoly relative_tutte_dc_impl(const ColoredMultigraph& g, const std::set<int>& H,
                                        const PsiMap& psi, MemoCache* cache,
                                        const EdgePicker& pick) {
  std::vector<int> regular;
  for (const Edge& e : g.edges())
    if (!H.count(e.id)) regular.push_back(e.id);
  if (regular.empty()) return psi(g);

  std::string key;
  if (cache) {
    key = canonical_key(g, H);
    if (auto hit = cache->lookup(key)) return *hit;
  }

  int id = pick(g, regular);
  if (!std::binary_search(regular.begin(), regular.end(), id))
    throw InternalError("edge picker returned a non-regular edge");
  const Edge& e = g.edge(id);
  MultiPoly result;
  if (e.is_loop()) {
    result = MultiPoly::var(var_Y(e.color)) *
             relative_tutte_dc_impl(delete_edge(g, id), H, psi, cache, pick);
  } else if (is_bridge(g, id)) {
    result = MultiPoly::var(var_X(e.color)) *
             relative_tutte_dc_impl(contract_edge(g, id), H, psi, cache, pick);
  } else {
    result = MultiPoly::var(var_y(e.color)) *
                 relative_tutte_dc_impl(delete_edge(g, id), H, psi, cache, pick) +
             MultiPoly::var(var_x(e.color)) *
                 relative_tutte_dc_impl(contract_edge(g, id), H, psi, cache, pick);
  }
  if (cache) cache->insert(key, result);
  return result;
}

}  // namespace detail

inline MultiPoly relative_tutte_dc(const ColoredMultigraph& g, const std::set<int>& H,
                                   const PsiMap& psi, MemoCache* cache = nullptr,
                                   const EdgePicker& pick = default_edge_picker) {
  detail::check_subset(g, H, "zero set");
  detail::regular_edges(g, H);  // zero-colored edges must all be in H
  return detail::relative_tutte_dc_impl(g, H, psi, cache, pick);
}

// Ordinary (uncolored) Tutte polynomial in the plain variables x, y.
// Disconnected graphs come out as the product over components; an edgeless
// graph is 1.
inline MultiPoly ordinary_tutte(const ColoredMultigraph& g) {
  if (g.edge_count() == 0) return MultiPoly::constant(1);
  int id = g.edges().front().id;
  if (is_loop(g, id)) return MultiPoly::var(var_py()) * ordinary_tutte(delete_edge(g, id));
  if (is_bridge(g, id)) return MultiPoly::var(var_px()) * ordinary_tutte(contract_edge(g, id));
  return ordinary_tutte(delete_edge(g, id)) + ordinary_tutte(contract_edge(g, id));
}

// Exact integer evaluation of the ordinary Tutte polynomial at (x, y).
inline mpz_class ordinary_tutte_at(const ColoredMultigraph& g, const mpz_class& x,
                                   const mpz_class& y) {
  if (g.edge_count() == 0) return 1;
  int id = g.edges().front().id;
  if (is_loop(g, id)) return y * ordinary_tutte_at(delete_edge(g, id), x, y);
  if (is_bridge(g, id)) return x * ordinary_tutte_at(contract_edge(g, id), x, y);
  return ordinary_tutte_at(delete_edge(g, id), x, y) +
         ordinary_tutte_at(contract_edge(g, id), x, y);
}

}  // namespace reltutte
