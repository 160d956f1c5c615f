#pragma once

// Canonical string keys for colored multigraphs, used by the memo cache and
// by tests that compare graphs up to isomorphism.
//
// For small graphs (at most 12 non-isolated vertices) the key is a true
// canonical form: two graphs get the same key iff they are isomorphic as
// edge-colored multigraphs (respecting zero-set membership, ignoring edge
// ids and labels). It is computed by iterated color refinement followed by
// individualization, taking the lexicographically smallest encoding over the
// explored orderings. Larger graphs fall back to a literal key that still
// identifies equal graphs (same vertex ids, same colored edge multiset),
// which keeps the cache sound, merely less effective.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reltutte/graph.hpp"

namespace reltutte {

namespace detail {

struct CanonView {
  // Per non-isolated vertex: loops (effective colors, sorted) and incident
  // non-loop edges as (effective color, neighbor index).
  std::vector<std::vector<std::string>> loops;
  std::vector<std::vector<std::pair<std::string, int>>> inc;
  int isolated = 0;

  static std::string eff_color(const Edge& e, const std::set<int>& zero_set) {
    return (zero_set.count(e.id) ? "0|" : "1|") + e.color;
  }

  CanonView(const ColoredMultigraph& g, const std::set<int>& zero_set) {
    std::map<int, int> index;
    for (const Edge& e : g.edges()) {
      if (!index.count(e.u)) index[e.u] = 0;
      if (!index.count(e.v)) index[e.v] = 0;
    }
    int n = 0;
    for (auto& [v, idx] : index) idx = n++;
    isolated = static_cast<int>(g.vertex_count()) - n;
    loops.resize(n);
    inc.resize(n);
    for (const Edge& e : g.edges()) {
      std::string c = eff_color(e, zero_set);
      if (e.is_loop()) {
        loops[index[e.u]].push_back(c);
      } else {
        inc[index[e.u]].emplace_back(c, index[e.v]);
        inc[index[e.v]].emplace_back(c, index[e.u]);
      }
    }
    for (auto& l : loops) std::sort(l.begin(), l.end());
  }

  int size() const { return static_cast<int>(loops.size()); }

  // Encodes the graph under a complete vertex ordering (position[i] all
  // distinct).
  std::string encode(const std::vector<int>& position) const {
    std::vector<std::string> lines;
    for (int v = 0; v < size(); ++v) {
      for (const std::string& c : loops[v]) {
        std::ostringstream os;
        os << "L" << position[v] << "," << c;
        lines.push_back(os.str());
      }
      for (const auto& [c, w] : inc[v]) {
        if (position[v] > position[w]) continue;  // emit each edge once
        std::ostringstream os;
        os << "E" << std::min(position[v], position[w]) << ","
           << std::max(position[v], position[w]) << "," << c;
        lines.push_back(os.str());
      }
    }
    std::sort(lines.begin(), lines.end());
    std::ostringstream os;
    os << "n" << size() << "i" << isolated;
    for (const std::string& l : lines) os << ";" << l;
    return os.str();
  }
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const CanonView& view) : view_(view) {}

  std::string run() {
    std::vector<int> cls = initial_classes();
    refine(cls);
    best_.clear();
    search(cls);
    return best_;
  }

 private:
  const CanonView& view_;
  std::string best_;

  std::vector<int> initial_classes() const {
    std::vector<std::pair<std::string, int>> sig(view_.size());
    for (int v = 0; v < view_.size(); ++v) {
      std::vector<std::string> parts = view_.loops[v];
      for (const auto& [c, w] : view_.inc[v]) parts.push_back("e" + c);
      std::sort(parts.begin(), parts.end());
      std::ostringstream os;
      for (const auto& p : parts) os << p << "/";
      sig[v] = {os.str(), v};
    }
    return classes_from(sig);
  }

  template <typename Sig>
  std::vector<int> classes_from(std::vector<std::pair<Sig, int>> sig) const {
    std::sort(sig.begin(), sig.end());
    std::vector<int> cls(view_.size());
    int c = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (i > 0 && sig[i].first != sig[i - 1].first) ++c;
      cls[sig[i].second] = c;
    }
    return cls;
  }

  void refine(std::vector<int>& cls) const {
    while (true) {
      std::vector<std::pair<std::vector<std::pair<std::string, int>>, int>> sig(view_.size());
      for (int v = 0; v < view_.size(); ++v) {
        std::vector<std::pair<std::string, int>> s;
        s.emplace_back("", cls[v]);
        for (const auto& [c, w] : view_.inc[v]) s.emplace_back(c, cls[w]);
        std::sort(s.begin() + 1, s.end());
        sig[v] = {std::move(s), v};
      }
      std::vector<int> next = classes_from(std::move(sig));
      if (next == cls) return;
      cls = std::move(next);
    }
  }

  void search(std::vector<int> cls) {
    // Find the first class with more than one member.
    std::vector<std::vector<int>> members;
    for (int v = 0; v < view_.size(); ++v) {
      int c = cls[v];
      if (c >= static_cast<int>(members.size())) members.resize(c + 1);
      members[c].push_back(v);
    }
    int split = -1;
    for (std::size_t c = 0; c < members.size(); ++c)
      if (members[c].size() > 1) {
        split = static_cast<int>(c);
        break;
      }
    if (split < 0) {
      std::string enc = view_.encode(cls);
      if (best_.empty() || enc < best_) best_ = enc;
      return;
    }
    for (int v : members[split]) {
      std::vector<int> branched = cls;
      // Individualize v: give it a class of its own, below its old class.
      for (int w = 0; w < view_.size(); ++w)
        if (branched[w] >= split && w != v) ++branched[w];
      refine(branched);
      search(std::move(branched));
    }
  }
};

}  // namespace detail

inline std::string canonical_key(const ColoredMultigraph& g, const std::set<int>& zero_set = {}) {
  detail::CanonView view(g, zero_set);
  if (view.size() <= 12) return "C:" + detail::Canonicalizer(view).run();
  // Literal fallback: sound for caching (equal keys imply equal graphs up to
  // edge-id renaming), not canonical under isomorphism.
  std::vector<std::string> lines;
  for (const Edge& e : g.edges()) {
    std::ostringstream os;
    os << std::min(e.u, e.v) << "," << std::max(e.u, e.v) << ","
       << detail::CanonView::eff_color(e, zero_set);
    lines.push_back(os.str());
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream os;
  os << "L:v";
  for (int v : g.vertices()) os << v << ",";
  for (const std::string& l : lines) os << ";" << l;
  return os.str();
}

inline bool isomorphic(const ColoredMultigraph& a, const ColoredMultigraph& b,
                       const std::set<int>& zero_a = {}, const std::set<int>& zero_b = {}) {
  detail::CanonView va(a, zero_a), vb(b, zero_b);
  if (va.size() > 12 || vb.size() > 12)
    throw Error("isomorphism test limited to 12 non-isolated vertices");
  return canonical_key(a, zero_a) == canonical_key(b, zero_b);
}

}  // namespace reltutte
