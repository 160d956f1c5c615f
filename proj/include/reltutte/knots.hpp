#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "reltutte/dc.hpp"
#include "reltutte/errors.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/poly.hpp"
#include "reltutte/psi.hpp"

namespace reltutte {

// ---------------------------------------------------------------------------
// Face graphs
// ---------------------------------------------------------------------------

// A face graph of a virtual link diagram: regular edges carry the crossing
// sign as their color ("+" or "-"), zero edges stand for virtual crossings.
// The writhe cannot be recovered from the unoriented graph, so it travels as
// separate metadata.
struct FaceGraph {
  ColoredMultigraph graph;
  long long writhe = 0;
};

// Every edge color of a face graph must be "+", "-", or the zero color.
inline void validate_face_colors(const ColoredMultigraph& g) {
  for (const auto& e : g.edges()) {
    if (e.color != "+" && e.color != "-" && e.color != kZeroColor) {
      throw BadColor("face graph edge " + std::to_string(e.id) + " has color '" + e.color +
                     "'; expected '+', '-', or '" + std::string(kZeroColor) + "'");
    }
  }
}

// The substitution that turns the sign-colored relative Tutte polynomial into
// the Kauffman bracket: weights become powers of A and d becomes -(A^2+A^-2).
inline std::map<VarId, MultiPoly> bracket_substitution() {
  MultiPoly A = MultiPoly::var(var_A());
  MultiPoly Ainv = MultiPoly::var(var_A(), -1);
  std::map<VarId, MultiPoly> sub;
  sub[var_X("+")] = -MultiPoly::var(var_A(), -3);
  sub[var_X("-")] = -MultiPoly::var(var_A(), 3);
  sub[var_Y("+")] = -MultiPoly::var(var_A(), 3);
  sub[var_Y("-")] = -MultiPoly::var(var_A(), -3);
  sub[var_x("+")] = A;
  sub[var_x("-")] = Ainv;
  sub[var_y("+")] = Ainv;
  sub[var_y("-")] = A;
  sub[var_d()] = -(MultiPoly::var(var_A(), 2) + MultiPoly::var(var_A(), -2));
  return sub;
}

// Kauffman bracket of the diagram described by a face graph: the relative
// Tutte polynomial with the circle-counting block invariant, specialized to
// the bracket variable A.
inline MultiPoly bracket_from_face_graph(const FaceGraph& fg, MemoCache* cache = nullptr) {
  validate_face_colors(fg.graph);
  std::set<int> H = detail::default_zero_set(fg.graph);
  MultiPoly t = relative_tutte_dc(fg.graph, H, psi_knot, cache);
  return substitute(t, bracket_substitution());
}

// Writhe-normalized bracket in the quarter-power variable q (t = q^4):
// multiply by (-A^-3)^writhe, then substitute A -> q^-1.
inline MultiPoly jones_from_bracket(const MultiPoly& bracket, long long writhe) {
  MultiPoly factor = MultiPoly::constant(1);
  MultiPoly unit = writhe >= 0 ? -MultiPoly::var(var_A(), -3) : -MultiPoly::var(var_A(), 3);
  long long n = writhe >= 0 ? writhe : -writhe;
  for (long long i = 0; i < n; ++i) factor *= unit;
  std::map<VarId, MultiPoly> sub;
  sub[var_A()] = MultiPoly::var(var_q(), -1);
  return substitute(factor * bracket, sub);
}

// Rendering of a Jones polynomial: in t when every q-exponent is a multiple
// of four, otherwise verbatim in q (virtual links can have genuine quarter
// powers).
struct JonesDisplay {
  std::string text;
  bool in_t = false;
};

inline JonesDisplay jones_display(const MultiPoly& jones_q) {
  bool whole = true;
  for (const auto& [m, c] : jones_q.terms()) {
    for (const auto& [v, e] : m) {
      if (v != var_q()) throw InternalError("jones polynomial mentions " + to_string(v));
      if (e % 4 != 0) whole = false;
    }
  }
  if (!whole) return {jones_q.to_string(), false};
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : jones_q.terms()) {
    detail::append_signed_term(os, first, m, c, "t", 4);
    first = false;
  }
  if (first) os << "0";
  return {os.str(), true};
}

// ---------------------------------------------------------------------------
// PD codes (the independent state-sum oracle's input)
// ---------------------------------------------------------------------------

// One record of a PD file: a classical crossing with its sign, a virtual
// crossing, or a crossing-free circle.  Arc slots of a crossing are listed
// counterclockwise starting from the incoming under-strand, so the strands
// passing through are {slot 0, slot 2} and {slot 1, slot 3}.
enum class PdKind { Classical, Virtual, Circle };

struct PdEntry {
  PdKind kind;
  std::array<int, 4> arcs{};  // Circle uses arcs[0] only
  int sign = 0;               // +1 or -1 for classical crossings
  int line = 0;               // 1-based source line, for diagnostics
};

struct VirtualDiagram {
  std::vector<PdEntry> entries;
};

namespace detail {

inline int parse_arc_token(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MalformedDiagram("pd line " + std::to_string(line) + ": bad arc id '" + tok + "'");
  }
}

inline void validate_diagram(const VirtualDiagram& d) {
  if (d.entries.empty()) throw MalformedDiagram("diagram has no strands");
  std::map<int, int> uses;
  for (const auto& en : d.entries) {
    int slots = en.kind == PdKind::Circle ? 1 : 4;
    for (int i = 0; i < slots; ++i) uses[en.arcs[i]] += en.kind == PdKind::Circle ? 2 : 1;
  }
  for (const auto& [arc, n] : uses) {
    if (n != 2) {
      throw MalformedDiagram("arc " + std::to_string(arc) + " occurs " + std::to_string(n) +
                             " times; every arc must occur exactly twice");
    }
  }
}

}  // namespace detail

// Parses the PD text format: one record per line, `X a b c d sign` for a
// classical crossing, `V a b c d` for a virtual one, `O a` for a circle with
// no crossings.  Blank lines and `#` comments are skipped.
inline VirtualDiagram parse_pd(std::istream& in) {
  VirtualDiagram diag;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    PdEntry en;
    en.line = lineno;
    if (op == "X") {
      if (toks.size() != 5) {
        throw MalformedDiagram("pd line " + std::to_string(lineno) +
                               ": expected 'X a b c d sign'");
      }
      en.kind = PdKind::Classical;
      for (int i = 0; i < 4; ++i) en.arcs[i] = detail::parse_arc_token(toks[i], lineno);
      if (toks[4] == "+") {
        en.sign = 1;
      } else if (toks[4] == "-") {
        en.sign = -1;
      } else {
        throw MalformedDiagram("pd line " + std::to_string(lineno) + ": bad sign '" + toks[4] +
                               "'; expected '+' or '-'");
      }
    } else if (op == "V") {
      if (toks.size() != 4) {
        throw MalformedDiagram("pd line " + std::to_string(lineno) + ": expected 'V a b c d'");
      }
      en.kind = PdKind::Virtual;
      for (int i = 0; i < 4; ++i) en.arcs[i] = detail::parse_arc_token(toks[i], lineno);
    } else if (op == "O") {
      if (toks.size() != 1) {
        throw MalformedDiagram("pd line " + std::to_string(lineno) + ": expected 'O a'");
      }
      en.kind = PdKind::Circle;
      en.arcs[0] = detail::parse_arc_token(toks[0], lineno);
    } else {
      throw MalformedDiagram("pd line " + std::to_string(lineno) + ": unknown record '" + op +
                             "'");
    }
    diag.entries.push_back(en);
  }
  detail::validate_diagram(diag);
  return diag;
}

inline VirtualDiagram parse_pd(const std::string& text) {
  std::istringstream in(text);
  return parse_pd(in);
}

inline VirtualDiagram load_pd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open PD file: " + path);
  return parse_pd(in);
}

// Signed classical-crossing count.
inline long long diagram_writhe(const VirtualDiagram& d) {
  long long w = 0;
  for (const auto& en : d.entries) {
    if (en.kind == PdKind::Classical) w += en.sign;
  }
  return w;
}

namespace detail {

// Collects the distinct arc ids of a diagram in sorted order.
inline std::vector<int> diagram_arcs(const VirtualDiagram& d) {
  std::set<int> arcs;
  for (const auto& en : d.entries) {
    int slots = en.kind == PdKind::Circle ? 1 : 4;
    for (int i = 0; i < slots; ++i) arcs.insert(en.arcs[i]);
  }
  return {arcs.begin(), arcs.end()};
}

}  // namespace detail

// Number of closed strand components: both classical and virtual crossings
// pass strands straight through (slots 0-2 and 1-3).
inline int diagram_component_count(const VirtualDiagram& d) {
  detail::validate_diagram(d);
  detail::UnionFind uf(detail::diagram_arcs(d));
  for (const auto& en : d.entries) {
    if (en.kind == PdKind::Circle) continue;
    uf.unite(en.arcs[0], en.arcs[2]);
    uf.unite(en.arcs[1], en.arcs[3]);
  }
  return uf.classes();
}

namespace detail {

// Bracket contribution of one smoothing state.  With crossing slots listed
// counterclockwise from the incoming under-strand, the regions swept by
// rotating the over-strand counterclockwise onto the under-strand lie between
// slots 1-2 and 3-0, so the A-smoothing joins those slot pairs; the
// B-smoothing joins slots 0-1 and 2-3.  Bit i of `state` picks the
// B-smoothing of the i-th classical crossing.
inline MultiPoly state_weight(const VirtualDiagram& d, const std::vector<int>& arcs,
                              std::uint64_t state) {
  UnionFind uf(arcs);
  long long a_count = 0, b_count = 0;
  size_t bit = 0;
  for (const auto& en : d.entries) {
    switch (en.kind) {
      case PdKind::Circle:
        break;
      case PdKind::Virtual:
        uf.unite(en.arcs[0], en.arcs[2]);
        uf.unite(en.arcs[1], en.arcs[3]);
        break;
      case PdKind::Classical:
        if (state >> bit & 1) {
          uf.unite(en.arcs[0], en.arcs[1]);
          uf.unite(en.arcs[2], en.arcs[3]);
          ++b_count;
        } else {
          uf.unite(en.arcs[1], en.arcs[2]);
          uf.unite(en.arcs[3], en.arcs[0]);
          ++a_count;
        }
        ++bit;
        break;
    }
  }
  long long loops = uf.classes();
  MultiPoly w = MultiPoly::var(var_A(), static_cast<int>(a_count - b_count));
  MultiPoly dval = -(MultiPoly::var(var_A(), 2) + MultiPoly::var(var_A(), -2));
  for (long long i = 1; i < loops; ++i) w *= dval;
  return w;
}

}  // namespace detail

// Kauffman bracket by direct state sum: over all 2^n smoothings of the n
// classical crossings, A^(#A - #B) * d^(#loops - 1) with d = -(A^2 + A^-2).
// Independent of the face-graph pipeline; used as its oracle.
inline MultiPoly state_sum_bracket(const VirtualDiagram& d, int threads = 1) {
  detail::validate_diagram(d);
  std::vector<int> arcs = detail::diagram_arcs(d);
  size_t n_classical = 0;
  for (const auto& en : d.entries) {
    if (en.kind == PdKind::Classical) ++n_classical;
  }
  if (n_classical >= 63) throw Error("too many classical crossings for the state sum");
  std::uint64_t states = std::uint64_t{1} << n_classical;
  if (threads < 1) threads = 1;
  std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), states);
  std::vector<MultiPoly> partial(nthreads);
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<std::thread> pool;
  for (std::uint64_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        MultiPoly acc;
        for (std::uint64_t s = t; s < states; s += nthreads) {
          acc += detail::state_weight(d, arcs, s);
        }
        partial[t] = acc;
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  MultiPoly total;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace reltutte
