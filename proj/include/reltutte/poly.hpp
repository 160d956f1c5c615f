#pragma once

// Exact multivariate Laurent polynomials with rational coefficients.
//
// Variables are identified by a kind plus an optional tag (the color name for
// the per-color weight families, the index for the component-count family).
// Negative exponents are only permitted for the invertible kinds; everything
// else is an ordinary polynomial variable. Terms are kept in a canonical
// order so that printing, hashing and equality are deterministic.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reltutte/errors.hpp"

namespace reltutte {

// Order of enumerators fixes the global variable order used by the canonical
// term order and by the printer.
enum class VarKind : int {
  LowerX,  // x[color] (inactive internal weight), invertible
  LowerY,  // y[color] (inactive external weight), invertible
  UpperX,  // X[color] (active internal weight)
  UpperY,  // Y[color] (active external weight)
  Alpha,   // alpha[k], reserved component-count family
  LocX,    // Xloc, the localization variable paired with X[...]
  LocY,    // Yloc, the localization variable paired with Y[...]
  D,       // d, free-loop weight, invertible
  A,       // A, bracket variable, invertible
  Q,       // q, quarter-power Jones variable, invertible
  PlainX,  // x, ordinary Tutte / chromatic variable
  PlainY,  // y, ordinary Tutte variable
  PlainZ,  // z, rank-counting variable
  Kappa,   // kappa, cluster-count variable
};

struct VarId {
  VarKind kind = VarKind::PlainX;
  std::string tag;  // color name / alpha index; empty for untagged kinds

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

inline bool var_kind_tagged(VarKind k) {
  switch (k) {
    case VarKind::LowerX:
    case VarKind::LowerY:
    case VarKind::UpperX:
    case VarKind::UpperY:
    case VarKind::Alpha:
      return true;
    default:
      return false;
  }
}

inline bool var_invertible(const VarId& v) {
  switch (v.kind) {
    case VarKind::LowerX:
    case VarKind::LowerY:
    case VarKind::D:
    case VarKind::A:
    case VarKind::Q:
      return true;
    default:
      return false;
  }
}

inline VarId make_var(VarKind kind, const std::string& tag = "") {
  if (var_kind_tagged(kind) && tag.empty())
    throw Error("variable of this kind requires a nonempty tag");
  if (!var_kind_tagged(kind) && !tag.empty())
    throw Error("variable of this kind does not take a tag");
  return VarId{kind, tag};
}

inline VarId var_x(const std::string& color) { return make_var(VarKind::LowerX, color); }
inline VarId var_y(const std::string& color) { return make_var(VarKind::LowerY, color); }
inline VarId var_X(const std::string& color) { return make_var(VarKind::UpperX, color); }
inline VarId var_Y(const std::string& color) { return make_var(VarKind::UpperY, color); }
inline VarId var_alpha(int k) { return make_var(VarKind::Alpha, std::to_string(k)); }
inline VarId var_Xloc() { return make_var(VarKind::LocX); }
inline VarId var_Yloc() { return make_var(VarKind::LocY); }
inline VarId var_d() { return make_var(VarKind::D); }
inline VarId var_A() { return make_var(VarKind::A); }
inline VarId var_q() { return make_var(VarKind::Q); }
inline VarId var_px() { return make_var(VarKind::PlainX); }
inline VarId var_py() { return make_var(VarKind::PlainY); }
inline VarId var_pz() { return make_var(VarKind::PlainZ); }
inline VarId var_kappa() { return make_var(VarKind::Kappa); }

inline std::string to_string(const VarId& v) {
  switch (v.kind) {
    case VarKind::LowerX: return "x[" + v.tag + "]";
    case VarKind::LowerY: return "y[" + v.tag + "]";
    case VarKind::UpperX: return "X[" + v.tag + "]";
    case VarKind::UpperY: return "Y[" + v.tag + "]";
    case VarKind::Alpha:  return "alpha[" + v.tag + "]";
    case VarKind::LocX:   return "Xloc";
    case VarKind::LocY:   return "Yloc";
    case VarKind::D:      return "d";
    case VarKind::A:      return "A";
    case VarKind::Q:      return "q";
    case VarKind::PlainX: return "x";
    case VarKind::PlainY: return "y";
    case VarKind::PlainZ: return "z";
    case VarKind::Kappa:  return "kappa";
  }
  throw InternalError("unhandled variable kind");
}

// A monomial is a sorted list of (variable, nonzero exponent) pairs.
using Monomial = std::vector<std::pair<VarId, int>>;

// Compares two monomials as infinite exponent vectors indexed by VarId in
// global order, lexicographically with smaller exponent first. This puts
// constants before positive powers and sorts Laurent series ascending, e.g.
// A^-3 < 1 < A < A^2.
inline int monomial_cmp(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size()) {
      if (a[i].first == b[j].first) {
        if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
        ++i;
        ++j;
      } else if (a[i].first < b[j].first) {
        return a[i].second < 0 ? -1 : 1;  // b's exponent for this var is 0
      } else {
        return b[j].second < 0 ? 1 : -1;
      }
    } else if (i < a.size()) {
      return a[i].second < 0 ? -1 : 1;
    } else {
      return b[j].second < 0 ? 1 : -1;
    }
  }
  return 0;
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return monomial_cmp(a, b) < 0;
  }
};

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, MonomialLess>;

  MultiPoly() = default;  // the zero polynomial

  static MultiPoly constant(const mpq_class& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
  }
  static MultiPoly constant(long n) { return constant(mpq_class(n)); }

  static MultiPoly var(const VarId& v, int exp = 1) {
    if (exp == 0) return constant(1);
    if (exp < 0 && !var_invertible(v))
      throw NonInvertibleSubstitution("negative exponent on non-invertible variable " +
                                      reltutte::to_string(v));
    MultiPoly p;
    p.terms_.emplace(Monomial{{v, exp}}, mpq_class(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  mpq_class constant_value() const {
    if (terms_.empty()) return mpq_class(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
  }

  // True when every coefficient is an integer.
  bool is_integral() const {
    for (const auto& [m, c] : terms_)
      if (c.get_den() != 1) return false;
    return true;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) {
    TermMap out;
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m = monomial_mul(ma, mb);
        mpq_class c = ca * cb;
        auto it = out.find(m);
        if (it == out.end()) {
          out.emplace(std::move(m), std::move(c));
        } else {
          it->second += c;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned n) const {
    MultiPoly r = constant(1);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  // Multiplicative inverse, defined only for single-term polynomials whose
  // variables may all carry negative exponents.
  MultiPoly inverse() const {
    if (terms_.size() != 1)
      throw NonInvertibleSubstitution("cannot invert a polynomial with " +
                                      std::to_string(terms_.size()) + " terms");
    const auto& [m, c] = *terms_.begin();
    for (const auto& [v, e] : m) {
      if (e > 0 && !var_invertible(v))
        throw NonInvertibleSubstitution("cannot invert non-invertible variable " +
                                        reltutte::to_string(v));
    }
    MultiPoly r;
    Monomial inv;
    inv.reserve(m.size());
    for (const auto& [v, e] : m) inv.emplace_back(v, -e);
    r.terms_.emplace(std::move(inv), mpq_class(1) / c);
    return r;
  }

  std::vector<VarId> variables() const {
    std::vector<VarId> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const;

 private:
  TermMap terms_;

  void add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend MultiPoly substitute(const MultiPoly&, const std::map<VarId, MultiPoly>&);
};

// Applies the ring homomorphism sending each mapped variable to its image and
// fixing everything else. A variable occurring with a negative exponent may
// only map to an invertible single-term value.
inline MultiPoly substitute(const MultiPoly& p, const std::map<VarId, MultiPoly>& map) {
  MultiPoly out;
  for (const auto& [mono, coeff] : p.terms()) {
    MultiPoly term = MultiPoly::constant(coeff);
    for (const auto& [v, e] : mono) {
      auto it = map.find(v);
      if (it == map.end()) {
        term *= MultiPoly::var(v, e);
      } else if (e >= 0) {
        term *= it->second.pow(static_cast<unsigned>(e));
      } else {
        term *= it->second.inverse().pow(static_cast<unsigned>(-e));
      }
    }
    out += term;
  }
  return out;
}

// Rewrites every active weight through its inactive counterpart:
//   X[c] -> x[c] + Xloc*y[c],   Y[c] -> y[c] + Yloc*x[c].
// The input must not already mention Xloc or Yloc.
inline MultiPoly localize(const MultiPoly& p) {
  std::map<VarId, MultiPoly> map;
  for (const VarId& v : p.variables()) {
    if (v.kind == VarKind::LocX || v.kind == VarKind::LocY)
      throw Error("polynomial already mentions a localization variable");
    if (v.kind == VarKind::UpperX)
      map[v] = MultiPoly::var(var_x(v.tag)) +
               MultiPoly::var(var_Xloc()) * MultiPoly::var(var_y(v.tag));
    if (v.kind == VarKind::UpperY)
      map[v] = MultiPoly::var(var_y(v.tag)) +
               MultiPoly::var(var_Yloc()) * MultiPoly::var(var_x(v.tag));
  }
  if (map.empty()) return p;
  return substitute(p, map);
}

namespace detail {

// Renders one product of powers, e.g. "3/2*x[+]^2*d^-1"; the coefficient is
// printed without sign and elided when it is 1 and the monomial is nonempty.
inline std::string term_body(const Monomial& m, const mpq_class& abs_coeff,
                             const std::string& var_override = "",
                             int exp_divisor = 1) {
  std::ostringstream os;
  bool printed = false;
  if (m.empty() || abs_coeff != 1) {
    os << abs_coeff.get_str();
    printed = true;
  }
  for (const auto& [v, e] : m) {
    if (printed) os << "*";
    os << (var_override.empty() ? to_string(v) : var_override);
    int shown = e / exp_divisor;
    if (shown != 1) os << "^" << shown;
    printed = true;
  }
  return os.str();
}

inline void append_signed_term(std::ostringstream& os, bool first, const Monomial& m,
                               const mpq_class& c, const std::string& var_override = "",
                               int exp_divisor = 1) {
  mpq_class a = c < 0 ? mpq_class(-c) : c;
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  os << term_body(m, a, var_override, exp_divisor);
}

}  // namespace detail

inline std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    detail::append_signed_term(os, first, m, c);
    first = false;
  }
  return os.str();
}

inline std::string to_string(const MultiPoly& p) { return p.to_string(); }

namespace detail {

// Minimal recursive parser for the canonical text form, used for round-trip
// tests and for reading polynomial values back from tool output.
class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  MultiPoly parse() {
    MultiPoly out = parse_term(consume_sign(true));
    skip_ws();
    while (pos_ < s_.size()) {
      out += parse_term(consume_sign(false));
      skip_ws();
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw Error("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  int consume_sign(bool leading) {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a term");
    char c = s_[pos_];
    if (c == '+' || c == '-') {
      ++pos_;
      return c == '-' ? -1 : 1;
    }
    if (!leading) fail("expected '+' or '-' between terms");
    return 1;
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::string read_digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  int read_int() {
    skip_ws();
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') sign = -1;
      ++pos_;
    }
    return sign * std::stoi(read_digits());
  }

  std::string read_name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a variable name");
    return s_.substr(start, pos_ - start);
  }

  VarId read_var() {
    std::string name = read_name();
    std::optional<VarKind> tagged;
    if (name == "x") tagged = VarKind::LowerX;
    else if (name == "y") tagged = VarKind::LowerY;
    else if (name == "X") tagged = VarKind::UpperX;
    else if (name == "Y") tagged = VarKind::UpperY;
    else if (name == "alpha") tagged = VarKind::Alpha;
    if (tagged && pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
      if (pos_ >= s_.size()) fail("unterminated variable tag");
      std::string tag = s_.substr(start, pos_ - start);
      ++pos_;
      if (tag.empty()) fail("empty variable tag");
      return VarId{*tagged, tag};
    }
    if (name == "Xloc") return var_Xloc();
    if (name == "Yloc") return var_Yloc();
    if (name == "d") return var_d();
    if (name == "A") return var_A();
    if (name == "q") return var_q();
    if (name == "x") return var_px();
    if (name == "y") return var_py();
    if (name == "z") return var_pz();
    if (name == "kappa") return var_kappa();
    fail("unknown variable '" + name + "'");
  }

  MultiPoly parse_factor() {
    VarId v = read_var();
    int exp = 1;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      exp = read_int();
    }
    return MultiPoly::var(v, exp);
  }

  MultiPoly parse_term(int sign) {
    mpq_class coeff(sign);
    bool saw_factor = false;
    if (peek_digit()) {
      std::string num = read_digits();
      std::string den = "1";
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        den = read_digits();
      }
      coeff *= mpq_class(num + "/" + den);
      coeff.canonicalize();
      saw_factor = true;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        saw_factor = false;
      }
    }
    MultiPoly out = MultiPoly::constant(coeff);
    if (!saw_factor) {
      out *= parse_factor();
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        out *= parse_factor();
        skip_ws();
      }
    }
    return out;
  }
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text) {
  return detail::PolyParser(text).parse();
}

}  // namespace reltutte
