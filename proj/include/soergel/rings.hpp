#pragma once

// Exact coefficient arithmetic: quantum numbers (one- and two-colored),
// Laurent polynomials in v, the minimal polynomials Q_m / P_m, quotient
// rings with canonical normal forms, fraction fields, and numeric
// specializations.  Every scalar in the system is a RingElem over some
// RingSpec.

#include "common.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

namespace soergel {

// ---------------------------------------------------------------------------
// Sparse polynomial payloads over at most two scalar variables.
// Exponent slot 0 is d (or v, or x), slot 1 is y.  Laurent payloads may carry
// negative exponents in slot 0.
// ---------------------------------------------------------------------------

using Exp2 = std::array<int, 2>;
using PolyMap = std::map<Exp2, Rational>;

inline PolyMap pm_const(const Rational& c) {
  PolyMap p;
  if (c != 0) p[{0, 0}] = c;
  return p;
}
inline PolyMap pm_one() { return pm_const(1); }
inline PolyMap pm_var(int slot, int e = 1) {
  PolyMap p;
  Exp2 x{0, 0};
  x[slot] = e;
  p[x] = 1;
  return p;
}
inline bool pm_is_zero(const PolyMap& p) { return p.empty(); }
inline bool pm_is_const(const PolyMap& p) {
  return p.empty() || (p.size() == 1 && p.begin()->first == Exp2{0, 0});
}
inline Rational pm_const_value(const PolyMap& p) {
  if (p.empty()) return 0;
  auto it = p.find({0, 0});
  return it == p.end() ? Rational(0) : it->second;
}

inline void pm_add_term(PolyMap& p, const Exp2& e, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline PolyMap pm_add(const PolyMap& a, const PolyMap& b) {
  PolyMap r = a;
  for (const auto& [e, c] : b) pm_add_term(r, e, c);
  return r;
}
inline PolyMap pm_neg(const PolyMap& a) {
  PolyMap r = a;
  for (auto& [e, c] : r) c = -c;
  return r;
}
inline PolyMap pm_sub(const PolyMap& a, const PolyMap& b) { return pm_add(a, pm_neg(b)); }
inline PolyMap pm_scale(const PolyMap& a, const Rational& c) {
  PolyMap r;
  if (c == 0) return r;
  for (const auto& [e, v] : a) r[e] = v * c;
  return r;
}
inline PolyMap pm_mul(const PolyMap& a, const PolyMap& b) {
  PolyMap r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b)
      pm_add_term(r, {ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
  return r;
}
inline PolyMap pm_pow(PolyMap a, int n) {
  PolyMap r = pm_one();
  while (n > 0) {
    if (n & 1) r = pm_mul(r, a);
    a = pm_mul(a, a);
    n >>= 1;
  }
  return r;
}
inline int pm_total_degree(const PolyMap& p) {
  int d = 0;
  for (const auto& [e, c] : p) d = std::max(d, e[0] + e[1]);
  return d;
}

// Leading term in descending deg-lex (total degree, then exponent of slot 0).
inline std::pair<Exp2, Rational> pm_leading(const PolyMap& p) {
  auto best = p.begin();
  for (auto it = std::next(p.begin()); it != p.end(); ++it) {
    int db = best->first[0] + best->first[1], di = it->first[0] + it->first[1];
    if (di > db || (di == db && it->first[0] > best->first[0])) best = it;
  }
  return {best->first, best->second};
}

// Exact multivariate division; nullopt when b does not divide a.
inline std::optional<PolyMap> pm_divexact(const PolyMap& a, const PolyMap& b) {
  if (pm_is_zero(b)) return std::nullopt;
  PolyMap rem = a, quot;
  auto [eb, cb] = pm_leading(b);
  while (!rem.empty()) {
    auto [er, cr] = pm_leading(rem);
    Exp2 q{er[0] - eb[0], er[1] - eb[1]};
    if (q[0] < 0 || q[1] < 0) return std::nullopt;
    Rational qc = cr / cb;
    PolyMap t;
    t[q] = qc;
    quot = pm_add(quot, t);
    rem = pm_sub(rem, pm_mul(t, b));
  }
  return quot;
}

// Dense univariate view (slot 0 only), ascending coefficients.
inline std::vector<Rational> pm_to_dense(const PolyMap& p) {
  std::vector<Rational> v;
  for (const auto& [e, c] : p) {
    if (e[1] != 0 || e[0] < 0) throw Error("not an ordinary univariate polynomial");
    if ((size_t)e[0] >= v.size()) v.resize(e[0] + 1, Rational(0));
    v[e[0]] = c;
  }
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}
inline PolyMap pm_from_dense(const std::vector<Rational>& v) {
  PolyMap p;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) p[{(int)i, 0}] = v[i];
  return p;
}

inline std::vector<Rational> uni_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  if (b.empty()) throw Error("univariate remainder by zero");
  while (a.size() >= b.size()) {
    Rational q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}
inline std::vector<Rational> uni_quot(std::vector<Rational> a, const std::vector<Rational>& b) {
  std::vector<Rational> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !b.empty()) {
    Rational c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return q;
}
// gcd via a primitive pseudo-remainder sequence over Z (rational-coefficient
// Euclid suffers catastrophic coefficient growth).
inline std::vector<Rational> uni_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  auto primz = [](std::vector<Rational> v) {
    std::vector<BigInt> z;
    BigInt l = 1;
    for (const auto& c : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    BigInt g = 0;
    z.reserve(v.size());
    for (const auto& c : v)
      z.push_back(boost::multiprecision::numerator(c) * (l / boost::multiprecision::denominator(c)));
    for (const auto& c : z) g = boost::multiprecision::gcd(g, c);
    if (g != 0)
      for (auto& c : z) c /= g;
    return z;
  };
  if (a.empty() || b.empty()) {
    auto& nz = a.empty() ? b : a;
    if (nz.empty()) return {};
    Rational lead = nz.back();
    for (auto& c : nz) c /= lead;
    return nz;
  }
  std::vector<BigInt> u = primz(std::move(a)), v = primz(std::move(b));
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    // pseudo-remainder of u by v, content-stripped
    std::vector<BigInt> r = u;
    const BigInt lv = v.back();
    while (r.size() >= v.size()) {
      BigInt lr = r.back();
      size_t off = r.size() - v.size();
      for (auto& c : r) c *= lv;
      for (size_t i = 0; i < v.size(); ++i) r[off + i] -= lr * v[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    BigInt g = 0;
    for (const auto& c : r) g = boost::multiprecision::gcd(g, c);
    if (g != 0)
      for (auto& c : r) c /= g;
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<Rational> out;
  out.reserve(u.size());
  for (size_t i = 0; i < u.size(); ++i) out.push_back(Rational(u[i], u.back()));
  return out;
}

// Scale to integer coefficients with content 1 and positive leading
// coefficient (deg-lex leading); the canonical representative up to units.
inline PolyMap pm_make_primitive(const PolyMap& p) {
  if (p.empty()) return p;
  BigInt lcm_den = 1, gcd_num = 0;
  for (const auto& [e, c] : p) {
    lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c));
  }
  for (const auto& [e, c] : p) {
    BigInt n = boost::multiprecision::numerator(c) * (lcm_den / boost::multiprecision::denominator(c));
    gcd_num = boost::multiprecision::gcd(gcd_num, n);
  }
  Rational scale(lcm_den, gcd_num);
  PolyMap r = pm_scale(p, scale);
  if (pm_leading(r).second < 0) r = pm_neg(r);
  return r;
}

// gcd over Q[x,y] (or Q[d]); primitive with positive leading coefficient.
inline PolyMap pm_gcd(const PolyMap& a, const PolyMap& b);

namespace detail {

// View p as a polynomial in slot 0 whose coefficients are univariate in slot 1.
inline std::vector<PolyMap> coeffs_in_main(const PolyMap& p) {
  int d = 0;
  for (const auto& [e, c] : p) d = std::max(d, e[0]);
  std::vector<PolyMap> v(d + 1);
  for (const auto& [e, c] : p) v[e[0]][{0, e[1]}] = c;
  return v;
}
inline PolyMap from_coeffs_in_main(const std::vector<PolyMap>& v) {
  PolyMap p;
  for (size_t i = 0; i < v.size(); ++i)
    for (const auto& [e, c] : v[i]) pm_add_term(p, {(int)i, e[1]}, c);
  return p;
}
inline int main_degree(const PolyMap& p) {
  int d = -1;
  for (const auto& [e, c] : p) d = std::max(d, e[0]);
  return d;
}
inline PolyMap content_in_main(const PolyMap& p) {
  PolyMap g;
  for (const auto& c : coeffs_in_main(p))
    if (!c.empty()) g = pm_gcd(g, c);
  return g;
}

}  // namespace detail

inline PolyMap pm_gcd(const PolyMap& a, const PolyMap& b) {
  if (a.empty()) return b.empty() ? b : pm_make_primitive(b);
  if (b.empty()) return pm_make_primitive(a);
  if (pm_is_const(a) || pm_is_const(b)) return pm_one();
  bool a_uni = true, b_uni = true, a_y = false, b_y = false;
  for (const auto& [e, c] : a) {
    if (e[1] != 0) a_y = true;
    if (e[0] != 0 && e[1] != 0) a_uni = false;
  }
  for (const auto& [e, c] : b) {
    if (e[1] != 0) b_y = true;
    if (e[0] != 0 && e[1] != 0) b_uni = false;
  }
  // Purely univariate case (same single variable or constants): Euclid.
  bool bivariate = !a_uni || !b_uni || (a_y && detail::main_degree(a) > 0) ||
                   (b_y && detail::main_degree(b) > 0) || (a_y != b_y);
  if (!bivariate) {
    if (!a_y && !b_y) {
      auto g = uni_gcd(pm_to_dense(a), pm_to_dense(b));
      return pm_make_primitive(pm_from_dense(g));
    }
    // both univariate in y: swap slots, recurse, swap back
    auto swap_slots = [](const PolyMap& p) {
      PolyMap r;
      for (const auto& [e, c] : p) r[{e[1], e[0]}] = c;
      return r;
    };
    return swap_slots(pm_gcd(swap_slots(a), swap_slots(b)));
  }
  // Bivariate Gauss: gcd = gcd(contents) * gcd(primitive parts).
  PolyMap ca = detail::content_in_main(a), cb = detail::content_in_main(b);
  PolyMap ppa = *pm_divexact(a, ca), ppb = *pm_divexact(b, cb);
  PolyMap cg = pm_gcd(ca, cb);
  // Pseudo-remainder Euclid on primitive parts (main variable = slot 0).
  PolyMap u = ppa, v = ppb;
  if (detail::main_degree(u) < detail::main_degree(v)) std::swap(u, v);
  while (!v.empty()) {
    // pseudo-remainder of u by v
    PolyMap r = u;
    int dv = detail::main_degree(v);
    PolyMap lcv = detail::coeffs_in_main(v)[dv];
    while (!r.empty() && detail::main_degree(r) >= dv) {
      int dr = detail::main_degree(r);
      PolyMap lcr = detail::coeffs_in_main(r)[dr];
      PolyMap shift = pm_var(0, dr - dv);
      r = pm_sub(pm_mul(r, lcv), pm_mul(pm_mul(lcr, shift), v));
    }
    if (!r.empty()) {
      PolyMap cr = detail::content_in_main(r);
      r = *pm_divexact(r, cr);
    }
    u = std::move(v);
    v = std::move(r);
  }
  return pm_make_primitive(pm_mul(cg, u));
}

// Substitute rational values for the variables.
inline Rational pm_eval(const PolyMap& p, const Rational& v0, const Rational& v1) {
  Rational r = 0;
  for (const auto& [e, c] : p) {
    Rational t = c;
    if (e[0] >= 0) {
      for (int i = 0; i < e[0]; ++i) t *= v0;
    } else {
      for (int i = 0; i < -e[0]; ++i) t /= v0;
    }
    for (int i = 0; i < e[1]; ++i) t *= v1;
    r += t;
  }
  return r;
}

// ---------------------------------------------------------------------------
// RingSpec
// ---------------------------------------------------------------------------

enum class Variant { Integers, Rationals, DeltaPoly, TwoColor, Laurent, Quotient, Fraction, Numeric };
enum class QuotKind { MonicDelta, TorsionZd };

struct RingSpec;
using Spec = std::shared_ptr<const RingSpec>;

struct RingSpec {
  Variant variant;
  bool rational_coeffs = false;          // Q[...] rather than Z[...]
  char uvar = 'd';                       // display variable for DeltaPoly (d or z)
  Spec base;                             // Quotient / Fraction / Numeric
  QuotKind quot = QuotKind::MonicDelta;
  std::vector<Rational> modulus;         // monic, ascending, for MonicDelta
  std::string modulus_label;             // e.g. "bal(3)"
  std::map<std::string, Rational> assign;  // Numeric
  std::string name;                      // canonical grammar string

  int nvars() const {
    switch (variant) {
      case Variant::Integers:
      case Variant::Rationals: return 0;
      case Variant::DeltaPoly:
      case Variant::Laurent: return 1;
      case Variant::TwoColor: return 2;
      default: return base->nvars();
    }
  }
  const RingSpec* scalar_base() const {  // innermost polynomial spec
    const RingSpec* s = this;
    while (s->base) s = s->base.get();
    return s;
  }
  bool is_laurent() const { return scalar_base()->variant == Variant::Laurent; }
  bool has_delta() const {
    auto v = scalar_base()->variant;
    if (v == Variant::DeltaPoly) return true;
    if (variant == Variant::Numeric) return base->has_delta() || assign.count("d");
    return false;
  }
  std::string varname(int slot) const {
    const RingSpec* s = scalar_base();
    if (s->variant == Variant::DeltaPoly) return std::string(1, s->uvar);
    if (s->variant == Variant::Laurent) return "v";
    if (s->variant == Variant::TwoColor) return slot == 0 ? "x" : "y";
    return "?";
  }
};

namespace specs {

inline Spec make(RingSpec s) {
  auto p = std::make_shared<RingSpec>(std::move(s));
  return p;
}

inline Spec Z() {
  static Spec s = make({Variant::Integers, false, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Z"});
  return s;
}
inline Spec Q() {
  static Spec s = make({Variant::Rationals, true, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Q"});
  return s;
}
inline Spec Zd() {
  static Spec s = make({Variant::DeltaPoly, false, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Z[d]"});
  return s;
}
inline Spec Qd() {
  static Spec s = make({Variant::DeltaPoly, true, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Q[d]"});
  return s;
}
inline Spec Zz() {  // display ring for the minimal polynomials Q_m(z)
  static Spec s = make({Variant::DeltaPoly, false, 'z', nullptr, QuotKind::MonicDelta, {}, "", {}, "Z[z]"});
  return s;
}
inline Spec Zxy() {
  static Spec s = make({Variant::TwoColor, false, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Z[x,y]"});
  return s;
}
inline Spec Qxy() {
  static Spec s = make({Variant::TwoColor, true, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Q[x,y]"});
  return s;
}
inline Spec Zv() {
  static Spec s = make({Variant::Laurent, false, 'd', nullptr, QuotKind::MonicDelta, {}, "", {}, "Z[v,v^-1]"});
  return s;
}

inline Spec quotient_qd(std::vector<Rational> monic_modulus, const std::string& label) {
  RingSpec s{Variant::Quotient, true, 'd', Qd(), QuotKind::MonicDelta,
             std::move(monic_modulus), label, {}, "Q[d]/" + label};
  return make(std::move(s));
}
inline Spec torsion_zd() {
  static Spec s = make({Variant::Quotient, false, 'd', Zd(), QuotKind::TorsionZd, {}, "(2d,d^2)", {}, "Z[d]/(2d,d^2)"});
  return s;
}
inline Spec fraction(Spec base) {
  if (base->variant == Variant::Quotient || base->variant == Variant::Fraction ||
      base->variant == Variant::Numeric)
    throw Error("frac(...) requires a plain polynomial base ring");
  RingSpec s{Variant::Fraction, true, 'd', base, QuotKind::MonicDelta, {}, "", {}, "frac(" + base->name + ")"};
  return make(std::move(s));
}
inline Spec numeric(Spec base, std::map<std::string, Rational> assign) {
  // Every variable of the base must be covered.
  const RingSpec* sb = base->scalar_base();
  std::vector<std::string> need;
  if (sb->variant == Variant::DeltaPoly) need = {std::string(1, sb->uvar)};
  if (sb->variant == Variant::Laurent) need = {"v"};
  if (sb->variant == Variant::TwoColor) need = {"x", "y"};
  for (const auto& n : need)
    if (!assign.count(n)) throw Error("numeric spec missing assignment for variable " + n);
  std::string nm = "num(";
  bool first = true;
  for (const auto& [k, v] : assign) {
    if (!first) nm += ",";
    first = false;
    nm += k + "=" + to_string(v);
  }
  nm += ") over " + base->name;
  RingSpec s{Variant::Numeric, true, 'd', base, QuotKind::MonicDelta, {}, "", std::move(assign), nm};
  return make(std::move(s));
}

}  // namespace specs

inline bool same_spec(const Spec& a, const Spec& b) { return a == b || a->name == b->name; }

// ---------------------------------------------------------------------------
// RingElem
// ---------------------------------------------------------------------------

class RingElem {
 public:
  Spec spec;
  PolyMap num;
  PolyMap den;  // identically one() except in Fraction specs

  RingElem() : spec(specs::Q()), num(), den(pm_one()) {}
  RingElem(Spec s, PolyMap n) : spec(std::move(s)), num(std::move(n)), den(pm_one()) { normalize(); }
  RingElem(Spec s, PolyMap n, PolyMap d) : spec(std::move(s)), num(std::move(n)), den(std::move(d)) {
    normalize();
  }

  static RingElem zero(const Spec& s) { return RingElem(s, PolyMap{}); }
  static RingElem one(const Spec& s) { return RingElem(s, pm_one()); }
  static RingElem from_rational(const Spec& s, const Rational& c) { return RingElem(s, pm_const(c)); }
  static RingElem from_int(const Spec& s, long n) { return from_rational(s, Rational(n)); }
  static RingElem variable(const Spec& s, int slot, int e = 1) { return RingElem(s, pm_var(slot, e)); }

  bool is_zero() const { return num.empty(); }
  bool is_one() const { return den == pm_one() && num == pm_one(); }

  friend RingElem operator+(const RingElem& a, const RingElem& b) {
    a.check(b);
    if (a.spec->variant == Variant::Fraction) {
      if (a.den == b.den) return RingElem(a.spec, pm_add(a.num, b.num), a.den);
      return RingElem(a.spec, pm_add(pm_mul(a.num, b.den), pm_mul(b.num, a.den)),
                      pm_mul(a.den, b.den));
    }
    return RingElem(a.spec, pm_add(a.num, b.num));
  }
  friend RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }
  RingElem operator-() const {
    RingElem r = *this;
    r.num = pm_neg(r.num);
    return r;
  }
  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    a.check(b);
    if (a.spec->variant == Variant::Fraction) {
      if (a.num.empty() || b.num.empty()) return zero(a.spec);
      // cross-reduce to keep degrees small
      PolyMap an = a.num, bd = b.den, bn = b.num, ad = a.den;
      if (!pm_is_const(bd)) {
        PolyMap g = pm_gcd(an, bd);
        if (!pm_is_const(g)) {
          an = *pm_divexact(an, g);
          bd = *pm_divexact(bd, g);
        }
      }
      if (!pm_is_const(ad)) {
        PolyMap g = pm_gcd(bn, ad);
        if (!pm_is_const(g)) {
          bn = *pm_divexact(bn, g);
          ad = *pm_divexact(ad, g);
        }
      }
      return RingElem(a.spec, pm_mul(an, bn), pm_mul(ad, bd));
    }
    return RingElem(a.spec, pm_mul(a.num, b.num));
  }
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return same_spec(a.spec, b.spec) && a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
  friend bool operator<(const RingElem& a, const RingElem& b) {
    if (a.num != b.num) return a.num < b.num;
    return a.den < b.den;
  }

  RingElem pow(int n) const {
    RingElem r = one(spec), a = *this;
    int k = n;
    if (k < 0) {
      a = a.inverse();
      k = -k;
    }
    while (k > 0) {
      if (k & 1) r = r * a;
      a = a * a;
      k >>= 1;
    }
    return r;
  }

  bool is_invertible() const {
    RingElem tmp;
    return try_inverse(tmp);
  }

  RingElem inverse() const {
    RingElem r;
    if (!try_inverse(r)) throw NonInvertible(str());
    return r;
  }

  RingElem divexact(const RingElem& b) const {
    check(b);
    if (spec->variant == Variant::Fraction) return *this * b.inverse();
    RingElem binv;
    if (b.try_inverse(binv)) return *this * binv;
    if (spec->variant == Variant::Quotient)
      throw ExactDivisionFailure("division by non-unit " + b.str() + " in " + spec->name);
    if (spec->is_laurent()) {
      // shift both to ordinary polynomials
      int sa = min_exp(num), sb = min_exp(b.num);
      auto q = pm_divexact(shift(num, -sa), shift(b.num, -sb));
      if (!q) throw ExactDivisionFailure(str() + " by " + b.str());
      return RingElem(spec, shift(*q, sa - sb));
    }
    auto q = pm_divexact(num, b.num);
    if (!q) throw ExactDivisionFailure(str() + " by " + b.str());
    return RingElem(spec, *q);
  }

  // v |-> v^{-1} on Laurent payloads (coefficient-level bar involution).
  RingElem bar() const {
    if (!spec->is_laurent()) throw Error("bar requires a Laurent spec");
    PolyMap r;
    for (const auto& [e, c] : num) r[{-e[0], e[1]}] = c;
    return RingElem(spec, std::move(r));
  }

  std::string str() const;

 private:
  void check(const RingElem& b) const {
    if (!same_spec(spec, b.spec))
      throw Error("ring mismatch: " + spec->name + " vs " + b.spec->name);
  }
  static int min_exp(const PolyMap& p) {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : p) {
      if (first || e[0] < m) m = e[0];
      first = false;
    }
    return m;
  }
  static PolyMap shift(const PolyMap& p, int k) {
    PolyMap r;
    for (const auto& [e, c] : p) r[{e[0] + k, e[1]}] = c;
    return r;
  }

  void normalize() {
    switch (spec->variant) {
      case Variant::Integers:
      case Variant::Rationals:
        if (!pm_is_const(num)) throw Error("non-constant element of " + spec->name);
        break;
      case Variant::Quotient:
        if (spec->quot == QuotKind::MonicDelta) {
          num = pm_from_dense(uni_rem(pm_to_dense(num), spec->modulus));
        } else {
          // Z[d]/(2d, d^2): normal form a + b d with a in Z, b in {0,1}.
          Rational a = 0, b = 0;
          for (const auto& [e, c] : num) {
            if (e[0] == 0) a = c;
            else if (e[0] == 1) b = c;
          }
          if (boost::multiprecision::denominator(a) != 1 || boost::multiprecision::denominator(b) != 1)
            throw Error("non-integral element of " + spec->name);
          BigInt bi = boost::multiprecision::numerator(b) % 2;
          if (bi < 0) bi += 2;
          num.clear();
          if (a != 0) num[{0, 0}] = a;
          if (bi != 0) num[{1, 0}] = Rational(bi);
        }
        break;
      case Variant::Numeric: {
        // substitute any surviving variables
        if (!pm_is_const(num)) {
          auto val = [&](const std::string& n) {
            auto it = spec->assign.find(n);
            return it == spec->assign.end() ? Rational(0) : it->second;
          };
          Rational v0 = 1, v1 = 1;
          const RingSpec* sb = spec->scalar_base();
          if (sb->variant == Variant::DeltaPoly) v0 = val(std::string(1, sb->uvar));
          if (sb->variant == Variant::Laurent) v0 = val("v");
          if (sb->variant == Variant::TwoColor) {
            v0 = val("x");
            v1 = val("y");
          }
          num = pm_const(pm_eval(num, v0, v1));
        }
        break;
      }
      case Variant::Fraction: {
        if (pm_is_zero(den)) throw Error("zero denominator");
        if (num.empty()) {
          den = pm_one();
          break;
        }
        PolyMap g = pm_gcd(num, den);
        if (!pm_is_const(g)) {
          num = *pm_divexact(num, g);
          den = *pm_divexact(den, g);
        }
        // canonical scale: denominator primitive over Z with positive leading
        PolyMap dprim = pm_make_primitive(den);
        auto scale = *pm_divexact(den, dprim);  // a constant
        Rational c = pm_const_value(scale);
        den = dprim;
        num = pm_scale(num, Rational(1) / c);
        break;
      }
      default:
        break;  // plain polynomial rings need nothing
    }
  }

  bool try_inverse(RingElem& out) const {
    if (is_zero()) return false;
    switch (spec->variant) {
      case Variant::Integers: {
        Rational c = pm_const_value(num);
        if (c == 1 || c == -1) {
          out = *this;
          return true;
        }
        return false;
      }
      case Variant::Rationals:
      case Variant::Numeric:
        out = RingElem(spec, pm_const(Rational(1) / pm_const_value(num)));
        return true;
      case Variant::DeltaPoly:
      case Variant::TwoColor: {
        if (!pm_is_const(num)) return false;
        Rational c = pm_const_value(num);
        if (!spec->rational_coeffs && c != 1 && c != -1) return false;
        out = RingElem(spec, pm_const(Rational(1) / c));
        return true;
      }
      case Variant::Laurent: {
        if (num.size() != 1) return false;
        auto [e, c] = *num.begin();
        if (c != 1 && c != -1) return false;
        PolyMap r;
        r[{-e[0], 0}] = c;
        out = RingElem(spec, std::move(r));
        return true;
      }
      case Variant::Fraction: {
        out = RingElem(spec, den, num);
        return true;
      }
      case Variant::Quotient: {
        if (spec->quot == QuotKind::TorsionZd) {
          Rational a = pm_const_value(num);
          if (a != 1 && a != -1) return false;
          out = *this;  // (±1 + bd) is its own inverse mod (2d, d^2)
          return true;
        }
        // extended Euclid against the modulus
        std::vector<Rational> r0 = spec->modulus, r1 = pm_to_dense(num);
        std::vector<Rational> s0, s1{Rational(1)};
        while (!r1.empty()) {
          auto q = uni_quot(r0, r1);
          auto r2 = uni_rem(r0, r1);
          // s2 = s0 - q*s1
          std::vector<Rational> qs(q.size() + (s1.empty() ? 0 : s1.size() - 1) + 1, Rational(0));
          if (!s1.empty()) {
            qs.assign(q.size() + s1.size() - 1, Rational(0));
            for (size_t i = 0; i < q.size(); ++i)
              for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
          } else {
            qs.clear();
          }
          std::vector<Rational> s2 = s0;
          if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
          for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
          while (!s2.empty() && s2.back() == 0) s2.pop_back();
          r0 = std::move(r1);
          r1 = std::move(r2);
          s0 = std::move(s1);
          s1 = std::move(s2);
        }
        if (r0.size() != 1) return false;  // gcd not a unit
        for (auto& c : s0) c /= r0[0];
        out = RingElem(spec, pm_from_dense(s0));
        return true;
      }
    }
    return false;
  }
};

inline RingElem operator*(const Rational& c, const RingElem& a) {
  return RingElem::from_rational(a.spec, c) * a;
}

// ---------------------------------------------------------------------------
// Printing and parsing
// ---------------------------------------------------------------------------

namespace detail {

inline void print_monomial(std::ostream& os, const RingSpec& sp, const Exp2& e, const Rational& c,
                           bool first) {
  Rational a = c;
  if (a < 0) {
    os << (first ? "-" : " - ");
    a = -a;
  } else if (!first) {
    os << " + ";
  }
  bool has_var = e != Exp2{0, 0};
  if (a != 1 || !has_var) os << to_string(a);
  if (e[0] != 0) {
    os << sp.varname(0);
    if (e[0] != 1) os << "^" << e[0];
  }
  if (e[1] != 0) {
    os << sp.varname(1);
    if (e[1] != 1) os << "^" << e[1];
  }
}

inline void print_polymap(std::ostream& os, const RingSpec& sp, const PolyMap& p) {
  if (p.empty()) {
    os << "0";
    return;
  }
  // descending deg-lex
  std::vector<std::pair<Exp2, Rational>> terms(p.begin(), p.end());
  std::sort(terms.begin(), terms.end(), [](const auto& A, const auto& B) {
    int da = A.first[0] + A.first[1], db = B.first[0] + B.first[1];
    if (da != db) return da > db;
    return A.first[0] > B.first[0];
  });
  bool first = true;
  for (const auto& [e, c] : terms) {
    print_monomial(os, sp, e, c, first);
    first = false;
  }
}

}  // namespace detail

inline std::string RingElem::str() const {
  std::ostringstream os;
  if (den == pm_one()) {
    detail::print_polymap(os, *spec, num);
  } else {
    os << "(";
    detail::print_polymap(os, *spec, num);
    os << ")/(";
    detail::print_polymap(os, *spec, den);
    os << ")";
  }
  return os.str();
}

// Parse a polynomial expression in the spec's variables: sums of terms like
// "3d^2", "-xy^2", "1/2", "v^-1"; fractions print as "(num)/(den)".
RingElem parse_elem(const Spec& spec, const std::string& text);

namespace detail {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip() {
    while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
};

inline int parse_int(Lexer& lx) {
  lx.skip();
  size_t start = lx.i;
  if (lx.i < lx.s.size() && (lx.s[lx.i] == '-' || lx.s[lx.i] == '+')) ++lx.i;
  while (lx.i < lx.s.size() && isdigit((unsigned char)lx.s[lx.i])) ++lx.i;
  if (lx.i == start) throw ParseError("expected integer in '" + lx.s + "'");
  return std::stoi(lx.s.substr(start, lx.i - start));
}

inline PolyMap parse_polymap(const RingSpec& sp, Lexer& lx, char stop = 0) {
  PolyMap out;
  bool first = true;
  while (true) {
    lx.skip();
    if (lx.done() || (stop && lx.peek(stop))) break;
    int sign = 1;
    if (lx.eat('+')) {
    } else if (lx.eat('-')) {
      sign = -1;
    } else if (!first) {
      throw ParseError("expected + or - in polynomial");
    }
    lx.skip();
    // coefficient
    Rational coef = 1;
    bool saw_num = false;
    size_t start = lx.i;
    while (lx.i < lx.s.size() && isdigit((unsigned char)lx.s[lx.i])) ++lx.i;
    if (lx.i > start) {
      saw_num = true;
      BigInt n(lx.s.substr(start, lx.i - start));
      coef = Rational(n);
      if (lx.peek('/')) {
        size_t save = lx.i;
        ++lx.i;
        lx.skip();
        size_t ds = lx.i;
        while (lx.i < lx.s.size() && isdigit((unsigned char)lx.s[lx.i])) ++lx.i;
        if (lx.i > ds) {
          BigInt d(lx.s.substr(ds, lx.i - ds));
          coef /= Rational(d);
        } else {
          lx.i = save;  // the '/' belongs to a fraction-of-polynomials
        }
      }
    }
    // variables
    Exp2 e{0, 0};
    bool saw_var = false;
    while (true) {
      lx.skip();
      int slot = -1;
      std::string v0 = sp.varname(0), v1 = sp.varname(1);
      if (sp.nvars() >= 1 && lx.s.compare(lx.i, v0.size(), v0) == 0) slot = 0;
      else if (sp.nvars() >= 2 && lx.s.compare(lx.i, v1.size(), v1) == 0) slot = 1;
      if (slot < 0) break;
      lx.i += sp.varname(slot).size();
      saw_var = true;
      int ex = 1;
      if (lx.eat('^')) ex = parse_int(lx);
      e[slot] += ex;
    }
    if (!saw_num && !saw_var) throw ParseError("empty term in '" + lx.s + "'");
    pm_add_term(out, e, sign * coef);
    first = false;
  }
  return out;
}

}  // namespace detail

inline RingElem parse_elem(const Spec& spec, const std::string& text) {
  detail::Lexer lx(text);
  lx.skip();
  if (spec->variant == Variant::Fraction && lx.peek('(')) {
    lx.eat('(');
    PolyMap num = detail::parse_polymap(*spec, lx, ')');
    if (!lx.eat(')')) throw ParseError("expected ')'");
    if (!lx.eat('/')) throw ParseError("expected '/'");
    if (!lx.eat('(')) throw ParseError("expected '('");
    PolyMap den = detail::parse_polymap(*spec, lx, ')');
    if (!lx.eat(')')) throw ParseError("expected ')'");
    if (!lx.done()) throw ParseError("trailing input in '" + text + "'");
    return RingElem(spec, std::move(num), std::move(den));
  }
  PolyMap num = detail::parse_polymap(*spec, lx);
  return RingElem(spec, std::move(num));
}

// ---------------------------------------------------------------------------
// Conversion between specs
// ---------------------------------------------------------------------------

// Map an element of a plain polynomial ring (or Z/Q) into `target`, which may
// be a quotient, fraction or numeric spec over a compatible base.  Fractions
// convert into quotient/numeric targets by inverting the denominator image.
inline RingElem convert(const RingElem& e, const Spec& target) {
  if (same_spec(e.spec, target)) return e;
  if (e.spec->scalar_base()->variant == Variant::TwoColor &&
      target->scalar_base()->variant != Variant::TwoColor)
    throw Error("cannot convert a two-color element into " + target->name +
                "; specialize x, y first");
  if (e.spec->variant == Variant::Fraction) {
    RingElem n = convert(RingElem(e.spec->base, e.num), target);
    RingElem d = convert(RingElem(e.spec->base, e.den), target);
    return n.divexact(d);
  }
  // source is now polynomial-like; reinterpret the payload in the target
  if (target->variant == Variant::Fraction)
    return RingElem(target, e.num, pm_one());
  return RingElem(target, e.num);
}

// ---------------------------------------------------------------------------
// Quantum numbers and supporting polynomials
// ---------------------------------------------------------------------------

// [n] as a polynomial in d, inside Z[d]: [n+1] = d[n] - [n-1].
inline PolyMap qnum_pm(int n) {
  if (n < 0) throw Error("qnum of negative index");
  PolyMap a = pm_const(0), b = pm_one();  // [0], [1]
  if (n == 0) return a;
  PolyMap d = pm_var(0);
  for (int i = 1; i < n; ++i) {
    PolyMap c = pm_sub(pm_mul(d, b), a);
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

inline RingElem qnum(int n, const Spec& spec) {
  if (!spec->has_delta()) throw Error("qnum requires a ring containing d, got " + spec->name);
  return convert(RingElem(specs::Zd(), qnum_pm(n)), spec);
}

enum class Color { X, Y };

// Two-colored quantum number [n]_x / [n]_y in Z[x,y].
inline RingElem qnum2(int n, Color color) {
  if (n < 0) throw Error("qnum2 of negative index");
  // pair ([k]_x, [k]_y), recursion [k+1]_x = x [k]_y - [k-1]_x.
  PolyMap ax = pm_const(0), ay = pm_const(0);  // [0]
  PolyMap bx = pm_one(), by = pm_one();        // [1]
  PolyMap x = pm_var(0), y = pm_var(1);
  for (int k = 1; k <= n - 1; ++k) {
    PolyMap cx = pm_sub(pm_mul(x, by), ax);
    PolyMap cy = pm_sub(pm_mul(y, bx), ay);
    ax = std::move(bx);
    ay = std::move(by);
    bx = std::move(cx);
    by = std::move(cy);
  }
  if (n == 0) return RingElem(specs::Zxy(), pm_const(0));
  return RingElem(specs::Zxy(), color == Color::X ? bx : by);
}

inline PolyMap qfact_pm(int n) {
  PolyMap r = pm_one();
  for (int k = 2; k <= n; ++k) r = pm_mul(r, qnum_pm(k));
  return r;
}

inline RingElem qbinom(int n, int k, const Spec& spec) {
  if (k < 0 || k > n) throw Error("qbinom requires 0 <= k <= n");
  PolyMap numtop = pm_one();
  for (int j = n - k + 1; j <= n; ++j) numtop = pm_mul(numtop, qnum_pm(j));
  auto q = pm_divexact(numtop, qfact_pm(k));
  if (!q) throw ExactDivisionFailure("quantum binomial [" + std::to_string(n) + " choose " +
                                     std::to_string(k) + "]");
  if (!spec->has_delta()) throw Error("qbinom requires a ring containing d");
  return convert(RingElem(specs::Zd(), *q), spec);
}

namespace detail {

// [m] (m odd) or [m]/[2] (m even) rewritten as a polynomial in z = d^2.
inline PolyMap qnum_in_z(int m) {
  PolyMap p = qnum_pm(m);
  if (m % 2 == 0) p = *pm_divexact(p, qnum_pm(2));
  PolyMap z;
  for (const auto& [e, c] : p) {
    if (e[0] % 2) throw Error("unexpected odd exponent");
    z[{e[0] / 2, 0}] = c;
  }
  return z;
}

}  // namespace detail

// Minimal polynomial Q_m in z = d^2: divides [m] but no [n] for n < m.
inline RingElem qm_poly(int m) {
  if (m < 3) throw Error("qm_poly requires m >= 3");
  PolyMap f = detail::qnum_in_z(m);
  for (int n = 3; n < m; ++n) {
    PolyMap g = detail::qnum_in_z(n);
    while (true) {
      PolyMap h = pm_gcd(f, g);
      if (pm_is_const(h)) break;
      f = *pm_divexact(f, h);
    }
  }
  f = pm_make_primitive(f);
  if (pm_leading(f).second != 1)
    throw Error("qm_poly: gcd elimination left a non-monic-normalizable result");
  return RingElem(specs::Zz(), f);
}

// P_m in d (m odd): the factor of Q_m(d^2) on which [m-1] = 1.
inline RingElem pm_poly(int m) {
  if (m < 3 || m % 2 == 0) throw Error("pm_poly requires odd m >= 3");
  PolyMap qm = qm_poly(m).num;  // in z
  PolyMap qmd;                  // substituted z = d^2
  for (const auto& [e, c] : qm) qmd[{2 * e[0], 0}] = c;
  PolyMap g = pm_gcd(qmd, pm_sub(qnum_pm(m - 1), pm_one()));
  return RingElem(specs::Zd(), pm_make_primitive(g));
}

// Q[d]/(g_m) where g_m cuts out the faithful balanced specialization:
// g_m = gcd(Q_m(d^2), [m-1] - 1).  The naive gcd([m], [m-1]-1) picks up
// degenerate low-order branches for m = 2 mod 4 (e.g. d | gcd at m = 6,
// where d = 0 is the W_2 point) on which lower quantum numbers vanish; the
// Q_m factor removes them.  Satisfies [m] = 0, [m-1] = 1, and [k] invertible
// for 0 < k < m.
inline Spec balanced_quotient(int m) {
  if (m < 2) throw Error("balanced_quotient requires m >= 2");
  PolyMap g;
  if (m == 2) {
    g = pm_var(0);  // [2] = d
  } else {
    PolyMap qm = qm_poly(m).num, qmd;
    for (const auto& [e, c] : qm) qmd[{2 * e[0], 0}] = c;
    g = pm_gcd(qmd, pm_sub(qnum_pm(m - 1), pm_one()));
  }
  auto dense = pm_to_dense(g);
  Rational lead = dense.back();
  for (auto& c : dense) c /= lead;
  return specs::quotient_qd(dense, "bal(" + std::to_string(m) + ")");
}

inline Spec qm_quotient(int m) {
  PolyMap qm = qm_poly(m).num;
  PolyMap qmd;
  for (const auto& [e, c] : qm) qmd[{2 * e[0], 0}] = c;
  return specs::quotient_qd(pm_to_dense(qmd), "Qm(" + std::to_string(m) + ")");
}

inline Spec pm_quotient(int m) {
  auto p = pm_to_dense(pm_poly(m).num);
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return specs::quotient_qd(p, "Pm(" + std::to_string(m) + ")");
}

// Root-of-unity identities, checked by remainder modulo the monic [m].
inline Report verify_qnum_identities(int m) {
  if (m < 2) throw Error("verify_qnum_identities requires m >= 2");
  Report rep;
  auto mod_m = pm_to_dense(qnum_pm(m));
  auto reduce = [&](const PolyMap& p) { return pm_from_dense(uni_rem(pm_to_dense(p), mod_m)); };
  bool ok = true;
  std::string witness;
  for (int k = 1; k <= m; ++k) {
    PolyMap lhs = pm_sub(qnum_pm(m - k), pm_mul(qnum_pm(m - 1), qnum_pm(k)));
    if (!reduce(lhs).empty()) {
      ok = false;
      witness = "k=" + std::to_string(k);
      break;
    }
  }
  rep.add("qnum", "[m-k] = [m-1][k] mod [m], 1<=k<=m (m=" + std::to_string(m) + ")", ok, witness);
  rep.add("qnum", "[m-1]^2 = 1 mod [m]",
          reduce(pm_sub(pm_mul(qnum_pm(m - 1), qnum_pm(m - 1)), pm_one())).empty());
  ok = true;
  witness.clear();
  for (int k = 1; k <= m; ++k) {
    PolyMap lhs = pm_sub(qnum_pm(m + k), pm_mul(qnum_pm(m + 1), qnum_pm(k)));
    if (!reduce(lhs).empty()) {
      ok = false;
      witness = "k=" + std::to_string(k);
      break;
    }
  }
  rep.add("qnum", "[m+k] = [m+1][k] mod [m], 1<=k<=m", ok, witness);
  rep.add("qnum", "[2m-1] = -1 mod [m]", reduce(pm_add(qnum_pm(2 * m - 1), pm_one())).empty());
  rep.add("qnum", "[2m] = 0 mod [m]", reduce(qnum_pm(2 * m)).empty());
  return rep;
}

inline RingElem bar(const RingElem& p) { return p.bar(); }

// Z[x,y] -> Z[d] along x, y |-> d.
inline RingElem symmetric_specialization(const RingElem& e) {
  if (e.spec->scalar_base()->variant != Variant::TwoColor)
    throw Error("symmetric specialization requires a two-color ring");
  PolyMap r;
  for (const auto& [ex, c] : e.num) pm_add_term(r, {ex[0] + ex[1], 0}, c);
  if (e.spec->variant == Variant::Fraction) {
    PolyMap d;
    for (const auto& [ex, c] : e.den) pm_add_term(d, {ex[0] + ex[1], 0}, c);
    return RingElem(specs::fraction(specs::Qd()), std::move(r), std::move(d));
  }
  return RingElem(specs::Zd(), std::move(r));
}

// ---------------------------------------------------------------------------
// Ring-spec grammar
// ---------------------------------------------------------------------------

inline Spec parse_spec(const std::string& text) {
  auto strip = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  std::string s = strip(text);
  if (s == "Z") return specs::Z();
  if (s == "Q") return specs::Q();
  if (s == "Z[d]") return specs::Zd();
  if (s == "Q[d]") return specs::Qd();
  if (s == "Z[x,y]") return specs::Zxy();
  if (s == "Q[x,y]") return specs::Qxy();
  if (s == "Z[v,v^-1]") return specs::Zv();
  if (s == "Z[d]/(2d,d^2)") return specs::torsion_zd();
  if (s.rfind("frac(", 0) == 0 && s.back() == ')')
    return specs::fraction(parse_spec(s.substr(5, s.size() - 6)));
  if (s.rfind("Q[d]/", 0) == 0) {
    std::string q = s.substr(5);
    auto grab_m = [&](const std::string& prefix) -> int {
      if (q.rfind(prefix + "(", 0) != 0 || q.back() != ')') return -1;
      return std::stoi(q.substr(prefix.size() + 1, q.size() - prefix.size() - 2));
    };
    if (int m = grab_m("Qm"); m > 0) return qm_quotient(m);
    if (int m = grab_m("Pm"); m > 0) return pm_quotient(m);
    if (int m = grab_m("bal"); m > 0) return balanced_quotient(m);
    throw ParseError("unknown quotient '" + s + "'");
  }
  if (s.rfind("num(", 0) == 0) {
    size_t close = s.find(')');
    if (close == std::string::npos) throw ParseError("missing ')' in numeric spec");
    std::string inner = s.substr(4, close - 4);
    std::string rest = strip(s.substr(close + 1));
    if (rest.rfind("over", 0) != 0) throw ParseError("numeric spec needs 'over <spec>'");
    Spec base = parse_spec(rest.substr(4));
    std::map<std::string, Rational> assign;
    size_t pos = 0;
    while (pos < inner.size()) {
      size_t comma = inner.find(',', pos);
      std::string item = strip(inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      size_t eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("numeric assignment needs var=value");
      std::string var = strip(item.substr(0, eq));
      std::string val = strip(item.substr(eq + 1));
      size_t slash = val.find('/');
      Rational r = slash == std::string::npos
                       ? Rational(BigInt(val))
                       : Rational(BigInt(strip(val.substr(0, slash))), BigInt(strip(val.substr(slash + 1))));
      assign[var] = r;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return specs::numeric(base, std::move(assign));
  }
  throw ParseError("unknown ring spec '" + text + "'");
}

}  // namespace soergel
