#pragma once

// The dihedral Hecke algebra (finite m and m = infinity) in the standard and
// Kazhdan-Lusztig bases, its trace and pairing, the c/d Pascal tables, and
// the Hecke algebroid with star-composition.

#include "rings.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace soergel {
namespace hecke {

constexpr int infinity = std::numeric_limits<int>::max();

enum class Gen : int { S = 0, T = 1 };
inline Gen other(Gen g) { return g == Gen::S ? Gen::T : Gen::S; }
inline char gen_char(Gen g) { return g == Gen::S ? 's' : 't'; }

// A dihedral group element in normal form: an alternating word of the given
// length.  The two length-m words are identified, with canonical start s.
struct GroupElt {
  int len = 0;
  Gen start = Gen::S;

  friend bool operator==(const GroupElt& a, const GroupElt& b) {
    return a.len == b.len && (a.len == 0 || a.start == b.start);
  }
  friend bool operator!=(const GroupElt& a, const GroupElt& b) { return !(a == b); }
  friend bool operator<(const GroupElt& a, const GroupElt& b) {
    if (a.len != b.len) return a.len < b.len;
    if (a.len == 0) return false;
    return a.start < b.start;
  }
};

inline GroupElt make_elt(Gen start, int len, int m) {
  if (len < 0 || (m != infinity && len > m)) throw Error("invalid element length");
  GroupElt w;
  w.len = len;
  w.start = (len == 0 || (m != infinity && len == m)) ? Gen::S : start;
  return w;
}
inline GroupElt identity_elt() { return GroupElt{0, Gen::S}; }
inline GroupElt longest_elt(int m) {
  if (m == infinity) throw Error("no longest element for m = infinity");
  return make_elt(Gen::S, m, m);
}

inline Gen last_letter(const GroupElt& w) {
  if (w.len == 0) throw Error("identity has no last letter");
  return w.len % 2 ? w.start : other(w.start);
}

inline std::vector<Gen> word_of(const GroupElt& w) {
  std::vector<Gen> out;
  Gen g = w.start;
  for (int i = 0; i < w.len; ++i) {
    out.push_back(g);
    g = other(g);
  }
  return out;
}

inline std::string word_string(const GroupElt& w) {
  if (w.len == 0) return "e";
  std::string s;
  for (Gen g : word_of(w)) s += gen_char(g);
  return s;
}

inline std::vector<Gen> parse_word(const std::string& s) {
  std::vector<Gen> w;
  for (char c : s) {
    if (c == 's') w.push_back(Gen::S);
    else if (c == 't') w.push_back(Gen::T);
    else if (c == 'e' && s.size() == 1) return {};
    else if (!isspace((unsigned char)c)) throw ParseError(std::string("bad letter '") + c + "' in word");
  }
  return w;
}

// Right multiplication w * i in W_m; returns the element and whether the
// length went up.
inline std::pair<GroupElt, bool> right_mult_gen(const GroupElt& w, Gen i, int m) {
  if (w.len == 0) return {make_elt(i, 1, m), true};
  if (m != infinity && w.len == m) {
    // w0 * i strips the reduced expression of w0 ending in i
    Gen end = other(i);                       // last letter of the result
    Gen start = ((m - 1) % 2) ? end : other(end);
    return {make_elt(start, m - 1, m), false};
  }
  if (last_letter(w) == i) {
    return {make_elt(w.start, w.len - 1, m), false};
  }
  return {make_elt(w.start, w.len + 1, m), true};
}

inline GroupElt inverse_elt(const GroupElt& w, int m) {
  if (w.len == 0) return w;
  return make_elt(last_letter(w), w.len, m);
}

inline GroupElt elt_from_word(const std::vector<Gen>& word, int m) {
  GroupElt w = identity_elt();
  for (Gen g : word) w = right_mult_gen(w, g, m).first;
  return w;
}

// ---------------------------------------------------------------------------
// HeckeElt: finite Z[v,v^-1]-combination of standard basis elements T_w.
// ---------------------------------------------------------------------------

inline RingElem laurent(const std::string& s) { return parse_elem(specs::Zv(), s); }
inline RingElem v_pow(int k) { return RingElem::variable(specs::Zv(), 0, k); }

struct HeckeElt {
  int m = infinity;
  std::map<GroupElt, RingElem> coeffs;  // T-basis

  static HeckeElt zero(int m) { return HeckeElt{m, {}}; }
  static HeckeElt unit(int m) {
    HeckeElt h{m, {}};
    h.coeffs[identity_elt()] = RingElem::one(specs::Zv());
    return h;
  }
  static HeckeElt std_basis(const GroupElt& w, int m) {
    HeckeElt h{m, {}};
    h.coeffs[w] = RingElem::one(specs::Zv());
    return h;
  }

  void add_term(const GroupElt& w, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = coeffs.find(w);
    if (it == coeffs.end()) {
      coeffs.emplace(w, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }

  friend HeckeElt operator+(const HeckeElt& a, const HeckeElt& b) {
    HeckeElt r = a;
    for (const auto& [w, c] : b.coeffs) r.add_term(w, c);
    return r;
  }
  friend HeckeElt operator-(const HeckeElt& a, const HeckeElt& b) { return a + (-b); }
  HeckeElt operator-() const {
    HeckeElt r = *this;
    for (auto& [w, c] : r.coeffs) c = -c;
    return r;
  }
  friend HeckeElt operator*(const RingElem& c, const HeckeElt& a) {
    HeckeElt r{a.m, {}};
    for (const auto& [w, cw] : a.coeffs) r.add_term(w, c * cw);
    return r;
  }
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) {
    return a.m == b.m && a.coeffs == b.coeffs;
  }
  bool is_zero() const { return coeffs.empty(); }
};

// T_w * T_i via the quadratic relation.
inline HeckeElt mult_gen(const HeckeElt& a, Gen i) {
  HeckeElt r = HeckeElt::zero(a.m);
  RingElem q1 = laurent("v^-2 - 1"), q2 = laurent("v^-2");
  for (const auto& [w, c] : a.coeffs) {
    auto [wi, up] = right_mult_gen(w, i, a.m);
    if (up) {
      r.add_term(wi, c);
    } else {
      r.add_term(w, c * q1);
      r.add_term(wi, c * q2);
    }
  }
  return r;
}

inline HeckeElt mult(const HeckeElt& a, const HeckeElt& b) {
  if (a.m != b.m) throw Error("group size mismatch");
  HeckeElt r = HeckeElt::zero(a.m);
  for (const auto& [w, c] : b.coeffs) {
    HeckeElt term = c * a;
    for (Gen g : word_of(w)) term = mult_gen(term, g);
    r = r + term;
  }
  return r;
}
inline HeckeElt operator*(const HeckeElt& a, const HeckeElt& b) { return mult(a, b); }

// KL basis element b_w = v^{l(w)} sum_{x <= w} T_x.
inline HeckeElt kl(const GroupElt& w, int m) {
  HeckeElt r = HeckeElt::zero(m);
  RingElem vl = v_pow(w.len);
  r.add_term(identity_elt(), vl);
  for (int l = 1; l < w.len; ++l) {
    r.add_term(make_elt(Gen::S, l, m), vl);
    if (l != m) r.add_term(make_elt(Gen::T, l, m), vl);
  }
  if (w.len > 0) r.add_term(w, vl);
  return r;
}

inline HeckeElt kl_gen(Gen i, int m) { return kl(make_elt(i, 1, m), m); }

// Expand in the KL basis by stripping leading terms (unitriangular).
inline std::map<GroupElt, RingElem> to_kl(HeckeElt a) {
  std::map<GroupElt, RingElem> out;
  while (!a.coeffs.empty()) {
    auto it = std::prev(a.coeffs.end());  // maximal length element
    GroupElt w = it->first;
    RingElem lam = it->second * v_pow(-w.len);
    out[w] = lam;
    a = a - lam * kl(w, a.m);
  }
  return out;
}

inline RingElem epsilon(const HeckeElt& a) {
  auto it = a.coeffs.find(identity_elt());
  return it == a.coeffs.end() ? RingElem::zero(specs::Zv()) : it->second;
}

// The v-antilinear antiinvolution with omega(b_i) = b_i:
// omega(T_i) = v^2 T_i + (v^2 - 1).
inline HeckeElt omega(const HeckeElt& a) {
  HeckeElt r = HeckeElt::zero(a.m);
  RingElem c1 = laurent("v^2"), c0 = laurent("v^2 - 1");
  for (const auto& [w, c] : a.coeffs) {
    HeckeElt term = HeckeElt::unit(a.m);
    auto letters = word_of(w);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      HeckeElt oti = c1 * HeckeElt::std_basis(make_elt(*it, 1, a.m), a.m);
      oti.add_term(identity_elt(), c0);
      term = term * oti;
    }
    r = r + c.bar() * term;
  }
  return r;
}

inline RingElem pair_form(const HeckeElt& a, const HeckeElt& b) {
  return epsilon(omega(a) * b);
}

// Product of KL generators along a word.
inline HeckeElt kl_word_product(const std::vector<Gen>& word, int m) {
  HeckeElt r = HeckeElt::unit(m);
  for (Gen g : word) r = r * kl_gen(g, m);
  return r;
}

inline std::map<GroupElt, RingElem> bs_decompose(const std::vector<Gen>& word, int m) {
  return to_kl(kl_word_product(word, m));
}

// ---------------------------------------------------------------------------
// Pascal tables
// ---------------------------------------------------------------------------

struct PascalTables {
  int kmax;
  // c[k][n], d[k][n] with 1 <= n <= k <= kmax; zero unless k-n is even.
  std::vector<std::vector<BigInt>> c, d;
};

inline PascalTables pascal_tables(int kmax) {
  if (kmax < 1) throw Error("pascal_tables requires kmax >= 1");
  PascalTables t;
  t.kmax = kmax;
  t.c.assign(kmax + 1, std::vector<BigInt>(kmax + 2, BigInt(0)));
  t.d.assign(kmax + 1, std::vector<BigInt>(kmax + 2, BigInt(0)));
  t.c[1][1] = 1;
  for (int k = 2; k <= kmax; ++k)
    for (int n = 1; n <= k; ++n) {
      if ((k - n) % 2) continue;
      t.c[k][n] = (n >= 2 ? t.c[k - 1][n - 1] : BigInt(0)) + t.c[k - 1][n + 1];
    }
  t.d[1][1] = 1;
  for (int k = 2; k <= kmax; ++k)
    for (int n = 1; n <= k; ++n) {
      if ((k - n) % 2) continue;
      BigInt up = (n >= 2) ? t.d[k - 1][n - 1] : BigInt(0);
      BigInt back = (k >= 3) ? t.d[k - 2][n] : BigInt(0);
      t.d[k][n] = up - back;
    }
  return t;
}

// Balanced Poincare polynomial [W] of W_m.
inline RingElem poincare(int m) {
  if (m == infinity) throw Error("[W] rejected: p is not finitary for m = infinity");
  RingElem r = RingElem::zero(specs::Zv());
  r = r + v_pow(-m) + v_pow(m);
  for (int l = 1; l < m; ++l) r = r + Rational(2) * v_pow(2 * l - m);
  return r;
}

// ---------------------------------------------------------------------------
// verify_hecke_relations
// ---------------------------------------------------------------------------

inline Report verify_hecke_relations(int m) {
  if (m == infinity || m < 2) throw Error("verify_hecke_relations requires 2 <= m < infinity");
  Report rep;
  std::string suite = "hecke(m=" + std::to_string(m) + ")";
  auto t = pascal_tables(m);
  HeckeElt bw0 = kl(longest_elt(m), m);

  auto alternating = [&](Gen start, int n) {
    std::vector<Gen> w;
    Gen g = start;
    for (int i = 0; i < n; ++i) {
      w.push_back(g);
      g = other(g);
    }
    return w;
  };
  // words \hat n_i end with letter i
  auto hat_word = [&](Gen end, int n) {
    Gen start = (n % 2) ? end : other(end);
    return alternating(start, n);
  };

  for (Gen i : {Gen::S, Gen::T}) {
    HeckeElt side = HeckeElt::zero(m);
    for (int n = 1; n <= m; ++n)
      if (t.d[m][n] != 0)
        side = side + RingElem::from_rational(specs::Zv(), Rational(t.d[m][n])) *
                          kl_word_product(hat_word(i, n), m);
    rep.add(suite, std::string("sum_n d^n_m b_{word n^") + gen_char(i) + "} = b_w0",
            side == bw0);
  }

  HeckeElt bs = kl_gen(Gen::S, m);
  RingElem vv = laurent("v + v^-1");
  rep.add(suite, "b_s b_w0 = (v+v^-1) b_w0", bs * bw0 == vv * bw0);
  rep.add(suite, "b_w0 b_s = (v+v^-1) b_w0", bw0 * bs == vv * bw0);
  rep.add(suite, "b_w0 b_w0 = [W] b_w0", bw0 * bw0 == poincare(m) * bw0);

  bool ok = true;
  std::string witness;
  for (Gen i : {Gen::S, Gen::T}) {
    for (int k = 1; k <= m && ok; ++k) {
      HeckeElt bk = kl(make_elt((k % 2) ? i : other(i), k, m), m);  // b_{\hat k_i}
      if (!(bk * kl_gen(i, m) == vv * bk)) {
        ok = false;
        witness = "k=" + std::to_string(k);
      }
    }
  }
  rep.add(suite, "b_{k^i} b_i = (v+v^-1) b_{k^i}", ok, witness);

  ok = true;
  witness.clear();
  for (Gen i : {Gen::S, Gen::T}) {
    Gen j = other(i);
    for (int k = 2; k < m && ok; ++k) {
      GroupElt hk = make_elt((k % 2) ? i : other(i), k, m);  // ends with i
      HeckeElt lhs = kl(hk, m) * kl_gen(j, m);
      HeckeElt rhs = kl(make_elt(((k + 1) % 2) ? j : other(j), k + 1, m), m) +
                     kl(make_elt(((k - 1) % 2) ? j : other(j), k - 1, m), m);
      if (!(lhs == rhs)) {
        ok = false;
        witness = "k=" + std::to_string(k);
      }
    }
  }
  rep.add(suite, "b_{k^i} b_j = b_{k+1^j} + b_{k-1^j}", ok, witness);

  if (m == 3) {
    HeckeElt lhs = kl_word_product(parse_word("sts"), m) - kl_gen(Gen::S, m);
    HeckeElt rhs = kl_word_product(parse_word("tst"), m) - kl_gen(Gen::T, m);
    rep.add(suite, "b_s b_t b_s - b_s = b_t b_s b_t - b_t", lhs == rhs);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hecke algebroid
// ---------------------------------------------------------------------------

enum class Par { Empty, B, R, P };

inline std::string par_name(Par p) {
  switch (p) {
    case Par::Empty: return "o";
    case Par::B: return "b";
    case Par::R: return "r";
    case Par::P: return "p";
  }
  return "?";
}

inline std::vector<Gen> par_letters(Par p) {
  switch (p) {
    case Par::Empty: return {};
    case Par::B: return {Gen::S};
    case Par::R: return {Gen::T};
    case Par::P: return {Gen::S, Gen::T};
  }
  return {};
}

inline HeckeElt b_par(Par p, int m) {
  switch (p) {
    case Par::Empty: return HeckeElt::unit(m);
    case Par::B: return kl_gen(Gen::S, m);
    case Par::R: return kl_gen(Gen::T, m);
    case Par::P:
      if (m == infinity) throw Error("parabolic p is not finitary for m = infinity");
      return kl(longest_elt(m), m);
  }
  return HeckeElt::zero(m);
}

inline RingElem par_poincare(Par p, int m) {
  switch (p) {
    case Par::Empty: return RingElem::one(specs::Zv());
    case Par::B:
    case Par::R: return laurent("v + v^-1");
    case Par::P: return poincare(m);
  }
  return RingElem::one(specs::Zv());
}

struct AlgebroidHom {
  int m = infinity;
  Par source = Par::Empty, target = Par::Empty;
  HeckeElt body;
};

inline bool membership_ok(const AlgebroidHom& h) {
  RingElem vv = laurent("v + v^-1");
  for (Gen j : par_letters(h.source))
    if (!(h.body * kl_gen(j, h.m) == vv * h.body)) return false;
  for (Gen k : par_letters(h.target))
    if (!(kl_gen(k, h.m) * h.body == vv * h.body)) return false;
  return true;
}

inline AlgebroidHom make_hom(Par source, Par target, HeckeElt body) {
  AlgebroidHom h{body.m, source, target, std::move(body)};
  if (!membership_ok(h))
    throw Error("membership check failed: body not in Hb_" + par_name(source) + " n b_" +
                par_name(target) + "H");
  return h;
}

inline HeckeElt divide_coeffs(const HeckeElt& a, const RingElem& den) {
  HeckeElt r{a.m, {}};
  for (const auto& [w, c] : a.coeffs) r.coeffs.emplace(w, c.divexact(den));
  return r;
}

// Star composition: a after b, renormalized by the middle object.
inline AlgebroidHom star(const AlgebroidHom& a, const AlgebroidHom& b) {
  if (a.m != b.m) throw Error("group size mismatch");
  if (a.source != b.target) throw Error("object mismatch in star composition");
  AlgebroidHom r;
  r.m = a.m;
  r.source = b.source;
  r.target = a.target;
  r.body = divide_coeffs(a.body * b.body, par_poincare(a.source, a.m));
  return r;
}

// Generator b_K in Hom(J, K) or Hom(K, J) for J < K differing by one index.
inline AlgebroidHom generator_hom(Par from, Par to, int m) {
  Par big = (par_letters(from).size() > par_letters(to).size()) ? from : to;
  return make_hom(from, to, b_par(big, m));
}

// A path like {Empty, R, P} denotes the morphism starting at the rightmost
// object and composing leftwards (paper reading order).
inline AlgebroidHom path_hom(const std::vector<Par>& path, int m) {
  if (path.size() < 2) {
    Par obj = path.empty() ? Par::Empty : path[0];
    return AlgebroidHom{m, obj, obj, b_par(obj, m)};
  }
  AlgebroidHom acc = generator_hom(path[path.size() - 1], path[path.size() - 2], m);
  for (int i = (int)path.size() - 3; i >= 0; --i)
    acc = star(generator_hom(path[i + 1], path[i], m), acc);
  return acc;
}

inline Report verify_algebroid(int m) {
  if (m == infinity || m < 2) throw Error("verify_algebroid requires finite m >= 2");
  Report rep;
  std::string suite = "algebroid(m=" + std::to_string(m) + ")";
  RingElem vv = laurent("v + v^-1");

  // b_{r o r} = (v+v^-1) b_r
  auto ror = path_hom({Par::R, Par::Empty, Par::R}, m);
  rep.add(suite, "b_{r o r} = (v+v^-1) b_r", ror.body == vv * b_par(Par::R, m));

  // b_{p r p} = [W]/(v+v^-1) b_p
  auto prp = path_hom({Par::P, Par::R, Par::P}, m);
  rep.add(suite, "b_{prp} = ([W]/(v+v^-1)) b_p",
          prp.body == poincare(m).divexact(vv) * b_par(Par::P, m));

  // b_{o r p} = b_{o b p} and b_{p r o} = b_{p b o}
  auto orp = path_hom({Par::Empty, Par::R, Par::P}, m);
  auto obp = path_hom({Par::Empty, Par::B, Par::P}, m);
  rep.add(suite, "b_{orp} = b_{obp}", orp.body == obp.body);
  auto pro = path_hom({Par::P, Par::R, Par::Empty}, m);
  auto pbo = path_hom({Par::P, Par::B, Par::Empty}, m);
  rep.add(suite, "b_{pro} = b_{pbo}", pro.body == pbo.body);

  // b_{i p r} = sum_n d^n_m b_{path n^r}
  Par i = (m % 2) ? Par::R : Par::B;
  auto ipr = path_hom({i, Par::P, Par::R}, m);
  auto t = pascal_tables(m);
  HeckeElt rhs = HeckeElt::zero(m);
  for (int n = 1; n <= m; ++n) {
    if (t.d[m][n] == 0) continue;
    // path \hat n_r: singletons alternating, rightmost r
    std::vector<Gen> word;
    Gen g = (n % 2) ? Gen::T : Gen::S;  // leftmost letter so that rightmost is t
    for (int j = 0; j < n; ++j) {
      word.push_back(g);
      g = other(g);
    }
    rhs = rhs + RingElem::from_rational(specs::Zv(), Rational(t.d[m][n])) * kl_word_product(word, m);
  }
  rep.add(suite, "b_{ipr} = sum_n d^n_m b_{path n^r}", ipr.body == rhs);

  // identity of End(J) acts as identity
  for (Par J : {Par::Empty, Par::B, Par::R, Par::P}) {
    AlgebroidHom idJ{m, J, J, b_par(J, m)};
    auto f = path_hom({Par::Empty, J == Par::Empty ? Par::B : J}, m);
    AlgebroidHom g{m, J, Par::Empty, f.body};
    auto gid = star(g, idJ);
    rep.add(suite, "identity at " + par_name(J) + " is neutral", gid.body == g.body);
  }

  // trace property: eps(a * b at o) = eps(b * a at J), with eps_J = eps/[J]
  bool trace_ok = true;
  std::string witness;
  for (Par J : {Par::B, Par::R, Par::P}) {
    std::vector<Par> down{Par::Empty, J}, up{J, Par::Empty};
    if (J == Par::P) {
      down = {Par::Empty, Par::B, Par::P};
      up = {Par::P, Par::R, Par::Empty};
    }
    auto a = path_hom(down, m);  // J -> o
    auto b = path_hom(up, m);    // o -> J
    RingElem lhs = epsilon(divide_coeffs(a.body * b.body, par_poincare(J, m)));
    RingElem rhs_tr;
    try {
      rhs_tr = epsilon(b.body * a.body).divexact(par_poincare(J, m));
    } catch (const ExactDivisionFailure&) {
      trace_ok = false;
      witness = "eps not divisible by [" + par_name(J) + "]";
      break;
    }
    if (!(lhs == rhs_tr)) {
      trace_ok = false;
      witness = "J=" + par_name(J);
      break;
    }
  }
  rep.add(suite, "eps(a*b) = eps(b*a) across objects", trace_ok, witness);

  return rep;
}

}  // namespace hecke
}  // namespace soergel
