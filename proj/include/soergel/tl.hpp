#pragma once

// The uncolored and two-colored Temperley-Lieb categories: crossingless
// matchings, composition with circle evaluation, tensor, rotation,
// Jones-Wenzl projectors via three independent constructions, negligibility,
// and associated polynomials.

#include "coxpoly.hpp"
#include "linalg.hpp"

#include <map>
#include <optional>
#include <vector>

namespace soergel {
namespace tl {

// ---------------------------------------------------------------------------
// Crossingless matchings.
//
// Boundary points are indexed cyclically: 0..nbot-1 along the bottom from
// left to right, then nbot..nbot+ntop-1 along the top from RIGHT to LEFT, so
// planarity is exactly non-interleaving on a circle.  The point just after
// the bottom-right one (cyclically) is the top-right one.
// ---------------------------------------------------------------------------

struct Matching {
  int nbot = 0, ntop = 0;
  std::vector<int> pair;  // fixed-point-free involution on nbot+ntop points

  int npoints() const { return nbot + ntop; }
  // index of the k-th top point counted from the left
  int top_from_left(int k) const { return nbot + ntop - 1 - k; }
  int bot(int k) const { return k; }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.nbot == b.nbot && a.ntop == b.ntop && a.pair == b.pair;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    if (a.nbot != b.nbot) return a.nbot < b.nbot;
    if (a.ntop != b.ntop) return a.ntop < b.ntop;
    return a.pair < b.pair;
  }
};

inline bool planar(const Matching& m) {
  int n = m.npoints();
  if (n % 2) return false;
  for (int i = 0; i < n; ++i)
    if (m.pair[i] == i || m.pair[m.pair[i]] != i) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int pi = m.pair[i], pj = m.pair[j];
      if (i < j && j < pi && pi < pj) return false;  // interleaving
    }
  return true;
}

inline Matching identity_matching(int n) {
  Matching m;
  m.nbot = m.ntop = n;
  m.pair.resize(2 * n);
  for (int k = 0; k < n; ++k) {
    m.pair[k] = m.top_from_left(k);
    m.pair[m.top_from_left(k)] = k;
  }
  return m;
}

// cap at bottom positions (j, j+1): n -> n-2
inline Matching cap_matching(int n, int j) {
  Matching m;
  m.nbot = n;
  m.ntop = n - 2;
  m.pair.assign(2 * n - 2, -1);
  auto link = [&m](int a, int b) {
    m.pair[a] = b;
    m.pair[b] = a;
  };
  link(j, j + 1);
  for (int k = 0; k < j; ++k) link(k, m.top_from_left(k));
  for (int k = j + 2; k < n; ++k) link(k, m.top_from_left(k - 2));
  return m;
}

// cup at top positions (j, j+1): n -> n+2
inline Matching cup_matching(int n, int j) {
  Matching m;
  m.nbot = n;
  m.ntop = n + 2;
  m.pair.assign(2 * n + 2, -1);
  auto link = [&m](int a, int b) {
    m.pair[a] = b;
    m.pair[b] = a;
  };
  link(m.top_from_left(j), m.top_from_left(j + 1));
  for (int k = 0; k < j; ++k) link(k, m.top_from_left(k));
  for (int k = j; k < n; ++k) link(k, m.top_from_left(k + 2));
  return m;
}

inline Matching e_matching(int n, int j) {  // cup_j after cap_j, as one diagram
  Matching m;
  m.nbot = m.ntop = n;
  m.pair.assign(2 * n, -1);
  auto link = [&m](int a, int b) {
    m.pair[a] = b;
    m.pair[b] = a;
  };
  link(j, j + 1);
  link(m.top_from_left(j), m.top_from_left(j + 1));
  for (int k = 0; k < n; ++k)
    if (k != j && k != j + 1) link(k, m.top_from_left(k));
  return m;
}

// All crossingless (nbot, ntop)-matchings.
inline std::vector<Matching> all_matchings(int nbot, int ntop) {
  std::vector<Matching> out;
  if ((nbot + ntop) % 2) return out;
  if (nbot + ntop == 0) {
    out.push_back(Matching{0, 0, {}});
    return out;
  }
  std::vector<int> pair(nbot + ntop, -1);
  std::vector<int> pts(nbot + ntop);
  for (int i = 0; i < nbot + ntop; ++i) pts[i] = i;
  // pairings of cyclic points with both endpoints at even distance
  std::vector<std::vector<int>> opts;
  std::function<void(std::vector<int>&, std::vector<std::vector<int>>&)> fill =
      [&fill](std::vector<int>& p, std::vector<std::vector<int>>& o) {
        if (p.empty()) {
          o.push_back({});
          return;
        }
        int x = p[0];
        for (size_t k = 1; k < p.size(); k += 2) {
          int y = p[k];
          std::vector<int> in(p.begin() + 1, p.begin() + k);
          std::vector<int> outr(p.begin() + k + 1, p.end());
          std::vector<std::vector<int>> io, oo;
          fill(in, io);
          fill(outr, oo);
          for (auto& a : io)
            for (auto& b : oo) {
              std::vector<int> rec{x, y};
              rec.insert(rec.end(), a.begin(), a.end());
              rec.insert(rec.end(), b.begin(), b.end());
              o.push_back(std::move(rec));
            }
        }
      };
  fill(pts, opts);
  for (const auto& rec : opts) {
    Matching m;
    m.nbot = nbot;
    m.ntop = ntop;
    m.pair.assign(nbot + ntop, -1);
    for (size_t k = 0; k + 1 < rec.size(); k += 2) {
      m.pair[rec[k]] = rec[k + 1];
      m.pair[rec[k + 1]] = rec[k];
    }
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// TLMorphism
// ---------------------------------------------------------------------------

enum class TLColor { None, B, R };
inline TLColor flipc(TLColor c) {
  if (c == TLColor::None) return c;
  return c == TLColor::B ? TLColor::R : TLColor::B;
}
inline TLColor flipn(TLColor c, int n) { return (n % 2) ? flipc(c) : c; }

struct TLMorphism {
  Spec spec;
  int nbot = 0, ntop = 0;
  TLColor align = TLColor::None;  // color of the region right of everything
  std::map<Matching, RingElem> terms;

  bool colored() const { return align != TLColor::None; }

  void add_term(const Matching& m, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  friend TLMorphism operator+(const TLMorphism& a, const TLMorphism& b) {
    TLMorphism r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend TLMorphism operator-(const TLMorphism& a, const TLMorphism& b) { return a + (-b); }
  TLMorphism operator-() const {
    TLMorphism r = *this;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
  }
  friend TLMorphism operator*(const RingElem& c, const TLMorphism& a) {
    TLMorphism r = a;
    r.terms.clear();
    for (const auto& [m, x] : a.terms) r.add_term(m, c * x);
    return r;
  }
  friend bool operator==(const TLMorphism& a, const TLMorphism& b) {
    return a.nbot == b.nbot && a.ntop == b.ntop && a.align == b.align && a.terms == b.terms;
  }

  RingElem coefficient(const Matching& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? RingElem::zero(spec) : it->second;
  }
};

inline TLMorphism tl_zero(const Spec& spec, int nbot, int ntop, TLColor align) {
  return TLMorphism{spec, nbot, ntop, align, {}};
}
inline TLMorphism tl_single(const Spec& spec, const Matching& m, TLColor align,
                            const RingElem& c) {
  TLMorphism r{spec, m.nbot, m.ntop, align, {}};
  r.add_term(m, c);
  return r;
}
inline TLMorphism tl_identity(const Spec& spec, int n, TLColor align) {
  return tl_single(spec, identity_matching(n), align, RingElem::one(spec));
}

// The deformation parameters (x, y) as elements of the spec: the two-color
// variables when present, otherwise both equal to the image of d.
inline std::pair<RingElem, RingElem> xy_images(const Spec& spec) {
  if (spec->scalar_base()->variant == Variant::TwoColor) {
    return {convert(RingElem::variable(specs::Zxy(), 0), spec),
            convert(RingElem::variable(specs::Zxy(), 1), spec)};
  }
  RingElem d = qnum(2, spec);
  return {d, d};
}

// Scalar of a closed circle whose interior has the given color.
// Red interior evaluates to -x, blue to -y; uncolored circles to -d.
inline RingElem circle_scalar(const Spec& spec, TLColor interior) {
  auto [x, y] = xy_images(spec);
  if (interior == TLColor::R) return -x;
  if (interior == TLColor::B) return -y;
  return -qnum(2, spec);
}

// Color of region j (0..n) of an n-point object with the given alignment.
inline TLColor region_color(int n, TLColor align, int j) { return flipn(align, n - j); }

// ---------------------------------------------------------------------------
// Composition, tensor, rotation
// ---------------------------------------------------------------------------

namespace detail {

// Glue g's top to f's bottom; returns the matching and the multiset of
// circle interior depths (b - P for rightmost interface position P, whose
// parity determines the interior color).
struct GlueResult {
  Matching m;
  std::vector<int> circle_flips;  // number of color flips from the alignment
};

inline GlueResult glue(const Matching& f, const Matching& g) {
  if (f.nbot != g.ntop) throw Error("boundary mismatch in composition");
  int a = g.nbot, b = g.ntop, c = f.ntop;
  GlueResult res;
  res.m.nbot = a;
  res.m.ntop = c;
  res.m.pair.assign(a + c, -1);

  // interface position k (0..b-1, from the left) is g-point a+b-1-k and
  // f-point k; side 0 = g, side 1 = f
  auto point_of = [&](int side, int k) { return side == 0 ? a + b - 1 - k : k; };
  auto iface_pos = [&](int side, int p) -> int {
    if (side == 0) return p >= a ? a + b - 1 - p : -1;
    return p < b ? p : -1;
  };
  auto pair_of = [&](int side, int p) { return side == 0 ? g.pair[p] : f.pair[p]; };
  auto result_index = [&](int side, int p) { return side == 0 ? p : a - b + p; };

  std::vector<bool> seen(b, false);

  // strands with external endpoints
  for (int side0 = 0; side0 < 2; ++side0) {
    int lo = side0 == 0 ? 0 : b, hi = side0 == 0 ? a : b + c;
    for (int start = lo; start < hi; ++start) {
      if (res.m.pair[result_index(side0, start)] != -1) continue;
      int s = side0, q = pair_of(s, start);
      while (true) {
        int k = iface_pos(s, q);
        if (k < 0) break;
        seen[k] = true;
        s = 1 - s;
        q = pair_of(s, point_of(s, k));
      }
      int ra = result_index(side0, start), rb = result_index(s, q);
      res.m.pair[ra] = rb;
      res.m.pair[rb] = ra;
    }
  }

  // closed loops: every remaining interface position lies on a circle
  for (int k0 = 0; k0 < b; ++k0) {
    if (seen[k0]) continue;
    int maxpos = k0;
    int cur = k0, side = 0;
    do {
      int q = pair_of(side, point_of(side, cur));
      int knext = iface_pos(side, q);
      seen[knext] = true;
      maxpos = std::max(maxpos, knext);
      cur = knext;
      side = 1 - side;
    } while (!(cur == k0 && side == 0));
    res.circle_flips.push_back(b - maxpos);
  }
  return res;
}

}  // namespace detail

inline TLMorphism compose(const TLMorphism& f, const TLMorphism& g) {
  if (!same_spec(f.spec, g.spec)) throw Error("spec mismatch in composition");
  if (f.nbot != g.ntop) throw Error("boundary mismatch: compose(f, g) needs f.source = g.target");
  if (f.align != g.align) throw Error("color mismatch in composition");
  TLMorphism r = tl_zero(f.spec, g.nbot, f.ntop, f.align);
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms) {
      auto glued = detail::glue(mf, mg);
      RingElem coef = cf * cg;
      for (int flips : glued.circle_flips) {
        TLColor interior = (flips % 2) ? flipc(f.align) : f.align;
        // uncolored mode: interior color is ignored by circle_scalar
        coef = coef * circle_scalar(f.spec, f.align == TLColor::None ? TLColor::None : interior);
      }
      r.add_term(glued.m, coef);
    }
  return r;
}

inline TLMorphism tensor(const TLMorphism& f, const TLMorphism& g) {
  if (!same_spec(f.spec, g.spec)) throw Error("spec mismatch in tensor");
  if (f.colored() != g.colored()) throw Error("mode mismatch in tensor");
  if (f.colored()) {
    // seam: f's far-right region must equal g's far-left region
    if (f.align != flipn(g.align, g.nbot))
      throw Error("color mismatch at the tensor seam");
  }
  TLMorphism r = tl_zero(f.spec, f.nbot + g.nbot, f.ntop + g.ntop, g.align);
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms) {
      Matching m;
      m.nbot = f.nbot + g.nbot;
      m.ntop = f.ntop + g.ntop;
      m.pair.assign(m.npoints(), -1);
      auto fmap = [&](int p) {
        if (p < mf.nbot) return p;                          // f bottom
        int k = mf.nbot + mf.ntop - 1 - p;                  // from left
        return m.top_from_left(k);
      };
      auto gmap = [&](int p) {
        if (p < mg.nbot) return f.nbot + p;                 // g bottom
        int k = mg.nbot + mg.ntop - 1 - p;
        return m.top_from_left(f.ntop + k);
      };
      for (int p = 0; p < mf.npoints(); ++p) {
        int q = mf.pair[p];
        m.pair[fmap(p)] = fmap(q);
      }
      for (int p = 0; p < mg.npoints(); ++p) {
        int q = mg.pair[p];
        m.pair[gmap(p)] = gmap(q);
      }
      r.add_term(m, cf * cg);
    }
  return r;
}

// Move the top-right boundary point to the bottom-right (dir = +1) or the
// bottom-right point to the top-right (dir = -1).  Pure relabeling in the
// cyclic encoding; the alignment flips.
inline TLMorphism rotate(const TLMorphism& f, int dir = +1) {
  if (dir == +1 && f.ntop == 0) throw Error("rotate: no top points");
  if (dir == -1 && f.nbot == 0) throw Error("rotate: no bottom points");
  TLMorphism r = tl_zero(f.spec, f.nbot + dir, f.ntop - dir, flipc(f.align));
  for (const auto& [m, c] : f.terms) {
    Matching m2 = m;
    m2.nbot += dir;
    m2.ntop -= dir;
    r.add_term(m2, c);
  }
  return r;
}

// Full rotation by one strand: top-right moves down AND bottom-left moves up.
// Cyclic relabeling p -> p-1; the alignment flips once.
inline TLMorphism strand_rotate(const TLMorphism& f) {
  TLMorphism r = tl_zero(f.spec, f.nbot, f.ntop, flipc(f.align));
  int N = f.nbot + f.ntop;
  for (const auto& [m, c] : f.terms) {
    Matching m2 = m;
    for (int p = 0; p < N; ++p) m2.pair[(p + N - 1) % N] = (m.pair[p] + N - 1) % N;
    r.add_term(m2, c);
  }
  return r;
}

inline TLMorphism strand_rotate_inv(const TLMorphism& f) {
  TLMorphism r = tl_zero(f.spec, f.nbot, f.ntop, flipc(f.align));
  int N = f.nbot + f.ntop;
  for (const auto& [m, c] : f.terms) {
    Matching m2 = m;
    for (int p = 0; p < N; ++p) m2.pair[(p + 1) % N] = (m.pair[p] + 1) % N;
    r.add_term(m2, c);
  }
  return r;
}

// Horizontal (left-right mirror) and vertical (transpose) flips.
inline TLMorphism hflip(const TLMorphism& f) {
  TLMorphism r = tl_zero(f.spec, f.nbot, f.ntop, flipn(f.align, f.nbot));
  for (const auto& [m, c] : f.terms) {
    Matching m2 = m;
    auto mirror = [&](int p) {
      if (p < m.nbot) return m.nbot - 1 - p;
      int k = m.nbot + m.ntop - 1 - p;  // from left
      return m.top_from_left(m.ntop - 1 - k);
    };
    for (int p = 0; p < m.npoints(); ++p) m2.pair[mirror(p)] = mirror(m.pair[p]);
    r.add_term(m2, c);
  }
  return r;
}

inline TLMorphism vflip(const TLMorphism& f) {
  TLMorphism r = tl_zero(f.spec, f.ntop, f.nbot, f.align);
  for (const auto& [m, c] : f.terms) {
    Matching m2;
    m2.nbot = m.ntop;
    m2.ntop = m.nbot;
    m2.pair.assign(m.npoints(), -1);
    auto swap_bt = [&](int p) {
      if (p < m.nbot) return m2.top_from_left(p);  // bottom k-th from left -> top k-th
      int k = m.nbot + m.ntop - 1 - p;
      return k;  // top k-th from left -> bottom k-th
    };
    for (int p = 0; p < m.npoints(); ++p) m2.pair[swap_bt(p)] = swap_bt(m.pair[p]);
    r.add_term(m2, c);
  }
  return r;
}

// Close the rightmost strand around the right side (partial trace); the
// alignment flips.  dir `left` closes around the left side instead.
inline TLMorphism close_right(const TLMorphism& f) {
  if (f.nbot == 0 || f.ntop == 0) throw Error("close_right requires strands on both boundaries");
  TLMorphism r = tl_zero(f.spec, f.nbot - 1, f.ntop - 1, flipc(f.align));
  int pb = f.nbot - 1, pt = f.nbot;  // bottom-right and top-right points
  for (const auto& [m, c] : f.terms) {
    RingElem coef = c;
    Matching m2;
    m2.nbot = f.nbot - 1;
    m2.ntop = f.ntop - 1;
    m2.pair.assign(m.npoints() - 2, -1);
    auto newidx = [&](int p) { return p < pb ? p : p - 2; };
    if (m.pair[pb] == pt) {
      // closing a through strand: circle around the far-right region
      TLColor interior = f.align;
      coef = coef * circle_scalar(f.spec, f.align == TLColor::None ? TLColor::None : interior);
      for (int p = 0; p < m.npoints(); ++p) {
        if (p == pb || p == pt) continue;
        m2.pair[newidx(p)] = newidx(m.pair[p]);
      }
    } else {
      int u = m.pair[pb], v = m.pair[pt];
      for (int p = 0; p < m.npoints(); ++p) {
        if (p == pb || p == pt || p == u || p == v) continue;
        m2.pair[newidx(p)] = newidx(m.pair[p]);
      }
      m2.pair[newidx(u)] = newidx(v);
      m2.pair[newidx(v)] = newidx(u);
    }
    r.add_term(m2, coef);
  }
  return r;
}

inline TLMorphism close_left(const TLMorphism& f) {
  if (f.nbot == 0 || f.ntop == 0) throw Error("close_left requires strands on both boundaries");
  TLMorphism r = tl_zero(f.spec, f.nbot - 1, f.ntop - 1, f.align);
  int pb = 0, pt = f.nbot + f.ntop - 1;  // bottom-left and top-left points
  for (const auto& [m, c] : f.terms) {
    RingElem coef = c;
    Matching m2;
    m2.nbot = f.nbot - 1;
    m2.ntop = f.ntop - 1;
    m2.pair.assign(m.npoints() - 2, -1);
    auto newidx = [&](int p) { return p - 1; };  // drop points 0 and last
    if (m.pair[pb] == pt) {
      TLColor interior = flipn(f.align, f.nbot);  // far-left region
      coef = coef * circle_scalar(f.spec, f.align == TLColor::None ? TLColor::None : interior);
      for (int p = 1; p < pt; ++p) m2.pair[newidx(p)] = newidx(m.pair[p]);
    } else {
      int u = m.pair[pb], v = m.pair[pt];
      for (int p = 1; p < pt; ++p) {
        if (p == u || p == v) continue;
        m2.pair[newidx(p)] = newidx(m.pair[p]);
      }
      m2.pair[newidx(u)] = newidx(v);
      m2.pair[newidx(v)] = newidx(u);
    }
    r.add_term(m2, coef);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Jones-Wenzl projectors
// ---------------------------------------------------------------------------

enum class JWMethod { FK, Wenzl, Solve };

namespace detail {

// [k] colored by the region color (B -> x, R -> y), or plain [k] uncolored.
inline RingElem qnum_colored(const Spec& spec, int k, TLColor region) {
  // over d-based rings the two colored quantum numbers coincide with [k]
  if (region == TLColor::None || spec->scalar_base()->variant != Variant::TwoColor)
    return qnum(k, spec);
  return convert(qnum2(k, region == TLColor::B ? Color::X : Color::Y), spec);
}

inline RingElem invert_qnum(const Spec& spec, int k, TLColor region) {
  RingElem q = qnum_colored(spec, k, region);
  try {
    return q.inverse();
  } catch (const NonInvertible&) {
    throw NonInvertibleQuantumNumber(k, q.str());
  }
}

}  // namespace detail

inline TLMorphism jw(int n, const Spec& spec, TLColor align, JWMethod method = JWMethod::FK);

namespace detail {

inline TLMorphism jw_fk(int n, const Spec& spec, TLColor align) {
  if (n == 0) return tl_identity(spec, 0, align);
  TLMorphism sub = jw_fk(n - 1, spec, flipc(align));
  TLMorphism ext = tensor(sub, tl_identity(spec, 1, align));
  // tail: 1 + sum_a [a]_{c(region_a)} / [n]_{c(align)} * e_{n-1} o ... o e_a
  TLMorphism tail = tl_identity(spec, n, align);
  if (n >= 2) {
    RingElem inv_n = invert_qnum(spec, n, align);
    TLMorphism sweep = tl_identity(spec, n, align);
    for (int a = n - 1; a >= 1; --a) {
      // accumulate e_{n-1} o ... o e_a as a single matching composite
      sweep = compose(sweep, tl_single(spec, e_matching(n, a - 1), align, RingElem::one(spec)));
      TLColor reg = region_color(n, align, a);
      tail = tail + (qnum_colored(spec, a, reg) * inv_n) * sweep;
    }
  }
  return compose(ext, tail);
}

inline TLMorphism jw_wenzl(int n, const Spec& spec, TLColor align) {
  if (n == 0) return tl_identity(spec, 0, align);
  TLMorphism sub = jw_wenzl(n - 1, spec, flipc(align));
  TLMorphism ext = tensor(sub, tl_identity(spec, 1, align));
  if (n == 1) return ext;
  RingElem c = qnum_colored(spec, n - 1, region_color(n, align, n - 1)) *
               invert_qnum(spec, n, align);
  TLMorphism e = tl_single(spec, e_matching(n, n - 2), align, RingElem::one(spec));
  return ext + c * compose(compose(ext, e), ext);
}

inline TLMorphism jw_solve(int n, const Spec& spec, TLColor align) {
  auto matchings = all_matchings(n, n);
  std::map<Matching, int> index;
  for (size_t i = 0; i < matchings.size(); ++i) index[matchings[i]] = (int)i;
  // rows: for each cap position j and each target matching, the coefficient
  // equation from cap_j o JW = 0; eliminating sparsest rows first keeps the
  // fill-in small
  std::vector<linalg::Row> allrows;
  for (int j = 0; j + 1 < n; ++j) {
    TLMorphism cap = tl_single(spec, cap_matching(n, j), align, RingElem::one(spec));
    std::map<Matching, linalg::Row> rows;
    for (size_t i = 0; i < matchings.size(); ++i) {
      TLMorphism img = compose(cap, tl_single(spec, matchings[i], align, RingElem::one(spec)));
      for (const auto& [m, c] : img.terms) rows[m][(int)i] = c;
    }
    for (auto& [m, row] : rows) allrows.push_back(std::move(row));
  }
  std::stable_sort(allrows.begin(), allrows.end(),
                   [](const linalg::Row& a, const linalg::Row& b) { return a.size() < b.size(); });
  linalg::Eliminator elim(spec, (int)matchings.size());
  for (auto& row : allrows) elim.add_row(std::move(row));
  auto kernel = elim.kernel_basis();
  int id_col = index.at(identity_matching(n));
  if (kernel.empty()) throw NoSolution();
  if (kernel.size() > 1) throw NonUniqueSolution();
  RingElem lead = kernel[0][id_col];
  if (lead.is_zero()) throw NoSolution();
  RingElem inv = lead.inverse();
  TLMorphism out = tl_zero(spec, n, n, align);
  for (size_t i = 0; i < matchings.size(); ++i)
    out.add_term(matchings[i], kernel[0][i] * inv);
  return out;
}

}  // namespace detail

inline TLMorphism jw(int n, const Spec& spec, TLColor align, JWMethod method) {
  static std::map<std::string, TLMorphism> cache;
  std::string key = std::to_string(n) + "|" + spec->name + "|" + std::to_string((int)align) +
                    "|" + std::to_string((int)method);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  // The torsion ring admits no division mid-recursion; construct over the
  // fraction field and specialize.
  if (spec->variant == Variant::Quotient && spec->quot == QuotKind::TorsionZd) {
    if (align != TLColor::None) throw Error("torsion-ring JW is uncolored");
    TLMorphism lift = jw(n, specs::fraction(specs::Qd()), align, method);
    TLMorphism out = tl_zero(spec, n, n, align);
    for (const auto& [m, c] : lift.terms) out.add_term(m, convert(c, spec));
    return out;
  }
  TLMorphism out;
  switch (method) {
    case JWMethod::FK: out = detail::jw_fk(n, spec, align); break;
    case JWMethod::Wenzl: out = detail::jw_wenzl(n, spec, align); break;
    case JWMethod::Solve: out = detail::jw_solve(n, spec, align); break;
  }
  cache.emplace(key, out);
  return out;
}

// Coefficient in JW_n of the one-strand rotation of the identity.
inline RingElem rotation_coefficient(int n, const Spec& spec, TLColor align = TLColor::None) {
  TLMorphism rot_id = strand_rotate(tl_identity(spec, n, flipc(align)));
  TLMorphism J = jw(n, spec, align);
  return J.coefficient(rot_id.terms.begin()->first);
}

// Tests whether strand-rotating JW_{m-1} gives a scalar times the
// opposite-aligned JW_{m-1}; returns the scalar if so.
inline std::optional<RingElem> rotation_eigenvalue(int m, const Spec& spec,
                                                   TLColor align = TLColor::None) {
  TLMorphism J = jw(m - 1, spec, align);
  TLMorphism R = strand_rotate(J);
  TLMorphism J2 = jw(m - 1, spec, flipc(align));
  RingElem scalar = R.coefficient(identity_matching(m - 1));
  if ((scalar * J2) == R) return scalar;
  return std::nullopt;
}

// Killed by every single cap on top, cup on bottom, and side closure.
inline bool is_negligible(const TLMorphism& f) {
  for (int j = 0; j + 1 < f.ntop; ++j) {
    TLMorphism cap = tl_single(f.spec, cap_matching(f.ntop, j), f.align, RingElem::one(f.spec));
    if (!compose(cap, f).is_zero()) return false;
  }
  for (int j = 0; j + 1 < f.nbot; ++j) {
    TLMorphism cup = tl_single(f.spec, cup_matching(f.nbot - 2, j), f.align, RingElem::one(f.spec));
    if (!compose(f, cup).is_zero()) return false;
  }
  if (f.nbot > 0 && f.ntop > 0) {
    if (!close_right(f).is_zero()) return false;
    if (!close_left(f).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Associated polynomials
// ---------------------------------------------------------------------------

// alpha_s^{#blue regions} alpha_t^{#red regions}, summed over terms.
inline cox::Poly assoc_poly(const TLMorphism& f, const cox::Realization& real) {
  if (!f.colored()) throw Error("assoc_poly requires a two-colored morphism");
  if (!same_spec(f.spec, real.spec)) throw Error("assoc_poly spec mismatch");
  cox::Poly out(real.spec);
  for (const auto& [m, c] : f.terms) {
    int N = m.npoints();
    // union-find on boundary arcs; arc p sits cyclically after point p
    std::vector<int> uf(N);
    for (int i = 0; i < N; ++i) uf[i] = i;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    auto unite = [&](int x, int y) { uf[find(x)] = find(y); };
    for (int p = 0; p < N; ++p) {
      int q = m.pair[p];
      unite(p, (q + N - 1) % N);  // after(p) ~ before(q)
    }
    // color of arc p: flips once per point crossed from the far-right arc
    int ref = m.nbot - 1 >= 0 ? m.nbot - 1 : N - 1;
    std::map<int, TLColor> colors;
    int nblue = 0, nred = 0;
    for (int p = 0; p < N; ++p) {
      int flips = ((p - ref) % N + N) % N;
      TLColor c2 = (flips % 2) ? flipc(f.align) : f.align;
      int root = find(p);
      auto it = colors.find(root);
      if (it == colors.end()) {
        colors[root] = c2;
        if (c2 == TLColor::B) ++nblue;
        else ++nred;
      }
    }
    cox::AExp e{nblue, nred, 0};
    out.add_term(e, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string matching_pairs_str(const Matching& m) {
  std::string s = "[";
  bool first = true;
  for (int p = 0; p < m.npoints(); ++p) {
    int q = m.pair[p];
    if (q < p) continue;
    if (!first) s += ",";
    first = false;
    s += "[" + std::to_string(p) + "," + std::to_string(q) + "]";
  }
  return s + "]";
}

// A small ASCII rendering: bottom and top points with pair labels.
inline std::string render_ascii(const Matching& m) {
  std::string top, bot;
  std::vector<int> label(m.npoints(), -1);
  int next = 0;
  for (int p = 0; p < m.npoints(); ++p) {
    if (label[p] == -1) {
      label[p] = next;
      label[m.pair[p]] = next;
      ++next;
    }
  }
  for (int k = 0; k < m.ntop; ++k) top += (char)('a' + (label[m.top_from_left(k)] % 26));
  for (int k = 0; k < m.nbot; ++k) bot += (char)('a' + (label[k] % 26));
  return top + "\n" + std::string(std::max(m.nbot, m.ntop), '-') + "\n" + bot;
}

}  // namespace tl
}  // namespace soergel
