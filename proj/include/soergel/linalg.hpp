#pragma once

// Exact sparse Gaussian elimination over a field-like RingSpec.  Used for
// the Jones-Wenzl solver, invariant bases, Frobenius dual bases and graded
// Hom-space computation.

#include "rings.hpp"

#include <map>
#include <vector>

namespace soergel {
namespace linalg {

using Row = std::map<int, RingElem>;  // column -> nonzero entry

class Eliminator {
 public:
  Eliminator(Spec spec, int ncols) : spec_(std::move(spec)), ncols_(ncols) {}

  // Reduce a row against the current pivots and install it if nonzero.
  void add_row(Row row) {
    while (!row.empty()) {
      int lead = row.begin()->first;
      auto piv = pivot_.find(lead);
      if (piv == pivot_.end()) {
        RingElem inv = row.begin()->second.inverse();
        for (auto& [c, x] : row) x = x * inv;
        pivot_[lead] = (int)rows_.size();
        rows_.push_back(std::move(row));
        return;
      }
      RingElem factor = row.begin()->second;
      const Row& prow = rows_[piv->second];
      for (const auto& [c, x] : prow) {
        auto it = row.find(c);
        RingElem delta = factor * x;
        if (it == row.end()) {
          row.emplace(c, -delta);
        } else {
          it->second = it->second - delta;
          if (it->second.is_zero()) row.erase(it);
        }
      }
    }
  }

  int rank() const { return (int)rows_.size(); }
  int ncols() const { return ncols_; }
  int nullity() const { return ncols_ - rank(); }

  // Basis of the kernel, one dense vector per free column.
  std::vector<std::vector<RingElem>> kernel_basis() const {
    std::vector<std::vector<RingElem>> out;
    std::vector<int> pivcols;
    for (const auto& [c, r] : pivot_) pivcols.push_back(c);
    for (int f = 0; f < ncols_; ++f) {
      if (pivot_.count(f)) continue;
      std::vector<RingElem> x(ncols_, RingElem::zero(spec_));
      x[f] = RingElem::one(spec_);
      // back-substitute over pivot columns in descending order
      for (auto it = pivcols.rbegin(); it != pivcols.rend(); ++it) {
        int p = *it;
        const Row& prow = rows_[pivot_.at(p)];
        RingElem acc = RingElem::zero(spec_);
        for (const auto& [c, v] : prow)
          if (c != p && !x[c].is_zero()) acc = acc + v * x[c];
        x[p] = -acc;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  Spec spec_;
  int ncols_;
  std::vector<Row> rows_;
  std::map<int, int> pivot_;  // column -> row index
};

// Solve A x = b exactly; throws NoSolution / NonUniqueSolution.
inline std::vector<RingElem> solve_unique(const Spec& spec, int ncols,
                                          const std::vector<Row>& rows,
                                          const std::vector<RingElem>& rhs) {
  // Augment with the right-hand side in column ncols.
  Eliminator elim(spec, ncols + 1);
  for (size_t i = 0; i < rows.size(); ++i) {
    Row r = rows[i];
    if (!rhs[i].is_zero()) r[ncols] = -rhs[i];
    elim.add_row(std::move(r));
  }
  auto ker = elim.kernel_basis();
  // A kernel vector (x, t) of the augmented system with t != 0 gives the
  // solution x/t; vectors with t = 0 span the homogeneous solutions.
  const std::vector<RingElem>* sol = nullptr;
  int nsol = 0;
  bool homogeneous = false;
  for (const auto& k : ker) {
    if (k[ncols].is_zero()) homogeneous = true;
    else {
      sol = &k;
      ++nsol;
    }
  }
  if (nsol == 0) throw NoSolution();
  if (nsol > 1 || homogeneous) throw NonUniqueSolution();
  RingElem scale = (*sol)[ncols].inverse();
  std::vector<RingElem> x(ncols, RingElem::zero(spec));
  for (int c = 0; c < ncols; ++c) x[c] = (*sol)[c] * scale;
  return x;
}

}  // namespace linalg
}  // namespace soergel
