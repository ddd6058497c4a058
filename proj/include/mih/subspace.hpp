#pragma once

#include <optional>
#include <vector>

#include "mih/qmatrix.hpp"

namespace mih {

// Subspace of Q^n, basis rows kept in reduced echelon form.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace from_span(const QMatrix& rows) {
    Subspace s(rows.cols());
    s.basis_ = rref(rows).reduced;
    return s;
  }
  static Subspace full(int ambient) {
    Subspace s(ambient);
    s.basis_ = QMatrix::identity(ambient);
    return s;
  }

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }

  bool contains(const QMatrix& vec_row) const {
    QMatrix stacked(basis_.rows() + 1, ambient_);
    for (int i = 0; i < basis_.rows(); ++i)
      for (int j = 0; j < ambient_; ++j) stacked(i, j) = basis_(i, j);
    for (int j = 0; j < ambient_; ++j) stacked(basis_.rows(), j) = vec_row(0, j);
    return rref(stacked).rank == dim();
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_) return false;
    QMatrix stacked(basis_.rows() + other.dim(), ambient_);
    for (int i = 0; i < basis_.rows(); ++i)
      for (int j = 0; j < ambient_; ++j) stacked(i, j) = basis_(i, j);
    for (int i = 0; i < other.dim(); ++i)
      for (int j = 0; j < ambient_; ++j)
        stacked(basis_.rows() + i, j) = other.basis_(i, j);
    return rref(stacked).rank == dim();
  }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  // Coordinates of a vector in the rref basis; nullopt if outside.
  std::optional<std::vector<Rat>> coords_of(const QMatrix& vec_row) const {
    std::vector<Rat> coords(dim());
    // Pivot columns: first nonzero of each rref row.
    QMatrix rem = vec_row;
    for (int i = 0; i < dim(); ++i) {
      int piv = -1;
      for (int j = 0; j < ambient_; ++j)
        if (basis_(i, j) != 0) { piv = j; break; }
      coords[i] = rem(0, piv);
      if (coords[i] != 0)
        for (int j = 0; j < ambient_; ++j) rem(0, j) -= coords[i] * basis_(i, j);
    }
    for (int j = 0; j < ambient_; ++j)
      if (rem(0, j) != 0) return std::nullopt;
    return coords;
  }

  Subspace sum(const Subspace& o) const {
    QMatrix stacked(dim() + o.dim(), ambient_);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < ambient_; ++j) stacked(i, j) = basis_(i, j);
    for (int i = 0; i < o.dim(); ++i)
      for (int j = 0; j < ambient_; ++j) stacked(dim() + i, j) = o.basis_(i, j);
    return from_span(stacked);
  }

  Subspace intersect(const Subspace& o) const {
    // Kernel trick: pairs (x, y) with x in this, y in o, x = y.
    int k1 = dim(), k2 = o.dim();
    QMatrix eq(ambient_, k1 + k2);
    for (int j = 0; j < ambient_; ++j) {
      for (int i = 0; i < k1; ++i) eq(j, i) = basis_(i, j);
      for (int i = 0; i < k2; ++i) eq(j, k1 + i) = -o.basis_(i, j);
    }
    QMatrix ker = kernel(eq);
    QMatrix rows(ker.rows(), ambient_);
    for (int r = 0; r < ker.rows(); ++r)
      for (int j = 0; j < ambient_; ++j) {
        Rat v(0);
        for (int i = 0; i < k1; ++i) v += ker(r, i) * basis_(i, j);
        rows(r, j) = v;
      }
    return from_span(rows);
  }

 private:
  int ambient_;
  QMatrix basis_;
};

// { x : x^T gram w = 0 for all w in the subspace }.
inline Subspace perp(const QMatrix& gram, const Subspace& w) {
  if (gram.rows() != gram.cols() || gram.rows() != w.ambient_dim())
    throw std::invalid_argument("perp: dimension mismatch");
  // Constraint rows: (gram * w_i)^T.
  QMatrix c = w.basis() * gram.transpose();
  return Subspace::from_span(kernel(c));
}

}  // namespace mih
