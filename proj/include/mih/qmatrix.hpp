#pragma once

#include <cassert>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mih/rat.hpp"

namespace mih {

// Dense matrix over Q.  No floating point anywhere.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix operator*(const QMatrix& o) const {
    assert(cols_ == o.rows_);
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& b = o(k, j);
          if (b != 0) r(i, j) += a * b;
        }
      }
    return r;
  }

  QMatrix operator+(const QMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    QMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }
  QMatrix operator-(const QMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    QMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
  }
  QMatrix operator*(const Rat& s) const {
    QMatrix r = *this;
    for (auto& x : r.e_) x *= s;
    return r;
  }
  bool is_zero() const {
    for (const auto& x : e_) if (x != 0) return false;
    return true;
  }

  bool is_integral() const {
    for (const auto& x : e_)
      if (x.get_den() != 1) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> e_;
};

struct RrefResult {
  int rank = 0;
  QMatrix reduced;          // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column per nonzero row
};

// Reduced row echelon form.  Integer inputs go through fraction-free Bareiss
// elimination before the final normalization; rational inputs use exact
// Gauss-Jordan.
RrefResult rref(const QMatrix& a);

// Basis of {v : a v = 0}, rows of the result, in reduced echelon form.
QMatrix kernel(const QMatrix& a);

// Rank via Bareiss on the integer matrix obtained by clearing denominators
// row by row.  Used as an independent route in tests.
int bareiss_rank(QMatrix a);

struct Signature {
  int n_plus = 0, n_minus = 0, n_zero = 0;
};

// Signature of a symmetric matrix by exact symmetric congruence
// diagonalization.  Throws if the matrix is not symmetric.
Signature signature(QMatrix s);

}  // namespace mih
