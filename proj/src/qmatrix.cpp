#include "mih/qmatrix.hpp"

namespace mih {

namespace {

// Fraction-free Bareiss forward elimination on an integer matrix.  Returns
// the rank and leaves `m` in row echelon form (up to row order).
int bareiss_forward(QMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  Int prev(1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) swap(m(piv, j), m(r, j));
    Int p = m(r, c).get_num();
    for (int i = r + 1; i < rows; ++i) {
      Int head = m(i, c).get_num();
      for (int j = c; j < cols; ++j) {
        Int v = m(r, c).get_num() * m(i, j).get_num() -
                head * m(r, j).get_num();
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = Rat(v);
      }
    }
    prev = p;
    ++r;
  }
  return r;
}

}  // namespace

int bareiss_rank(QMatrix a) {
  // Clear denominators row by row; rank is unchanged.
  for (int i = 0; i < a.rows(); ++i) {
    Int l(1);
    for (int j = 0; j < a.cols(); ++j)
      l = lcm(l, a(i, j).get_den());
    if (l != 1)
      for (int j = 0; j < a.cols(); ++j) a(i, j) *= Rat(l);
  }
  return bareiss_forward(a);
}

RrefResult rref(const QMatrix& a) {
  QMatrix m = a;
  if (m.is_integral() && m.rows() > 2) {
    // Fraction-free forward pass keeps intermediate growth polynomial; the
    // back substitution below then normalizes to reduced echelon form.
    bareiss_forward(m);
  }
  int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < cols; ++j) swap(m(piv, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RrefResult res;
  res.rank = r;
  res.pivots = pivots;
  res.reduced = QMatrix(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) res.reduced(i, j) = m(i, j);
  return res;
}

QMatrix kernel(const QMatrix& a) {
  RrefResult r = rref(a);
  int n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(static_cast<int>(free_cols.size()), n);
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    int fc = free_cols[fi];
    k(static_cast<int>(fi), fc) = 1;
    for (int i = 0; i < r.rank; ++i)
      k(static_cast<int>(fi), r.pivots[i]) = -r.reduced(i, fc);
  }
  return k;
}

Signature signature(QMatrix s) {
  if (!s.is_symmetric()) throw std::invalid_argument("signature: not symmetric");
  int n = s.rows();
  Signature sig;
  for (int i = 0; i < n; ++i) {
    if (s(i, i) == 0) {
      int j = -1;
      for (int k = i + 1; k < n; ++k)
        if (s(k, k) != 0) { j = k; break; }
      if (j >= 0) {
        for (int c = 0; c < n; ++c) swap(s(i, c), s(j, c));
        for (int r = 0; r < n; ++r) swap(s(r, i), s(r, j));
      } else {
        // All remaining diagonal entries vanish; add row/col j into i where
        // s(i,j) != 0, which produces the nonzero diagonal entry 2*s(i,j).
        for (int k = i + 1; k < n; ++k)
          if (s(i, k) != 0) { j = k; break; }
        if (j < 0) { sig.n_zero++; continue; }
        for (int c = 0; c < n; ++c) s(i, c) += s(j, c);
        for (int r = 0; r < n; ++r) s(r, i) += s(r, j);
      }
    }
    Rat d = s(i, i);
    (sgn(d) > 0 ? sig.n_plus : sig.n_minus)++;
    for (int r = i + 1; r < n; ++r) {
      if (s(r, i) == 0) continue;
      Rat f = s(r, i) / d;
      for (int c = i; c < n; ++c) s(r, c) -= f * s(i, c);
      for (int c = 0; c < n; ++c) s(c, r) = s(r, c);
    }
  }
  return sig;
}

}  // namespace mih
