#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mih/qmatrix.hpp"
#include "mih/sparse.hpp"
#include "mih/subspace.hpp"

using namespace mih;

namespace {

QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  QMatrix m(static_cast<int>(rows.size()),
            rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Rat(rows[i][j]);
  return m;
}

// det(x I - s) computed by evaluation at n+1 integer points (plain rational
// elimination) and Lagrange interpolation.  Test-only oracle, independent of
// the congruence-diagonalization path.
std::vector<Rat> char_poly(const QMatrix& s) {
  int n = s.rows();
  auto det_at = [&](long x) {
    QMatrix m = s * Rat(-1);
    for (int i = 0; i < n; ++i) m(i, i) += Rat(x);
    Rat det(1);
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (m(i, c) != 0) { piv = i; break; }
      if (piv < 0) return Rat(0);
      if (piv != r) {
        for (int j = 0; j < n; ++j) swap(m(piv, j), m(r, j));
        det = -det;
      }
      det *= m(r, c);
      for (int i = r + 1; i < n; ++i) {
        if (m(i, c) == 0) continue;
        Rat f = m(i, c) / m(r, c);
        for (int j = c; j < n; ++j) m(i, j) -= f * m(r, j);
      }
      ++r;
    }
    return det;
  };
  // Lagrange interpolation on points 0..n.
  std::vector<Rat> coeffs(n + 1, Rat(0));
  for (long k = 0; k <= n; ++k) {
    Rat yk = det_at(k);
    // Basis polynomial prod_{j != k} (x - j) / (k - j), expanded.
    std::vector<Rat> basis = {Rat(1)};
    Rat denom(1);
    for (long j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= Rat(j) * basis[i];
      }
      basis = next;
      denom *= Rat(k - j);
    }
    for (size_t i = 0; i < basis.size(); ++i) coeffs[i] += yk * basis[i] / denom;
  }
  return coeffs;
}

// Exact sign-change counts: valid for real-rooted polynomials.
Signature signature_by_descartes(const QMatrix& s) {
  auto c = char_poly(s);
  Signature sig;
  int first = 0;
  while (first < static_cast<int>(c.size()) && c[first] == 0) ++first;
  sig.n_zero = first;
  auto changes = [&](bool flip) {
    int cnt = 0, prev = 0;
    for (size_t i = first; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      int sg = sgn(c[i]);
      if (flip && ((i - first) % 2 == 1)) sg = -sg;
      if (prev != 0 && sg != prev) ++cnt;
      prev = sg;
    }
    return cnt;
  };
  sig.n_plus = changes(false);
  sig.n_minus = changes(true);
  return sig;
}

}  // namespace

TEST_CASE("rref basics") {
  auto r1 = rref(QMatrix::identity(3));
  CHECK(r1.rank == 3);
  QMatrix z(2, 5);
  CHECK(rref(z).rank == 0);
  auto r3 = rref(from_rows({{1, 2}, {2, 4}}));
  CHECK(r3.rank == 1);
  CHECK(r3.reduced(0, 0) == 1);
  CHECK(r3.reduced(0, 1) == 2);
}

TEST_CASE("rref idempotent") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    QMatrix m(4, 6);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = Rat(d(rng), 1 + (trial % 3));
    auto r = rref(m);
    auto r2 = rref(r.reduced);
    CHECK(r2.reduced == r.reduced);
  }
}

TEST_CASE("kernel") {
  CHECK(kernel(QMatrix::identity(2)).rows() == 0);
  QMatrix k1 = kernel(from_rows({{1, 1}}));
  REQUIRE(k1.rows() == 1);
  CHECK(k1(0, 0) * Rat(1) + k1(0, 1) == 0);
  QMatrix k2 = kernel(from_rows({{1, 2}, {2, 4}}));
  REQUIRE(k2.rows() == 1);
  CHECK(k2(0, 0) + 2 * k2(0, 1) == 0);
}

TEST_CASE("perp examples") {
  Subspace e1 = Subspace::from_span(from_rows({{1, 0}}));
  Subspace p = perp(QMatrix::identity(2), e1);
  REQUIRE(p.dim() == 1);
  CHECK(p.basis()(0, 0) == 0);

  Subspace pz = perp(QMatrix(2, 2), e1);
  CHECK(pz.dim() == 2);

  QMatrix hyp = from_rows({{0, 1}, {1, 0}});
  Subspace ph = perp(hyp, e1);
  REQUIRE(ph.dim() == 1);
  CHECK(ph.basis()(0, 1) == 0);  // perp of e1 under hyperbolic pairing is e1
}

TEST_CASE("perp involutive for nonsingular symmetric gram") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    QMatrix g(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) { g(i, j) = Rat(d(rng)); g(j, i) = g(i, j); }
    } while (rref(g).rank != 4);
    QMatrix rows(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) rows(i, j) = Rat(d(rng));
    Subspace w = Subspace::from_span(rows);
    Subspace ww = perp(g, perp(g, w));
    CHECK(ww == w);
  }
}

TEST_CASE("signature basics") {
  Signature s1 = signature(QMatrix::identity(4));
  CHECK(s1.n_plus == 4);
  CHECK(s1.n_minus == 0);
  CHECK(s1.n_zero == 0);

  Signature s2 = signature(from_rows({{0, 1}, {1, 0}}));
  CHECK(s2.n_plus == 1);
  CHECK(s2.n_minus == 1);

  QMatrix d3(3, 3);
  d3(0, 0) = 2; d3(1, 1) = -3;
  Signature s3 = signature(d3);
  CHECK(s3.n_plus == 1);
  CHECK(s3.n_minus == 1);
  CHECK(s3.n_zero == 1);

  CHECK_THROWS(signature(from_rows({{0, 1}, {2, 0}})));
}

TEST_CASE("signature matches Descartes-bound oracle on random symmetric") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    QMatrix s(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        Rat v(d(rng));
        s(i, j) = v;
        s(j, i) = v;
      }
    Signature got = signature(s);
    Signature want = signature_by_descartes(s);
    CHECK(got.n_plus == want.n_plus);
    CHECK(got.n_minus == want.n_minus);
    CHECK(got.n_zero == want.n_zero);
  }
}

TEST_CASE("signature invariant under congruence") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-2, 2);
  QMatrix s(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) { s(i, j) = Rat(d(rng)); s(j, i) = s(i, j); }
  for (int trial = 0; trial < 10; ++trial) {
    QMatrix p(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p(i, j) = Rat(d(rng));
    } while (rref(p).rank != 4);
    QMatrix c = p * s * p.transpose();
    Signature a = signature(s), b = signature(c);
    CHECK(a.n_plus == b.n_plus);
    CHECK(a.n_minus == b.n_minus);
    CHECK(a.n_zero == b.n_zero);
  }
}

TEST_CASE("bareiss rank agrees with rref rank") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    QMatrix m(5, 7);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 7; ++j) m(i, j) = Rat(d(rng));
    CHECK(bareiss_rank(m) == rref(m).rank);
  }
}

TEST_CASE("row eliminator matches dense rref rank and reduction") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 8, cols = 6;
    QMatrix m(rows, cols);
    RowEliminator elim;
    for (int i = 0; i < rows; ++i) {
      SparseVec v;
      for (int j = 0; j < cols; ++j) {
        int x = d(rng);
        m(i, j) = Rat(x);
        if (x != 0) v.push(j, Rat(x));
      }
      elim.add_row(v);
    }
    CHECK(elim.rank() == rref(m).rank);
    // reduce_full sends any row-space member to zero.
    SparseVec probe;
    for (int j = 0; j < cols; ++j) {
      Rat acc(0);
      for (int i = 0; i < rows; ++i) acc += m(i, j);
      if (acc != 0) probe.push(j, acc);
    }
    elim.reduce_full(probe);
    CHECK(probe.empty());
  }
}
