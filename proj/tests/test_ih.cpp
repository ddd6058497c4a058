#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mih/ih.hpp"

using namespace mih;

TEST_CASE("underline modules in small ranks") {
  // Rank 1: IH = Q, J = 0.
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(1, 2));
    const UnderlineData& ud = underline_ih_j(ctx);
    CHECK(ud.ih.dims() == std::vector<int>({1}));
    CHECK(ud.j.dims() == std::vector<int>({0}));
  }
  // Rank 2: IH = Q + Q beta, J = Q.
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(2, 3));
    const UnderlineData& ud = underline_ih_j(ctx);
    CHECK(ud.ih.dims() == std::vector<int>({1, 1}));
    CHECK(ud.j.dims() == std::vector<int>({1, 0}));
  }
}

TEST_CASE("Boolean underline J spanned by beta powers") {
  for (int d = 2; d <= 4; ++d) {
    CtxPtr ctx = ctx_of(Matroid::boolean(d));
    const UnderlineData& ud = underline_ih_j(ctx);
    // J has dimension one in each degree 0..d-2.
    std::vector<int> want(d, 0);
    for (int k = 0; k <= d - 2; ++k) want[k] = 1;
    CHECK(ud.j.dims() == want);
    // IH = span of beta powers: dims all one.
    CHECK(ud.ih.dims() == std::vector<int>(d, 1));
  }
}

TEST_CASE("intersection module dims") {
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(0, 0));
    CHECK(ih_space(ctx).dims() == std::vector<int>({1}));
    CHECK_THROWS_AS(ih_circ_space(ctx), EmptyGroundSetCirc);
  }
  {
    CtxPtr ctx = ctx_of(Matroid::boolean(2));
    CHECK(ih_space(ctx).dims() == std::vector<int>({1, 2, 1}));
  }
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(2, 3));
    CHECK(ih_space(ctx).dims() == std::vector<int>({1, 3, 1}));
    CHECK(ih_circ_space(ctx).dims() == std::vector<int>({1, 4, 1}));
  }
}

TEST_CASE("modules are closed under the algebra action") {
  for (const Matroid& m : {Matroid::boolean(3), Matroid::uniform(2, 4),
                           Matroid::uniform(3, 4)}) {
    CtxPtr ctx = ctx_of(m);
    CHECK(module_closed(ih_space(ctx)));
    CHECK(module_closed(ih_circ_space(ctx)));
    CHECK(module_closed(underline_ih_j(ctx).ih));
  }
}

TEST_CASE("stalks, costalks, socle on B2") {
  CtxPtr ctx = ctx_of(Matroid::boolean(2));
  const GradedSubspace& ih = ih_space(ctx);
  const FlatLattice& l = ctx->lattice;
  // Stalk at the empty flat: one-dimensional in degree 0.
  auto st = stalk_dims(ih, l.bottom());
  CHECK(st[0] == 1);
  for (size_t j = 1; j < st.size(); ++j) CHECK(st[j] == 0);
  // Stalk of the full ring at the top flat: y_E CH shifted, = Q.
  RingPtr r = ChowRing::get(ctx, true);
  GradedSubspace full;
  full.ring = r;
  for (int k = 0; k <= r->top; ++k)
    full.piece.push_back(Subspace::full(r->dim(k)));
  auto ste = stalk_dims(full, l.top());
  CHECK(ste == std::vector<int>({1}));
  // Socle of IH(B2): only in top degree.
  auto soc = socle_dims(ih);
  CHECK(soc == std::vector<int>({0, 0, 1}));
}

TEST_CASE("socle of IH(U(2,3)) vanishes below the middle") {
  CtxPtr ctx = ctx_of(Matroid::uniform(2, 3));
  auto soc = socle_dims(ih_space(ctx));
  CHECK(soc[0] == 0);
  CHECK(soc[1] == 0);
}

TEST_CASE("costalk of CH(B1) at the empty flat") {
  CtxPtr ctx = ctx_of(Matroid::boolean(1));
  RingPtr r = ChowRing::get(ctx, true);
  GradedSubspace full;
  full.ring = r;
  for (int k = 0; k <= r->top; ++k)
    full.piece.push_back(Subspace::full(r->dim(k)));
  auto co = costalk_dims(full, ctx->lattice.bottom());
  CHECK(co == std::vector<int>({0, 1}));
}

TEST_CASE("stalk-costalk duality dims for paired modules") {
  for (const Matroid& m : {Matroid::boolean(2), Matroid::uniform(2, 3),
                           Matroid::boolean(3)}) {
    CtxPtr ctx = ctx_of(m);
    RingPtr r = ChowRing::get(ctx, true);
    GradedSubspace full;
    full.ring = r;
    for (int k = 0; k <= r->top; ++k)
      full.piece.push_back(Subspace::full(r->dim(k)));
    const GradedSubspace& ih = ih_space(ctx);
    for (const GradedSubspace* n : std::vector<const GradedSubspace*>{&full, &ih}) {
      for (int f = 0; f < ctx->lattice.num_flats(); ++f) {
        int crk = m.rank() - ctx->lattice.flat(f).rank;
        auto st = stalk_dims(*n, f);
        auto co = costalk_dims(*n, f);
        for (int j = 0; j < static_cast<int>(st.size()); ++j) {
          int dual = crk - j;
          int cd = (dual >= 0 && dual < static_cast<int>(co.size()))
                       ? co[dual]
                       : 0;
          CHECK(st[j] == cd);
        }
      }
    }
  }
}

TEST_CASE("orthogonality of the pushed summands") {
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::boolean(3)}) {
    CtxPtr ctx = ctx_of(m);
    Decomposition dec = decomposition(ctx, IHFlavor::Plain);
    const ChowRing* r = dec.ring.get();
    for (size_t x = 0; x < dec.summands.size(); ++x)
      for (size_t y = x + 1; y < dec.summands.size(); ++y) {
        const GradedSubspace& a = dec.summands[x].second;
        const GradedSubspace& b = dec.summands[y].second;
        for (int k = 0; k <= r->top; ++k)
          for (int i = 0; i < a.dim(k); ++i)
            for (int j = 0; j < b.dim(r->top - k); ++j)
              CHECK(r->pair(a.element(k, i), b.element(r->top - k, j)) == 0);
      }
  }
}

TEST_CASE("cross-route polynomials on small matroids") {
  for (const Matroid& m : {Matroid::uniform(0, 0), Matroid::boolean(2),
                           Matroid::uniform(2, 3), Matroid::boolean(3),
                           Matroid::uniform(2, 4)}) {
    CtxPtr ctx = ctx_of(m);
    CHECK(kl_from_ih(ctx) == kl_polynomial(ctx));
    CHECK(z_from_ih(ctx) == z_polynomial(ctx));
  }
}

TEST_CASE("graded pieces of the maximal-ideal filtration") {
  CtxPtr ctx = ctx_of(Matroid::uniform(2, 3));
  // p = 0: the stalk at the empty flat, i.e. the KL coefficients.
  auto p0 = graded_piece_dims(ctx, 0);
  CHECK(p0[0] == 1);
  CHECK(p0[1] == 0);
  // p = 1: three contractions, each contributing 1 in degree 1.
  auto p1 = graded_piece_dims(ctx, 1);
  CHECK(p1[1] == 3);
  // p = d: one copy in degree d.
  auto p2 = graded_piece_dims(ctx, 2);
  CHECK(p2[2] == 1);
  // Flat-indexed formula across small catalog members.
  for (const Matroid& m : {Matroid::boolean(3), Matroid::uniform(2, 4)}) {
    CtxPtr c2 = ctx_of(m);
    const FlatLattice& l = c2->lattice;
    for (int p = 0; p <= m.rank(); ++p) {
      auto dims = graded_piece_dims(c2, p);
      std::vector<int> want(dims.size(), 0);
      for (int f : l.stratum(p)) {
        CtxPtr con = c2->contraction(f);
        IntPoly kl = kl_from_ih(con);
        for (int j = 0; j <= kl.degree(); ++j)
          want[j + p] += static_cast<int>(kl.coeff(j).get_si());
      }
      CHECK(dims == want);
    }
  }
}
