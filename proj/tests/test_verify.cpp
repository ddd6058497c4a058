#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mih/verify.hpp"

using namespace mih;

TEST_CASE("PD checks") {
  CtxPtr b2 = ctx_of(Matroid::boolean(2));
  CHECK(check_pd(ih_space(b2), 2).overall);
  CtxPtr u23 = ctx_of(Matroid::uniform(2, 3));
  CHECK(check_pd(underline_ih_j(u23).ih, 1).overall);
  // A mismatched subspace fails with a witness.
  RingPtr r = ChowRing::get(b2, true);
  GradedSubspace bad;
  bad.ring = r;
  bad.piece.push_back(Subspace::full(1));
  bad.piece.push_back(Subspace(r->dim(1)));
  bad.piece.push_back(Subspace(r->dim(2)));
  CheckReport rep = check_pd(bad, 2);
  CHECK(!rep.overall);
}

TEST_CASE("HL and HR for small intersection modules") {
  for (const Matroid& m : {Matroid::boolean(1), Matroid::boolean(2),
                           Matroid::uniform(2, 3), Matroid::boolean(3),
                           Matroid::uniform(3, 4)}) {
    CtxPtr ctx = ctx_of(m);
    RingElement ell = default_ell(ctx);
    const GradedSubspace& ih = ih_space(ctx);
    CHECK(check_hl(ih, ell, m.rank()).overall);
    CHECK(check_hr(ih, ell, m.rank()).overall);
    if (m.rank() >= 1) {
      const GradedSubspace& uih = underline_ih_j(ctx).ih;
      RingPtr pr = ChowRing::get(ctx, false);
      RingElement beta = m.rank() >= 2 ? pr->beta() : pr->zero(1);
      CHECK(check_hl(uih, beta, m.rank() - 1).overall);
      CHECK(check_hr(uih, beta, m.rank() - 1).overall);
    }
  }
}

TEST_CASE("HR example values") {
  // IH-underline of U(2,3) at k = 0: deg(beta) = 2 > 0.
  CtxPtr u23 = ctx_of(Matroid::uniform(2, 3));
  RingPtr pr = ChowRing::get(u23, false);
  CheckReport rep = check_hr(underline_ih_j(u23).ih, pr->beta(), 1);
  CHECK(rep.overall);
}

TEST_CASE("NS checks") {
  CHECK(check_ns(ctx_of(Matroid::boolean(3)), NSFlavor::Plain).overall);
  CHECK(check_ns(ctx_of(Matroid::uniform(2, 3)), NSFlavor::Underline).overall);
  CHECK(check_ns(ctx_of(Matroid::uniform(2, 3)), NSFlavor::Circ).overall);
  // Rank zero: the socle is nonvanishing in degree 0, so the check fails.
  CheckReport rep = check_ns(ctx_of(Matroid::uniform(0, 0)), NSFlavor::Plain);
  CHECK(!rep.overall);
}

TEST_CASE("CD checks with the witness dims") {
  CtxPtr u23 = ctx_of(Matroid::uniform(2, 3));
  CheckReport rep = check_cd(u23, IHFlavor::Plain);
  CHECK(rep.overall);
  CHECK(check_cd(u23, IHFlavor::Circ).overall);
  CHECK(check_cd(u23, IHFlavor::Underline).overall);
  // B2 underline: CH dims (1,1) = IH (1,1) plus vanishing J of rank-1
  // contractions.
  CtxPtr b2 = ctx_of(Matroid::boolean(2));
  Decomposition dec = decomposition(b2, IHFlavor::Underline);
  CHECK(dec.module.dims() == std::vector<int>({1, 1}));
  for (auto& [f, s] : dec.summands)
    for (int v : s.dims()) CHECK(v == 0);
  CHECK(check_cd(b2, IHFlavor::Underline).overall);
  // Rank zero plain: trivial pass.
  CHECK(check_cd(ctx_of(Matroid::uniform(0, 0)), IHFlavor::Plain).overall);
}

TEST_CASE("Hancock") {
  // CH(B2): middle signature 1 - 3 + 1 = -1.
  CtxPtr b2 = ctx_of(Matroid::boolean(2));
  RingPtr r = ChowRing::get(b2, true);
  GradedSubspace full;
  full.ring = r;
  for (int k = 0; k <= r->top; ++k)
    full.piece.push_back(Subspace::full(r->dim(k)));
  CheckReport rep = check_hancock(full, 2);
  CHECK(rep.overall);
  CHECK(check_hancock(ih_space(b2), 2).overall);
  CHECK(check_hancock(ih_space(ctx_of(Matroid::uniform(2, 3))), 2).overall);
  // Odd rank passes automatically.
  CHECK(check_hancock(ih_space(ctx_of(Matroid::boolean(3))), 3).overall);
}

TEST_CASE("top heavy") {
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(2, 3));
    TopHeavyResult r = top_heavy(ctx);
    CHECK(r.report.overall);
  }
  {
    CtxPtr ctx = ctx_of(Matroid::uniform(3, 4));
    TopHeavyResult r = top_heavy(ctx);
    CHECK(r.report.overall);
    // The (1,2) matching pairs each singleton into a containing 2-flat.
    const FlatLattice& l = ctx->lattice;
    for (auto& [k, j, pairs] : r.matchings) {
      if (k == 1 && j == 2) {
        CHECK(pairs.size() == 4);
        for (auto& [a, b] : pairs)
          CHECK(subset(l.flat(l.index_of(l.flat(a).elements)).elements,
                       l.flat(b).elements));
      }
    }
  }
  {
    // B3 between ranks 1 and 2: a bijection.
    CtxPtr ctx = ctx_of(Matroid::boolean(3));
    TopHeavyResult r = top_heavy(ctx);
    CHECK(r.report.overall);
    for (auto& [k, j, pairs] : r.matchings)
      if (k == 1 && j == 2) CHECK(pairs.size() == 3);
  }
  CHECK_THROWS_AS(top_heavy(ctx_of(Matroid::uniform(2, 3)), {Rat(1), Rat(-1), Rat(1)}),
                  NonPositiveCoefficients);
}

TEST_CASE("report serialization") {
  CheckReport rep = check_pd(ih_space(ctx_of(Matroid::boolean(2))), 2);
  rep.matroid = "B2";
  std::string s = report_json(rep);
  CHECK(s.find("\"statement\":\"PD\"") != std::string::npos);
  CHECK(s.find("\"overall\":true") != std::string::npos);
}
