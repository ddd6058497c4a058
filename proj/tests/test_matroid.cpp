#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mih/matroid.hpp"

using namespace mih;

namespace {
Mask mk(std::initializer_list<int> elems) {
  Mask m = 0;
  for (int e : elems) m |= Mask(1) << e;
  return m;
}

Matroid k4() {
  // K4 on vertices 0..3, all six edges.
  return Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                          "K4");
}
}  // namespace

TEST_CASE("builders") {
  Matroid u23 = Matroid::uniform(2, 3);
  CHECK(u23.rank() == 2);
  CHECK(u23.bases().size() == 3);

  Matroid b2 = Matroid::boolean(2);
  CHECK(b2.rank() == 2);
  REQUIRE(b2.bases().size() == 1);
  CHECK(b2.bases()[0] == mk({0, 1}));

  Matroid g = k4();
  CHECK(g.rank() == 3);
  CHECK(g.bases().size() == 16);  // spanning trees of K4

  CHECK_THROWS_AS(Matroid::uniform(0, 2), LoopDetected);
  CHECK_THROWS_AS(Matroid(2, {mk({0, 1}), mk({0})}), AxiomViolation);
  CHECK_THROWS_AS(Matroid::graphic(2, {{0, 0}}), LoopDetected);
  CHECK_THROWS_AS(Matroid::linear(2, {{0, 0}}), LoopDetected);
}

TEST_CASE("non-matroid basis set rejected") {
  // {012, 034} fails exchange on element 1.
  CHECK_THROWS_AS(Matroid(5, {mk({0, 1, 2}), mk({0, 3, 4})}), AxiomViolation);
}

TEST_CASE("rank and closure") {
  Matroid u23 = Matroid::uniform(2, 3);
  CHECK(u23.rank_of(mk({0, 1, 2})) == 2);
  CHECK(u23.rank_of(0) == 0);
  CHECK(u23.closure(mk({0, 1})) == mk({0, 1, 2}));

  Matroid b2 = Matroid::boolean(2);
  CHECK(b2.closure(mk({0})) == mk({0}));
  CHECK(b2.rank_of(mk({0})) == 1);

  Matroid g = k4();
  // Edges 0,1,3 = {01,02,12} form a triangle.
  CHECK(g.rank_of(mk({0, 1, 3})) == 2);
  CHECK(g.closure(mk({0, 1})) == mk({0, 1, 3}));
}

TEST_CASE("rank is monotone and submodular") {
  std::mt19937 rng(3);
  for (const Matroid& m : {Matroid::uniform(3, 5), k4(), Matroid::boolean(4)}) {
    std::uniform_int_distribution<Mask> d(0, m.ground());
    for (int trial = 0; trial < 1000; ++trial) {
      Mask a = d(rng) & m.ground(), b = d(rng) & m.ground();
      CHECK(m.rank_of(a | b) + m.rank_of(a & b) <= m.rank_of(a) + m.rank_of(b));
      CHECK(m.rank_of(a & b) <= m.rank_of(a));
    }
  }
}

TEST_CASE("lattice strata") {
  FlatLattice l1(Matroid::uniform(2, 3));
  CHECK(l1.stratum(0).size() == 1);
  CHECK(l1.stratum(1).size() == 3);
  CHECK(l1.stratum(2).size() == 1);

  FlatLattice l2(Matroid::boolean(3));
  CHECK(l2.stratum(0).size() == 1);
  CHECK(l2.stratum(1).size() == 3);
  CHECK(l2.stratum(2).size() == 3);
  CHECK(l2.stratum(3).size() == 1);

  FlatLattice l3(Matroid::uniform(3, 4));
  CHECK(l3.stratum(0).size() == 1);
  CHECK(l3.stratum(1).size() == 4);
  CHECK(l3.stratum(2).size() == 6);
  CHECK(l3.stratum(3).size() == 1);
}

TEST_CASE("lattice join and partition axiom") {
  for (const Matroid& m :
       {Matroid::uniform(2, 4), k4(), Matroid::uniform(3, 5)}) {
    FlatLattice l(m);
    for (int a = 0; a < l.num_flats(); ++a)
      for (int b = 0; b < l.num_flats(); ++b) {
        Mask join = l.flat(l.join(a, b)).elements;
        CHECK(join == m.closure(l.flat(a).elements | l.flat(b).elements));
      }
    // Every element outside F lies in exactly one cover of F.
    for (int a = 0; a < l.num_flats(); ++a) {
      Mask f = l.flat(a).elements;
      for (int e = 0; e < m.n(); ++e) {
        if (f >> e & 1) continue;
        int count = 0;
        for (int c : l.covers_above(a))
          if (l.flat(c).elements >> e & 1) ++count;
        CHECK(count == 1);
      }
    }
  }
}

TEST_CASE("maximal chains have full length") {
  for (const Matroid& m : {Matroid::uniform(2, 4), k4()}) {
    FlatLattice l(m);
    // Walk covers from bottom: every maximal chain has length rank(M).
    for (int a = 0; a < l.num_flats(); ++a) {
      if (l.flat(a).rank == m.rank()) CHECK(l.covers_above(a).empty());
      else CHECK(!l.covers_above(a).empty());
    }
  }
}

TEST_CASE("localization and contraction") {
  Matroid u23 = Matroid::uniform(2, 3);

  Matroid loc0 = u23.localization(0);
  CHECK(loc0.n() == 0);
  CHECK(loc0.rank() == 0);

  Matroid loc = u23.localization(mk({0}));
  CHECK(loc.n() == 1);
  CHECK(loc.rank() == 1);

  Matroid u34 = Matroid::uniform(3, 4);
  Matroid loc2 = u34.localization(mk({0, 1}));
  CHECK(loc2.n() == 2);
  CHECK(loc2.rank() == 2);
  CHECK(loc2.bases().size() == 1);  // U(2,2)

  Matroid con = u23.contraction(mk({0}));
  CHECK(con.n() == 2);
  CHECK(con.rank() == 1);
  CHECK(con.bases().size() == 2);  // U(1,2)

  Matroid b3 = Matroid::boolean(3);
  Matroid conb = b3.contraction(mk({0}));
  CHECK(conb.n() == 2);
  CHECK(conb.rank() == 2);

  CHECK(u23.contraction(0).key() == u23.key());
  CHECK_THROWS_AS(u23.localization(mk({0, 1})), NotAFlat);
}

TEST_CASE("interval minors") {
  Matroid u34 = Matroid::uniform(3, 4);
  Matroid mid = u34.interval_minor(mk({0}), u34.ground());
  CHECK(mid.n() == 3);
  CHECK(mid.rank() == 2);
  CHECK(mid.key() == Matroid::uniform(2, 3).key());

  Matroid triv = u34.interval_minor(mk({0}), mk({0}));
  CHECK(triv.rank() == 0);

  CHECK(u34.interval_minor(0, u34.ground()).key() == u34.key());
  CHECK_THROWS_AS(u34.interval_minor(mk({0}), mk({1, 2})), NotComparable);
}

TEST_CASE("localization-contraction composition on small catalog") {
  for (const Matroid& m :
       {Matroid::uniform(2, 4), Matroid::uniform(3, 5), Matroid::boolean(4)}) {
    FlatLattice l(m);
    for (int a = 0; a < l.num_flats(); ++a)
      for (int b = 0; b < l.num_flats(); ++b) {
        if (!l.leq(a, b)) continue;
        Mask f = l.flat(a).elements, g = l.flat(b).elements;
        // (M_F)^{G\F} as bases must equal M^G_F.
        Matroid via_contr = m.contraction(f);
        // Translate G\F into the contraction's numbering.
        Mask gf = 0;
        for (int i = 0; i < via_contr.n(); ++i)
          if (g >> via_contr.elem_names()[i] & 1) gf |= Mask(1) << i;
        Matroid lhs = via_contr.localization(gf);
        Matroid rhs = m.interval_minor(f, g);
        CHECK(lhs.key() == rhs.key());
      }
  }
}

TEST_CASE("deletion") {
  Matroid u23 = Matroid::uniform(2, 3);
  Matroid d = u23.deletion(0);
  CHECK(d.n() == 2);
  CHECK(d.rank() == 2);

  Matroid u34 = Matroid::uniform(3, 4);
  CHECK(u34.deletion(3).key() == Matroid::boolean(3).key());

  CHECK_THROWS_AS(Matroid::boolean(2).deletion(0), ColoopDeletion);
}

TEST_CASE("mobius") {
  FlatLattice b2(Matroid::boolean(2));
  CHECK(b2.mobius(b2.bottom(), b2.bottom()) == 1);
  CHECK(b2.mobius(b2.bottom(), b2.top()) == 1);  // 1 - 2 + 1

  FlatLattice u23(Matroid::uniform(2, 3));
  CHECK(u23.mobius(u23.bottom(), u23.top()) == 2);

  CHECK_THROWS_AS(u23.mobius(u23.top(), u23.bottom()), NotComparable);
}

TEST_CASE("fano over GF(2)") {
  // Seven nonzero vectors of GF(2)^3.
  std::vector<std::vector<int>> cols = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                        {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                        {1, 1, 1}};
  Matroid fano = Matroid::linear(2, cols, "F7");
  CHECK(fano.n() == 7);
  CHECK(fano.rank() == 3);
  CHECK(fano.bases().size() == 28);  // 35 three-subsets minus 7 lines
  FlatLattice l(fano);
  CHECK(l.stratum(1).size() == 7);
  CHECK(l.stratum(2).size() == 7);
}

TEST_CASE("direct sum") {
  Matroid m = Matroid::direct_sum(Matroid::uniform(1, 2), Matroid::uniform(1, 1));
  CHECK(m.n() == 3);
  CHECK(m.rank() == 2);
  CHECK(m.bases().size() == 2);
}
