#pragma once

#include <vector>

#include "mih/ih.hpp"
#include "mih/orlik_solomon.hpp"
#include "mih/verify.hpp"

namespace mih {

// Complex of graded pieces: homological index i carries one summand per
// length-i flag of proper flats, each realized as the image subspace of the
// corresponding flag-monomial ideal with internal degrees shifted by i.
class FlagComplex {
 public:
  // reduced = true drops the flags starting at the empty flat.
  FlagComplex(CtxPtr ctx, bool reduced);

  const CtxPtr ctx;
  const bool reduced;
  RingPtr ring;

  struct Summand {
    std::vector<int> flags;       // flat chain F_1 < ... < F_i
    GradedSubspace space;         // image inside the ambient ring
  };
  // terms[i] = summands of homological degree i.
  std::vector<std::vector<Summand>> terms;

  int length() const { return static_cast<int>(terms.size()) - 1; }

  // Internal degree of an ambient-ring degree q inside homological index i.
  // (The i-fold shift makes the differentials degree preserving.)
  static int internal_degree(int q, int i) { return q - i; }

  // Differential blocks: for each homological i and each internal degree j,
  // the matrix of the differential from term i to term i+1 on the chosen
  // summand bases (rows = source vectors ordered summand by summand).
  QMatrix differential(int i, int j) const;

  // Dimensions of the term at (homological i, internal degree j).
  int term_dim(int i, int j) const;
  int max_internal_degree() const { return ring->top; }

  // Exact cohomology dimensions per (homological index, internal degree).
  std::vector<std::vector<int>> cohomology() const;

  // Stalk and costalk complexes at a flat: dimensions and cohomology.
  std::vector<std::vector<int>> stalk_cohomology(int flat) const;
  std::vector<std::vector<int>> costalk_cohomology(int flat) const;

 private:
  // Coordinates of the summand bases and the sign bookkeeping.
  friend struct FlagComplexAccess;
};

// Acyclicity of the full complex: zero away from homological degree zero,
// one dimension at internal degree rank in degree zero.
CheckReport acyclicity_check(const CtxPtr& ctx);

// Stalk checks: the reduced complex at the empty flat is concentrated in
// internal degree rank-1-i; stalks of the full complex at proper flats are
// acyclic and the stalk at the top flat is one class in degree zero.
CheckReport stalk_complex_check(const CtxPtr& ctx);

// Costalk cohomology dims match the Orlik-Solomon dimensions of the
// contractions, placed in internal degree crk F - j.
CheckReport costalk_cohomology_check(const CtxPtr& ctx);

// The annihilator-resolution complex of a module N (sums of OS-blocks
// tensored with y_F N) and its homology: concentrated in degree zero where
// it equals the socle.  Applied to the full ring and its flag ideals.
CheckReport costalk_resolution_check(const CtxPtr& ctx,
                                     const GradedSubspace& n);

std::string complex_summary_json(const FlagComplex& c);

}  // namespace mih
