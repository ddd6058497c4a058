#pragma once

#include <vector>

#include "mih/morphisms.hpp"
#include "mih/subspace.hpp"

namespace mih {

struct NotAModule : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyGroundSetCirc : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graded subspace of a ring, one row-reduced piece per degree in the ring's
// degree coordinates.
struct GradedSubspace {
  RingPtr ring;
  std::vector<Subspace> piece;

  int dim(int k) const {
    return (k < 0 || k >= static_cast<int>(piece.size())) ? 0
                                                          : piece[k].dim();
  }
  std::vector<int> dims() const {
    std::vector<int> d(piece.size());
    for (size_t k = 0; k < piece.size(); ++k) d[k] = piece[k].dim();
    return d;
  }
  RingElement element(int k, int row) const;
};

// The three decomposition flavors.
enum class IHFlavor { Plain, Circ, Underline };

// Coordinates of all generators psi^F(u x w), u over the J basis of the
// contraction and w over the localization ring basis, in parent degree j.
std::vector<RingElement> summand_vectors(const CtxPtr& ctx, int f,
                                         bool augmented_parent, int j);

// Recursive pair (IH, J) inside the plain ring; memoized per matroid.
struct UnderlineData {
  GradedSubspace ih;
  GradedSubspace j;
};
const UnderlineData& underline_ih_j(const CtxPtr& ctx);

// Intersection module inside the augmented ring: perp of all pushed
// summands over proper flats (Plain) or nonempty proper flats (Circ).
const GradedSubspace& ih_space(const CtxPtr& ctx);
const GradedSubspace& ih_circ_space(const CtxPtr& ctx);

// Full decomposition data for a flavor: the perp module plus the pushed
// summands, each as a graded subspace of the ambient ring.
struct Decomposition {
  RingPtr ring;
  GradedSubspace module;
  std::vector<std::pair<int, GradedSubspace>> summands;  // (flat, span)
};
Decomposition decomposition(const CtxPtr& ctx, IHFlavor flavor);

// Module-theoretic functors over the graded Moebius algebra (augmented
// ambient; N must be closed under all y classes, which holds for the
// modules produced here and is asserted by module_closed).
bool module_closed(const GradedSubspace& n);

// Upward-closed flat sets.
std::vector<int> filter_at_least(const CtxPtr& ctx, int flat);
std::vector<int> filter_above(const CtxPtr& ctx, int flat);

// Span of { y_G v : G in filter, v in N }.
GradedSubspace filter_span(const GradedSubspace& n,
                           const std::vector<int>& filter);
// { v in N : y_G v = 0 for all G in filter }.
GradedSubspace filter_annihilator(const GradedSubspace& n,
                                  const std::vector<int>& filter);

// Stalk N_F = (N_{>=F}/N_{>F})[rk F]; dims per shifted degree.
std::vector<int> stalk_dims(const GradedSubspace& n, int flat);
// Costalk N_[F] = N^{>F}/N^{>=F}; dims per degree.
std::vector<int> costalk_dims(const GradedSubspace& n, int flat);
// Socle = costalk at the empty flat.
std::vector<int> socle_dims(const GradedSubspace& n);

// Kazhdan-Lusztig and Z polynomials read off the module: stalk at the empty
// flat and total dimensions.
IntPoly kl_from_ih(const CtxPtr& ctx);
IntPoly z_from_ih(const CtxPtr& ctx);

// Graded pieces of the maximal-ideal filtration m^p IH / m^{p+1} IH.
std::vector<int> graded_piece_dims(const CtxPtr& ctx, int p);

// Subspace dump (dimension vectors, optional bases) as JSON.
std::string subspace_dump_json(const GradedSubspace& n, bool with_bases);

}  // namespace mih
