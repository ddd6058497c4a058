#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "mih/invariants.hpp"
#include "mih/qmatrix.hpp"
#include "mih/sparse.hpp"

namespace mih {

// Orlik-Solomon algebra: exterior algebra on the ground set modulo the
// boundaries of dependent sets.  Monomials e_S are indexed by subsets; the
// quotient decomposes over flats, with the block of F concentrated in
// degree rk F.
class OSAlgebra {
 public:
  explicit OSAlgebra(CtxPtr ctx);
  static std::shared_ptr<OSAlgebra> get(const CtxPtr& ctx);

  const CtxPtr ctx;

  int rank() const { return ctx->rank(); }
  int dim(int k) const { return static_cast<int>(basis_[k].size()); }
  // Basis monomials of degree k as element subsets, ascending order.
  const std::vector<Mask>& basis(int k) const { return basis_[k]; }
  // Flat (lattice index) of each basis monomial: the closure of the subset.
  const std::vector<int>& basis_flat(int k) const { return basis_flat_[k]; }
  // Positions of the degree-(rk F) basis vectors in the block of flat F.
  const std::vector<int>& block(int flat_idx) const {
    return blocks_[flat_idx];
  }

  // Normal form of e_S (S listed ascending inside the wedge) over the
  // degree-|S| basis.
  SparseVec normal_form(Mask s) const;

  // Boundary map from degree k to degree k-1 over the normal bases.
  const QMatrix& boundary(int k) const { return boundary_[k]; }

  // Action of a ground-set permutation on the degree-k basis (row = source
  // basis vector, with sign from reordering the wedge).
  QMatrix action_matrix(const std::vector<int>& perm, int k) const;

 private:
  std::vector<std::vector<Mask>> monos_;  // all k-subsets per degree
  std::vector<std::unordered_map<Mask, int>> mono_index_;
  std::vector<RowEliminator> elim_;
  std::vector<std::vector<int>> basis_idx_;  // indices into monos_[k]
  std::vector<std::vector<Mask>> basis_;
  std::vector<std::vector<int>> basis_flat_;
  std::vector<std::vector<int>> blocks_;
  std::vector<QMatrix> boundary_;
};

}  // namespace mih
