#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mih/intpoly.hpp"
#include "mih/matroid.hpp"

namespace mih {

struct RecursionInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CrossCheckMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MatroidCtx;
using CtxPtr = std::shared_ptr<MatroidCtx>;

// Contexts are shared through a process-wide registry keyed by the exact
// bases encoding, so equal minors arising in different recursions are built
// once.  No isomorphism detection: distinct encodings stay distinct.
CtxPtr ctx_of(const Matroid& m);

// Matroid together with its flat lattice and memoized derived data.
class MatroidCtx : public std::enable_shared_from_this<MatroidCtx> {
 public:
  explicit MatroidCtx(Matroid mm) : m(std::move(mm)), lattice(m) {}

  const Matroid m;
  const FlatLattice lattice;

  int rank() const { return m.rank(); }
  int num_flats() const { return lattice.num_flats(); }

  CtxPtr localization(int flat_idx) const;
  CtxPtr contraction(int flat_idx) const;

 private:
  mutable std::mutex mu_;
  mutable std::map<Mask, CtxPtr> loc_cache_;
  mutable std::map<Mask, CtxPtr> con_cache_;

 public:
  // Memoized invariants (filled by the functions below).
  mutable std::mutex inv_mu;
  mutable std::optional<IntPoly> chi, kl, zpoly, qpoly;
};

// chi_M via the Moebius function over the lattice of flats.
const IntPoly& characteristic_polynomial(const CtxPtr& ctx);

// chi_M as the signed subset sum; brute-force oracle for n <= 12.
IntPoly characteristic_polynomial_subset_sum(const Matroid& m);

// Kazhdan-Lusztig polynomial; unique solution of the defining recursion with
// deg < rank/2; throws RecursionInconsistent if resubstitution fails.
const IntPoly& kl_polynomial(const CtxPtr& ctx);

// Z-polynomial: sum over flats of t^{rk F} P_{M_F}(t).
const IntPoly& z_polynomial(const CtxPtr& ctx);

// Inverse Kazhdan-Lusztig polynomial, computed by two independent
// recursions (flat-indexed convolution with P, and the reversal identity
// convolved with chi); throws CrossCheckMismatch if they disagree.
const IntPoly& inverse_kl_polynomial(const CtxPtr& ctx);

// dim OS^k for k = 0..rank, read off chi_M.
std::vector<Int> os_dimensions(const CtxPtr& ctx);

}  // namespace mih
