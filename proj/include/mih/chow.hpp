#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mih/invariants.hpp"
#include "mih/qmatrix.hpp"
#include "mih/sparse.hpp"

namespace mih {

struct RankZeroNonAugmented : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KindUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using MonoKey = unsigned __int128;

// Chain monomial: product of x_F over a totally ordered set of flats with
// positive exponents.  Factors sorted by containment.
struct Mono {
  std::vector<std::pair<int, int>> f;  // (flat index, exponent)

  int degree() const {
    int d = 0;
    for (auto& [fl, e] : f) d += e;
    return d;
  }
  bool operator==(const Mono& o) const { return f == o.f; }
};

class ChowRing;
using RingPtr = std::shared_ptr<ChowRing>;

// Ring element: sparse coordinates over the degree-k coordinate system of
// its ring (normal-basis coordinates up to the middle, pairing coordinates
// against the complementary normal basis above it, the degree value on top).
struct RingElement {
  const ChowRing* ring = nullptr;
  int deg = 0;
  std::map<int, Rat> c;

  bool is_zero() const { return c.empty(); }
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rat& s);
  bool operator==(const RingElement& o) const {
    if (c.empty() && o.c.empty()) return true;  // zero in any degree
    return ring == o.ring && deg == o.deg && c == o.c;
  }
};

// Graded quotient ring on the chain monomials of the lattice of flats:
// realizes the Chow ring (augmented = false) and the augmented Chow ring
// (augmented = true) of the underlying matroid.
//
// Normal bases are produced degree by degree by row-reducing the relation
// span over the chain monomials.  Degrees above ceil(top/2) of large rings
// are represented in Poincare-dual coordinates: a class is stored by its
// pairing values against the complementary normal basis.  The degree
// functional used for those pairings is certified exactly: it kills the full
// relation span of the top degree and takes value one on every complete
// flag, so it is the degree map of the quotient.
class ChowRing : public std::enable_shared_from_this<ChowRing> {
 public:
  static RingPtr get(const CtxPtr& ctx, bool augmented);

  const CtxPtr ctx;
  const bool augmented;
  const int top;

  // Largest degree carrying an explicit monomial table.
  int real_limit() const { return real_limit_; }
  bool dual_mode() const { return dual_mode_; }
  bool is_real_degree(int k) const { return k <= real_limit_; }

  int dim(int k) const;
  std::vector<int> hilbert() const;
  int num_monomials(int k) const;
  const Mono& basis_mono(int k, int pos) const;  // real degrees only
  int mono_index(const Mono& m) const;           // real degrees only
  const SparseVec& nf(int k, int mono_idx) const;

  RingElement zero(int k) const { return RingElement{this, k, {}}; }
  RingElement one() const;
  // Element of an arbitrary chain monomial, in the conventions of its degree.
  RingElement element_of_mono(const Mono& m) const;
  // Element of a linear combination of monomials of equal degree.
  RingElement element_of_monos(
      const std::vector<std::pair<Mono, Rat>>& terms, int k) const;

  RingElement x_class(int flat_idx) const;
  RingElement alpha() const;
  RingElement beta() const;           // plain ring only
  RingElement y_elem(int e) const;    // augmented only
  RingElement y_flat(int flat_idx) const;

  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement power(const RingElement& a, int e) const;

  Rat deg_value(const RingElement& top_elem) const;
  Rat deg_of_mono(const Mono& m) const;
  Rat pair(const RingElement& a, const RingElement& b) const;

  // Gram matrix between the degree-k and degree-(top-k) coordinate systems.
  // Between two real degrees this is the honest matrix of pairings of
  // normal-basis monomials; when one side is dual it is the identity by
  // construction, and carries no separate content.
  const QMatrix& pairing_matrix(int k) const;

  bool comparable(int f1, int f2) const {
    return comparable_[size_t(f1) * cmp_words_ + (f2 >> 6)] >> (f2 & 63) & 1;
  }
  bool merge(const Mono& a, const Mono& b, Mono& out) const;
  MonoKey key_of(const Mono& m) const;
  const std::vector<int>& var_flats() const { return var_flats_; }
  Rat alpha_top_degree() const;
  std::vector<Mono> complete_flags() const;
  std::vector<Mono> enumerate_monos(int k) const;

  // Monomial-count threshold above which degrees past the middle switch to
  // dual coordinates (overridable through MIH_DUAL_THRESHOLD).
  static int dual_threshold();

  // use get(); force_mode 0 = full tables, 1 = dual, -1 = by threshold
  explicit ChowRing(CtxPtr c, bool aug, int force_mode = -1);

  struct DegreeData {
    std::vector<Mono> monos;
    std::unordered_map<MonoKey, int> index;
    RowEliminator elim;
    std::vector<int> basis;
    std::vector<int> mono_to_basis;
    mutable std::mutex nf_mu;
    mutable std::unordered_map<int, SparseVec> nf_cache;
  };

 private:
  void build();
  void build_degree(int k);
  void build_top_functional();
  Rat deg_recursive(const Mono& m) const;
  RingElement alpha_uncached() const;
  RingElement beta_uncached() const;
  RingElement y_flat_uncached(int flat_idx) const;
  void certify_top_functional() const;
  void for_each_relation_form(
      int k, const std::function<void(const std::vector<std::pair<int, Rat>>&,
                                      const Mono&)>& fn) const;
  // Pairing coordinates of a raw monomial combination of dual degree k.
  RingElement dual_coords(const std::vector<std::pair<Mono, Rat>>& terms,
                          int k) const;

  std::vector<std::unique_ptr<DegreeData>> deg_;
  std::vector<int> var_flats_;
  std::vector<uint64_t> comparable_;
  int cmp_words_ = 0;
  int real_limit_ = 0;
  bool dual_mode_ = false;
  int force_mode_ = -1;
  Mono top_flag_;
  mutable std::mutex deg_mu_;
  mutable std::unordered_map<MonoKey, Rat> deg_cache_;
  mutable std::mutex pair_mu_;
  mutable std::map<int, QMatrix> pair_cache_;
  mutable std::optional<Rat> alpha_deg_;
  mutable std::mutex cls_mu_;
  mutable std::map<int, RingElement> yflat_cache_;
  mutable std::optional<RingElement> alpha_cache_, beta_cache_;
};

std::string ring_dump_json(const ChowRing& r);

}  // namespace mih
