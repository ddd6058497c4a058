#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mih {

using Mask = uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Elements of s in increasing order.
inline std::vector<int> mask_positions(Mask s, int n) {
  std::vector<int> pos;
  for (int e = 0; e < n; ++e)
    if (s >> e & 1) pos.push_back(e);
  return pos;
}

// Renumber s through pos: bit i of the result is bit pos[i] of s.  Minors
// renumber their ground sets this way (order-preserving), so translation
// between a matroid and its minors always goes through these two helpers.
inline Mask compress_mask(Mask s, const std::vector<int>& pos) {
  Mask out = 0;
  for (size_t i = 0; i < pos.size(); ++i)
    if (s >> pos[i] & 1) out |= Mask(1) << i;
  return out;
}

inline Mask expand_mask(Mask s, const std::vector<int>& pos) {
  Mask out = 0;
  for (size_t i = 0; i < pos.size(); ++i)
    if (s >> i & 1) out |= Mask(1) << pos[i];
  return out;
}

struct AxiomViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LoopDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyBasisSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAFlat : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotComparable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ColoopDeletion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loopless matroid given by its set of bases on ground set {0..n-1}.
// Immutable after construction; the rank cache is internally synchronized.
class Matroid {
 public:
  // Validates: nonempty basis set, equal cardinalities, basis exchange,
  // looplessness.
  Matroid(int n, std::vector<Mask> bases, std::string label = "");

  static Matroid uniform(int k, int n);
  static Matroid boolean(int n);
  // Edges as vertex pairs; element i is edge i.  Self-loops rejected.
  static Matroid graphic(int num_vertices,
                         const std::vector<std::pair<int, int>>& edges,
                         std::string label = "");
  // Columns over GF(p); element i is column i.  Zero columns rejected.
  static Matroid linear(int p, const std::vector<std::vector<int>>& columns,
                        std::string label = "");
  static Matroid direct_sum(const Matroid& a, const Matroid& b);

  int n() const { return n_; }
  int rank() const { return d_; }
  const std::vector<Mask>& bases() const { return bases_; }
  const std::string& label() const { return label_; }
  Mask ground() const { return n_ == 32 ? ~Mask(0) : ((Mask(1) << n_) - 1); }

  // Element names in the root matroid this was carved from (identity for a
  // matroid built directly).
  const std::vector<int>& elem_names() const { return names_; }

  int rank_of(Mask s) const;
  Mask closure(Mask s) const;
  bool is_flat(Mask s) const { return closure(s) == s; }
  bool is_independent(Mask s) const { return rank_of(s) == popcount(s); }

  Matroid localization(Mask flat) const;  // ground set = flat
  Matroid contraction(Mask flat) const;   // ground set = complement
  Matroid interval_minor(Mask f, Mask g) const;
  Matroid deletion(int element) const;

  // Value identity: same ground set size and same set of bases.
  std::string key() const;

 private:
  void validate() const;
  int n_;
  int d_;
  std::vector<Mask> bases_;  // sorted
  std::string label_;
  std::vector<int> names_;
  mutable std::mutex cache_mu_;
  mutable std::unordered_map<Mask, int> rank_cache_;

 public:
  Matroid(const Matroid& o)
      : n_(o.n_), d_(o.d_), bases_(o.bases_), label_(o.label_), names_(o.names_) {}
  Matroid& operator=(const Matroid& o) {
    n_ = o.n_; d_ = o.d_; bases_ = o.bases_; label_ = o.label_; names_ = o.names_;
    std::lock_guard<std::mutex> lk(cache_mu_);
    rank_cache_.clear();
    return *this;
  }
};

struct Flat {
  Mask elements;
  int rank;
};

// Ranked lattice of flats.  Flats carry a global index; stratum r lists the
// indices of the rank-r flats.
class FlatLattice {
 public:
  explicit FlatLattice(const Matroid& m);

  const Matroid& matroid() const { return m_; }
  int rank() const { return m_.rank(); }
  int num_flats() const { return static_cast<int>(flats_.size()); }
  const Flat& flat(int idx) const { return flats_[idx]; }
  const std::vector<int>& stratum(int r) const { return strata_[r]; }
  int index_of(Mask f) const {
    auto it = index_.find(f);
    if (it == index_.end()) throw NotAFlat("not a flat");
    return it->second;
  }
  bool leq(int a, int b) const { return subset(flats_[a].elements, flats_[b].elements); }
  int join(int a, int b) const { return join_[a][b]; }
  int bottom() const { return index_.at(0); }
  int top() const { return index_.at(m_.ground()); }

  // Covers of flat idx (flats covering it).
  const std::vector<int>& covers_above(int idx) const { return covers_[idx]; }

  // Moebius function mu(F, G) on the interval [F, G]; NotComparable unless
  // F <= G.
  long long mobius(int f, int g) const;

 private:
  const Matroid m_;
  std::vector<Flat> flats_;
  std::vector<std::vector<int>> strata_;
  std::map<Mask, int> index_;
  std::vector<std::vector<int>> join_;
  std::vector<std::vector<int>> covers_;
  mutable std::mutex mob_mu_;
  mutable std::map<std::pair<int, int>, long long> mob_cache_;
};

}  // namespace mih
