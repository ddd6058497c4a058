#include "mih/orlik_solomon.hpp"

#include <algorithm>
#include <map>

namespace mih {

namespace {

std::mutex os_registry_mu;
std::map<std::string, std::shared_ptr<OSAlgebra>>& os_registry() {
  static std::map<std::string, std::shared_ptr<OSAlgebra>> r;
  return r;
}

// Sign of merging the ascending lists of disjoint sets t and u into one
// ascending wedge: parity of the number of pairs (x in t, y in u, x > y).
int merge_sign(Mask t, Mask u, int n) {
  int inv = 0;
  for (int y = 0; y < n; ++y) {
    if (!(u >> y & 1)) continue;
    inv += popcount(t >> (y + 1));
  }
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

std::shared_ptr<OSAlgebra> OSAlgebra::get(const CtxPtr& ctx) {
  std::string k = ctx->m.key();
  std::lock_guard<std::mutex> lk(os_registry_mu);
  auto& reg = os_registry();
  auto it = reg.find(k);
  if (it != reg.end()) return it->second;
  auto p = std::make_shared<OSAlgebra>(ctx);
  reg.emplace(std::move(k), p);
  return p;
}

OSAlgebra::OSAlgebra(CtxPtr c) : ctx(std::move(c)) {
  const Matroid& m = ctx->m;
  const FlatLattice& l = ctx->lattice;
  int n = m.n(), d = m.rank();
  monos_.resize(d + 1);
  mono_index_.resize(d + 1);
  elim_.resize(d + 1);
  basis_idx_.resize(d + 1);
  basis_.resize(d + 1);
  basis_flat_.resize(d + 1);
  blocks_.resize(l.num_flats());

  for (Mask s = 0; s < (Mask(1) << n); ++s) {
    int k = popcount(s);
    if (k > d) continue;
    monos_[k].push_back(s);
  }
  for (int k = 0; k <= d; ++k) {
    std::sort(monos_[k].begin(), monos_[k].end());
    for (size_t i = 0; i < monos_[k].size(); ++i)
      mono_index_[k].emplace(monos_[k][i], static_cast<int>(i));
  }

  // Circuits: minimal dependent sets.
  std::vector<Mask> circuits;
  for (Mask s = 1; s < (Mask(1) << n); ++s) {
    if (m.is_independent(s)) continue;
    bool minimal = true;
    for (int e = 0; e < n && minimal; ++e)
      if (s >> e & 1)
        if (!m.is_independent(s & ~(Mask(1) << e))) minimal = false;
    if (minimal) circuits.push_back(s);
  }

  // Relations e_T * d(e_C) in each degree: |T| = k - |C| + 1, T meeting C in
  // at most one element (two or more shared elements kill every term).
  for (int k = 1; k <= d; ++k) {
    for (Mask circ : circuits) {
      int csz = popcount(circ);
      int tsz = k - csz + 1;
      if (tsz < 0) continue;
      for (Mask t = 0; t < (Mask(1) << n); ++t) {
        if (popcount(t) != tsz) continue;
        if (popcount(t & circ) > 1) continue;
        SparseVec row;
        int j = 0;
        for (int e = 0; e < n; ++e) {
          if (!(circ >> e & 1)) continue;
          ++j;  // 1-based position of e inside the circuit
          Mask rest = circ & ~(Mask(1) << e);
          if (t & rest) continue;
          int sign = (j % 2 == 0 ? 1 : -1) * merge_sign(t, rest, n);
          row.push(mono_index_[k].at(t | rest), Rat(sign));
        }
        row.normalize_sorted();
        elim_[k].add_row(std::move(row));
      }
    }
  }

  for (int k = 0; k <= d; ++k) {
    for (size_t i = 0; i < monos_[k].size(); ++i) {
      if (elim_[k].is_pivot(static_cast<int>(i))) continue;
      basis_idx_[k].push_back(static_cast<int>(i));
      Mask s = monos_[k][i];
      basis_[k].push_back(s);
      int fl = l.index_of(m.closure(s));
      basis_flat_[k].push_back(fl);
      blocks_[fl].push_back(static_cast<int>(basis_[k].size()) - 1);
    }
  }

  boundary_.resize(d + 1);
  for (int k = 1; k <= d; ++k) {
    QMatrix b(dim(k), dim(k - 1));
    for (int i = 0; i < dim(k); ++i) {
      Mask s = basis_[k][i];
      int j = 0;
      for (int e = 0; e < n; ++e) {
        if (!(s >> e & 1)) continue;
        ++j;
        SparseVec nf = normal_form(s & ~(Mask(1) << e));
        int sign = (j % 2 == 0 ? 1 : -1);
        for (auto& [pos, cv] : nf.t) b(i, pos) += Rat(sign) * cv;
      }
    }
    boundary_[k] = std::move(b);
  }
  boundary_[0] = QMatrix(dim(0), 0);
}

SparseVec OSAlgebra::normal_form(Mask s) const {
  int k = popcount(s);
  SparseVec v;
  v.push(mono_index_[k].at(s), Rat(1));
  elim_[k].reduce_full(v);
  std::unordered_map<int, int> to_basis;
  for (size_t p = 0; p < basis_idx_[k].size(); ++p)
    to_basis.emplace(basis_idx_[k][p], static_cast<int>(p));
  for (auto& [i, cv] : v.t) i = to_basis.at(i);
  return v;
}

QMatrix OSAlgebra::action_matrix(const std::vector<int>& perm, int k) const {
  QMatrix a(dim(k), dim(k));
  int n = ctx->m.n();
  for (int i = 0; i < dim(k); ++i) {
    Mask s = basis_[k][i];
    std::vector<int> img;
    for (int e = 0; e < n; ++e)
      if (s >> e & 1) img.push_back(perm[e]);
    int inv = 0;
    for (size_t x = 0; x < img.size(); ++x)
      for (size_t y = x + 1; y < img.size(); ++y)
        if (img[x] > img[y]) ++inv;
    Mask t = 0;
    for (int e : img) t |= Mask(1) << e;
    SparseVec nf = normal_form(t);
    Rat sign = inv % 2 == 0 ? 1 : -1;
    for (auto& [pos, cv] : nf.t) a(i, pos) = sign * cv;
  }
  return a;
}

}  // namespace mih
