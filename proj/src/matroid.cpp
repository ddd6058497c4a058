#include "mih/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mih {

Matroid::Matroid(int n, std::vector<Mask> bases, std::string label)
    : n_(n), bases_(std::move(bases)), label_(std::move(label)) {
  if (n < 0 || n > 30) throw std::invalid_argument("ground set size out of range");
  std::sort(bases_.begin(), bases_.end());
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  if (bases_.empty()) throw EmptyBasisSet("no bases");
  d_ = popcount(bases_[0]);
  names_.resize(n_);
  std::iota(names_.begin(), names_.end(), 0);
  validate();
}

void Matroid::validate() const {
  Mask g = ground();
  Mask covered = 0;
  for (Mask b : bases_) {
    if (!subset(b, g)) throw AxiomViolation("basis not inside ground set");
    if (popcount(b) != d_) throw AxiomViolation("bases of unequal cardinality");
    covered |= b;
  }
  if (covered != g) throw LoopDetected("element in no basis");
  // Basis exchange.
  for (Mask b1 : bases_) {
    for (Mask b2 : bases_) {
      if (b1 == b2) continue;
      Mask only1 = b1 & ~b2;
      for (int x = 0; x < n_; ++x) {
        if (!(only1 >> x & 1)) continue;
        bool ok = false;
        Mask only2 = b2 & ~b1;
        for (int y = 0; y < n_ && !ok; ++y) {
          if (!(only2 >> y & 1)) continue;
          Mask cand = (b1 & ~(Mask(1) << x)) | (Mask(1) << y);
          ok = std::binary_search(bases_.begin(), bases_.end(), cand);
        }
        if (!ok) throw AxiomViolation("basis exchange fails");
      }
    }
  }
}

int Matroid::rank_of(Mask s) const {
  s &= ground();
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = rank_cache_.find(s);
    if (it != rank_cache_.end()) return it->second;
  }
  int best = 0;
  for (Mask b : bases_) best = std::max(best, popcount(b & s));
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (rank_cache_.size() > (1u << 22)) rank_cache_.clear();
  rank_cache_.emplace(s, best);
  return best;
}

Mask Matroid::closure(Mask s) const {
  int r = rank_of(s);
  Mask cl = s;
  for (int e = 0; e < n_; ++e) {
    if (s >> e & 1) continue;
    if (rank_of(s | (Mask(1) << e)) == r) cl |= Mask(1) << e;
  }
  return cl;
}

Matroid Matroid::uniform(int k, int n) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform: need 0 <= k <= n");
  if (k == 0 && n > 0) throw LoopDetected("rank zero with nonempty ground set");
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << n); ++s)
    if (popcount(s) == k) bases.push_back(s);
  if (n == 0) bases.push_back(0);
  return Matroid(n, std::move(bases),
                 "U(" + std::to_string(k) + "," + std::to_string(n) + ")");
}

Matroid Matroid::boolean(int n) {
  Matroid m = uniform(n, n);
  m.label_ = "B" + std::to_string(n);
  return m;
}

namespace {
// Union-find for spanning-forest tests.
struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};
}  // namespace

Matroid Matroid::graphic(int num_vertices,
                         const std::vector<std::pair<int, int>>& edges,
                         std::string label) {
  int n = static_cast<int>(edges.size());
  for (auto& [a, b] : edges) {
    if (a == b) throw LoopDetected("self-loop edge");
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
      throw std::invalid_argument("edge endpoint out of range");
  }
  // Rank = num_vertices - #components of the full graph.
  DSU full(num_vertices);
  int r = 0;
  for (auto& [a, b] : edges)
    if (full.unite(a, b)) ++r;
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << n); ++s) {
    if (popcount(s) != r) continue;
    DSU dsu(num_vertices);
    bool forest = true;
    for (int i = 0; i < n && forest; ++i)
      if (s >> i & 1) forest = dsu.unite(edges[i].first, edges[i].second);
    if (forest) bases.push_back(s);
  }
  return Matroid(n, std::move(bases),
                 label.empty() ? "graphic" : std::move(label));
}

namespace {
int gfp_rank(int p, std::vector<std::vector<int>> cols, const std::vector<int>& pick) {
  if (pick.empty()) return 0;
  size_t h = cols[pick[0]].size();
  // Transpose the picked columns into rows for elimination.
  std::vector<std::vector<int>> m(pick.size(), std::vector<int>(h));
  for (size_t i = 0; i < pick.size(); ++i)
    for (size_t j = 0; j < h; ++j) m[i][j] = ((cols[pick[i]][j] % p) + p) % p;
  int rank = 0;
  for (size_t c = 0; c < h && rank < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (size_t i = rank; i < m.size(); ++i)
      if (m[i][c] != 0) { piv = static_cast<int>(i); break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    // Normalize pivot to 1 (p prime).
    int inv = 1, a = m[rank][c] % p;
    for (int e = p - 2; e > 0; e >>= 1) { if (e & 1) inv = inv * a % p; a = a * a % p; }
    for (size_t j = c; j < h; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) == rank || m[i][c] == 0) continue;
      int f = m[i][c];
      for (size_t j = c; j < h; ++j)
        m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}
}  // namespace

Matroid Matroid::linear(int p, const std::vector<std::vector<int>>& columns,
                        std::string label) {
  int n = static_cast<int>(columns.size());
  for (auto& col : columns) {
    bool zero = true;
    for (int v : col)
      if (((v % p) + p) % p != 0) zero = false;
    if (zero) throw LoopDetected("zero column");
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  int d = gfp_rank(p, columns, all);
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << n); ++s) {
    if (popcount(s) != d) continue;
    std::vector<int> pick;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) pick.push_back(i);
    if (gfp_rank(p, columns, pick) == d) bases.push_back(s);
  }
  return Matroid(n, std::move(bases), label.empty() ? "linear" : std::move(label));
}

Matroid Matroid::direct_sum(const Matroid& a, const Matroid& b) {
  std::vector<Mask> bases;
  for (Mask x : a.bases())
    for (Mask y : b.bases()) bases.push_back(x | (y << a.n()));
  return Matroid(a.n() + b.n(), std::move(bases),
                 a.label() + "+" + b.label());
}

namespace {
// Renumber a subset of the ground set to 0..k-1 preserving order; returns the
// position list (new index -> old element).
std::vector<int> positions(Mask s, int n) {
  std::vector<int> pos;
  for (int e = 0; e < n; ++e)
    if (s >> e & 1) pos.push_back(e);
  return pos;
}
Mask compress(Mask s, const std::vector<int>& pos) {
  Mask out = 0;
  for (size_t i = 0; i < pos.size(); ++i)
    if (s >> pos[i] & 1) out |= Mask(1) << i;
  return out;
}
}  // namespace

Matroid Matroid::localization(Mask flat) const {
  if (closure(flat) != flat) throw NotAFlat("localization at a non-flat");
  auto pos = positions(flat, n_);
  int r = rank_of(flat);
  std::vector<Mask> bases;
  int k = static_cast<int>(pos.size());
  for (Mask s = 0; s < (Mask(1) << k); ++s) {
    if (popcount(s) != r) continue;
    Mask lifted = 0;
    for (int i = 0; i < k; ++i)
      if (s >> i & 1) lifted |= Mask(1) << pos[i];
    if (rank_of(lifted) == r) bases.push_back(s);
  }
  Matroid m(k, std::move(bases), label_ + "^F");
  for (int i = 0; i < k; ++i) m.names_[i] = names_[pos[i]];
  return m;
}

Matroid Matroid::contraction(Mask flat) const {
  if (closure(flat) != flat) throw NotAFlat("contraction at a non-flat");
  Mask rest = ground() & ~flat;
  auto pos = positions(rest, n_);
  int rf = rank_of(flat);
  int r = d_ - rf;
  int k = static_cast<int>(pos.size());
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << k); ++s) {
    if (popcount(s) != r) continue;
    Mask lifted = flat;
    for (int i = 0; i < k; ++i)
      if (s >> i & 1) lifted |= Mask(1) << pos[i];
    if (rank_of(lifted) == d_) bases.push_back(s);
  }
  Matroid m(k, std::move(bases), label_ + "_F");
  for (int i = 0; i < k; ++i) m.names_[i] = names_[pos[i]];
  return m;
}

Matroid Matroid::interval_minor(Mask f, Mask g) const {
  if (!subset(f, g)) throw NotComparable("interval minor needs F <= G");
  Matroid loc = localization(g);
  // Translate f into the localized ground set.
  auto pos = positions(g, n_);
  Mask f_local = compress(f, pos);
  Matroid out = loc.contraction(f_local);
  return out;
}

Matroid Matroid::deletion(int element) const {
  bool coloop = true;
  for (Mask b : bases_)
    if (!(b >> element & 1)) { coloop = false; break; }
  if (coloop) throw ColoopDeletion("deleting a coloop");
  Mask rest = ground() & ~(Mask(1) << element);
  auto pos = positions(rest, n_);
  std::vector<Mask> bases;
  for (Mask b : bases_)
    if (!(b >> element & 1)) bases.push_back(compress(b, pos));
  Matroid m(n_ - 1, std::move(bases), label_ + "\\e");
  for (size_t i = 0; i < pos.size(); ++i) m.names_[i] = names_[pos[i]];
  return m;
}

std::string Matroid::key() const {
  std::ostringstream os;
  os << n_ << ":";
  for (Mask b : bases_) os << b << ",";
  return os.str();
}

FlatLattice::FlatLattice(const Matroid& m) : m_(m) {
  int d = m.rank();
  strata_.resize(d + 1);
  Mask bottom = m.closure(0);
  // Looplessness makes the empty set closed.
  flats_.push_back({bottom, 0});
  strata_[0].push_back(0);
  index_[bottom] = 0;
  for (int r = 0; r < d; ++r) {
    for (int fi : strata_[r]) {
      Mask f = flats_[fi].elements;
      for (int e = 0; e < m.n(); ++e) {
        if (f >> e & 1) continue;
        Mask g = m.closure(f | (Mask(1) << e));
        if (!index_.count(g)) {
          int idx = static_cast<int>(flats_.size());
          flats_.push_back({g, r + 1});
          strata_[r + 1].push_back(idx);
          index_[g] = idx;
        }
      }
    }
  }
  int nf = num_flats();
  join_.assign(nf, std::vector<int>(nf));
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < nf; ++b)
      join_[a][b] = index_.at(m.closure(flats_[a].elements | flats_[b].elements));
  covers_.assign(nf, {});
  for (int a = 0; a < nf; ++a) {
    int r = flats_[a].rank;
    if (r == d) continue;
    for (int b : strata_[r + 1])
      if (leq(a, b)) covers_[a].push_back(b);
  }
}

long long FlatLattice::mobius(int f, int g) const {
  if (!leq(f, g)) throw NotComparable("mobius needs F <= G");
  if (f == g) return 1;
  {
    std::lock_guard<std::mutex> lk(mob_mu_);
    auto it = mob_cache_.find({f, g});
    if (it != mob_cache_.end()) return it->second;
  }
  // mu(f,g) = - sum over f <= h < g of mu(f,h).
  long long acc = 0;
  for (int h = 0; h < num_flats(); ++h)
    if (h != g && leq(f, h) && leq(h, g)) acc += mobius(f, h);
  long long v = -acc;
  std::lock_guard<std::mutex> lk(mob_mu_);
  mob_cache_[{f, g}] = v;
  return v;
}

}  // namespace mih
