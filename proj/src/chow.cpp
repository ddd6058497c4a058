#include "mih/chow.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace mih {

namespace {

std::mutex ring_registry_mu;
std::map<std::pair<std::string, bool>, RingPtr>& ring_registry() {
  static std::map<std::pair<std::string, bool>, RingPtr> r;
  return r;
}

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
    for (size_t i = 0; i < a.f.size(); ++i)
      if (a.f[i].first != b.f[i].first) return a.f[i].first < b.f[i].first;
    // Same support chain: larger exponents on earlier flats first, so the
    // elimination prefers them as pivots and the basis keeps flat exponents.
    for (size_t i = 0; i < a.f.size(); ++i)
      if (a.f[i].second != b.f[i].second) return a.f[i].second > b.f[i].second;
    return false;
  }
};

Int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r(1);
  for (int i = 1; i <= k; ++i) { r *= (n - k + i); r /= i; }
  return r;
}

void accum(RingElement& out, int pos, const Rat& v) {
  if (v == 0) return;
  auto it = out.c.find(pos);
  if (it == out.c.end()) out.c.emplace(pos, v);
  else {
    it->second += v;
    if (it->second == 0) out.c.erase(it);
  }
}

}  // namespace

RingElement& RingElement::operator+=(const RingElement& o) {
  for (auto& [i, v] : o.c) accum(*this, i, v);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (auto& [i, v] : o.c) accum(*this, i, -v);
  return *this;
}

RingElement& RingElement::operator*=(const Rat& s) {
  if (s == 0) { c.clear(); return *this; }
  for (auto& [i, v] : c) v *= s;
  return *this;
}

int ChowRing::dual_threshold() {
  static int t = [] {
    const char* e = std::getenv("MIH_DUAL_THRESHOLD");
    return e ? std::atoi(e) : 6000;
  }();
  return t;
}

RingPtr ChowRing::get(const CtxPtr& ctx, bool augmented) {
  auto key = std::make_pair(ctx->m.key(), augmented);
  {
    std::lock_guard<std::mutex> lk(ring_registry_mu);
    auto it = ring_registry().find(key);
    if (it != ring_registry().end()) return it->second;
  }
  RingPtr r = std::make_shared<ChowRing>(ctx, augmented);
  std::lock_guard<std::mutex> lk(ring_registry_mu);
  auto [it, inserted] = ring_registry().emplace(key, r);
  return it->second;
}

ChowRing::ChowRing(CtxPtr c, bool aug, int force_mode)
    : ctx(std::move(c)),
      augmented(aug),
      top(aug ? ctx->rank() : ctx->rank() - 1),
      force_mode_(force_mode) {
  if (!aug && ctx->rank() < 1)
    throw RankZeroNonAugmented("plain Chow ring needs positive rank");
  build();
}

MonoKey ChowRing::key_of(const Mono& m) const {
  MonoKey k = 0;
  for (auto& [fl, e] : m.f) k = (k << 16) | MonoKey((fl << 8) | e);
  return k;
}

bool ChowRing::merge(const Mono& a, const Mono& b, Mono& out) const {
  out.f.clear();
  size_t i = 0, j = 0;
  const FlatLattice& l = ctx->lattice;
  while (i < a.f.size() && j < b.f.size()) {
    int fa = a.f[i].first, fb = b.f[j].first;
    if (fa == fb) {
      out.f.emplace_back(fa, a.f[i].second + b.f[j].second);
      ++i; ++j;
    } else if (!comparable(fa, fb)) {
      return false;
    } else if (subset(l.flat(fa).elements, l.flat(fb).elements)) {
      out.f.push_back(a.f[i]); ++i;
    } else {
      out.f.push_back(b.f[j]); ++j;
    }
  }
  while (i < a.f.size()) out.f.push_back(a.f[i++]);
  while (j < b.f.size()) out.f.push_back(b.f[j++]);
  return true;
}

void ChowRing::build() {
  const FlatLattice& l = ctx->lattice;
  int nf = l.num_flats();
  for (int f = 0; f < nf; ++f) {
    if (f == l.top()) continue;
    if (!augmented && f == l.bottom()) continue;
    var_flats_.push_back(f);
  }
  std::sort(var_flats_.begin(), var_flats_.end());
  cmp_words_ = (nf + 63) / 64;
  comparable_.assign(size_t(nf) * cmp_words_, 0);
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < nf; ++b) {
      Mask ma = l.flat(a).elements, mb = l.flat(b).elements;
      if (subset(ma, mb) || subset(mb, ma))
        comparable_[size_t(a) * cmp_words_ + (b >> 6)] |= uint64_t(1) << (b & 63);
    }

  // Decide the representation: degrees above the middle switch to dual
  // coordinates once any of their monomial tables would exceed the
  // threshold.
  int half = (top + 1) / 2;
  size_t worst = 0;
  std::vector<size_t> counts(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    counts[k] = enumerate_monos(k).size();
    if (k > half) worst = std::max(worst, counts[k]);
  }
  if (force_mode_ >= 0) dual_mode_ = force_mode_ == 1;
  else
    dual_mode_ = static_cast<int>(std::max(worst, counts[top])) >
                 dual_threshold();
  if (dual_mode_ && top < 2) dual_mode_ = false;
  real_limit_ = dual_mode_ ? half : top;

  const bool verbose = std::getenv("MIH_RING_TRACE") != nullptr;
  deg_.resize(top + 1);
  for (int k = 0; k <= real_limit_; ++k) {
    auto t0 = std::chrono::steady_clock::now();
    build_degree(k);
    if (verbose)
      std::cerr << "[ring " << ctx->m.label() << (augmented ? "+" : "-")
                << "] deg " << k << ": " << deg_[k]->monos.size()
                << " monos, " << deg_[k]->basis.size() << " basis, "
                << std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count()
                << "s\n";
  }
  if (dual_mode_ && verbose)
    std::cerr << "[ring " << ctx->m.label() << (augmented ? "+" : "-")
              << "] dual coordinates above degree " << real_limit_ << "\n";
  build_top_functional();
}

std::vector<Mono> ChowRing::enumerate_monos(int k) const {
  std::vector<Mono> out;
  if (k == 0) {
    out.push_back(Mono{});
    return out;
  }
  const FlatLattice& l = ctx->lattice;
  Mono cur;
  std::function<void(int, int)> rec = [&](int last_var_pos, int remaining) {
    for (size_t vi = last_var_pos < 0 ? 0 : last_var_pos + 1;
         vi < var_flats_.size(); ++vi) {
      int fl = var_flats_[vi];
      if (last_var_pos >= 0) {
        int prev = var_flats_[last_var_pos];
        Mask mp = l.flat(prev).elements, mf = l.flat(fl).elements;
        if (!(subset(mp, mf) && mp != mf)) continue;
      }
      for (int e = 1; e <= remaining; ++e) {
        cur.f.emplace_back(fl, e);
        if (e == remaining) out.push_back(cur);
        else rec(static_cast<int>(vi), remaining - e);
        cur.f.pop_back();
      }
    }
  };
  rec(-1, k);
  return out;
}

void ChowRing::for_each_relation_form(
    int k, const std::function<void(const std::vector<std::pair<int, Rat>>&,
                                    const Mono&)>& fn) const {
  // The degree-k component of the relation ideal is spanned by y * m
  // (augmented; y the class of a rank-1 flat not below the least flat of m)
  // respectively L * m (plain; L the linear relations between the x's), with
  // m running over the chain monomials of degree k-1.
  const FlatLattice& l = ctx->lattice;
  std::vector<Mono> prev = enumerate_monos(k - 1);
  if (augmented) {
    if (k < 2) return;
    std::vector<std::vector<std::pair<int, Rat>>> yforms;
    std::vector<Mask> rmasks;
    for (int r1 : l.stratum(1)) {
      std::vector<std::pair<int, Rat>> form;
      Mask rm = l.flat(r1).elements;
      for (int g : var_flats_)
        if (!subset(rm, l.flat(g).elements)) form.emplace_back(g, Rat(1));
      yforms.push_back(std::move(form));
      rmasks.push_back(rm);
    }
    for (const Mono& m : prev) {
      Mask minflat = l.flat(m.f[0].first).elements;
      for (size_t ri = 0; ri < yforms.size(); ++ri)
        if ((rmasks[ri] & ~minflat) != 0) fn(yforms[ri], m);
    }
  } else {
    if (k < 1) return;
    int anchor = l.stratum(1).front();
    Mask am = l.flat(anchor).elements;
    std::vector<std::vector<std::pair<int, Rat>>> forms;
    for (int r1 : l.stratum(1)) {
      if (r1 == anchor) continue;
      Mask rm = l.flat(r1).elements;
      std::vector<std::pair<int, Rat>> form;
      for (int g : var_flats_) {
        Mask gm = l.flat(g).elements;
        bool has_a = subset(am, gm), has_r = subset(rm, gm);
        if (has_a && !has_r) form.emplace_back(g, Rat(1));
        else if (!has_a && has_r) form.emplace_back(g, Rat(-1));
      }
      forms.push_back(std::move(form));
    }
    for (const Mono& m : prev)
      for (auto& form : forms) fn(form, m);
  }
}

void ChowRing::build_degree(int k) {
  deg_[k] = std::make_unique<DegreeData>();
  DegreeData& dd = *deg_[k];
  dd.monos = enumerate_monos(k);
  std::sort(dd.monos.begin(), dd.monos.end(), MonoLess{});
  dd.index.reserve(dd.monos.size() * 2);
  for (size_t i = 0; i < dd.monos.size(); ++i)
    dd.index.emplace(key_of(dd.monos[i]), static_cast<int>(i));

  Mono merged;
  for_each_relation_form(
      k, [&](const std::vector<std::pair<int, Rat>>& form, const Mono& m) {
        SparseVec row;
        Mono mm;
        for (auto& [fl, coef] : form) {
          Mono var{{{fl, 1}}};
          if (!merge(var, m, mm)) continue;
          row.push(dd.index.find(key_of(mm))->second, coef);
        }
        row.normalize_sorted();
        dd.elim.add_row(std::move(row));
      });

  dd.mono_to_basis.assign(dd.monos.size(), -1);
  for (size_t i = 0; i < dd.monos.size(); ++i) {
    if (!dd.elim.is_pivot(static_cast<int>(i))) {
      dd.mono_to_basis[i] = static_cast<int>(dd.basis.size());
      dd.basis.push_back(static_cast<int>(i));
    }
  }
}

std::vector<Mono> ChowRing::complete_flags() const {
  const FlatLattice& l = ctx->lattice;
  std::vector<Mono> flags;
  if (top == 0) {
    flags.push_back(Mono{});
    return flags;
  }
  Mono cur;
  std::function<void(int)> rec = [&](int flat) {
    cur.f.emplace_back(flat, 1);
    if (static_cast<int>(cur.f.size()) == top) {
      flags.push_back(cur);
    } else {
      for (int c : l.covers_above(flat))
        if (c != l.top()) rec(c);
    }
    cur.f.pop_back();
  };
  if (augmented) rec(l.bottom());
  else
    for (int f : l.stratum(1)) rec(f);
  return flags;
}

void ChowRing::build_top_functional() {
  std::vector<Mono> flags = complete_flags();
  if (flags.empty()) throw std::logic_error("no complete flag");
  top_flag_ = *std::min_element(flags.begin(), flags.end(), MonoLess{});

  if (!dual_mode_) {
    DegreeData& dd = *deg_[top];
    if (static_cast<int>(dd.basis.size()) != 1)
      throw std::logic_error("top graded piece is not one-dimensional");
    const SparseVec& v = nf(top, dd.index.at(key_of(top_flag_)));
    if (v.t.size() != 1 || v.t[0].second == 0)
      throw std::logic_error("complete flag vanishes in the quotient");
  }
  for (const Mono& fl : flags)
    if (deg_of_mono(fl) != 1)
      throw std::logic_error("degree map disagrees across complete flags");
  if (dual_mode_) certify_top_functional();
}

void ChowRing::certify_top_functional() const {
  // The recursively computed functional must kill the entire relation span
  // of the top degree; with the flag normalization this certifies it is the
  // degree map of the quotient, and with it the dual coordinates of every
  // degree, since a relation times anything lands in that span.
  Mono merged;
  for_each_relation_form(
      top, [&](const std::vector<std::pair<int, Rat>>& form, const Mono& m) {
        Rat acc(0);
        Mono mm;
        for (auto& [fl, coef] : form) {
          Mono var{{{fl, 1}}};
          if (!merge(var, m, mm)) continue;
          acc += coef * deg_of_mono(mm);
        }
        if (acc != 0)
          throw std::logic_error(
              "degree functional fails a top-degree relation");
      });
}

int ChowRing::dim(int k) const {
  if (k < 0 || k > top) return 0;
  if (k == top) {
    if (dual_mode_) return 1;
    return static_cast<int>(deg_[top]->basis.size());
  }
  if (k <= real_limit_) return static_cast<int>(deg_[k]->basis.size());
  return dim(top - k);
}

std::vector<int> ChowRing::hilbert() const {
  std::vector<int> h(top + 1);
  for (int k = 0; k <= top; ++k) h[k] = dim(k);
  return h;
}

int ChowRing::num_monomials(int k) const {
  if (k <= real_limit_) return static_cast<int>(deg_[k]->monos.size());
  return static_cast<int>(enumerate_monos(k).size());
}

const Mono& ChowRing::basis_mono(int k, int pos) const {
  if (k == top && dual_mode_) return top_flag_;
  if (!is_real_degree(k))
    throw std::logic_error("no monomial basis at a dual degree");
  return deg_[k]->monos[deg_[k]->basis[pos]];
}

int ChowRing::mono_index(const Mono& m) const {
  int k = m.degree();
  if (!is_real_degree(k)) return -1;
  auto it = deg_[k]->index.find(key_of(m));
  return it == deg_[k]->index.end() ? -1 : it->second;
}

const SparseVec& ChowRing::nf(int k, int mono_idx) const {
  DegreeData& dd = *deg_[k];
  std::lock_guard<std::mutex> lk(dd.nf_mu);
  auto it = dd.nf_cache.find(mono_idx);
  if (it != dd.nf_cache.end()) return it->second;
  SparseVec v;
  v.push(mono_idx, Rat(1));
  dd.elim.reduce_full(v);
  for (auto& [i, c] : v.t) i = dd.mono_to_basis[i];
  return dd.nf_cache.emplace(mono_idx, std::move(v)).first->second;
}

RingElement ChowRing::one() const {
  RingElement e{this, 0, {}};
  e.c[0] = 1;
  return e;
}

RingElement ChowRing::dual_coords(
    const std::vector<std::pair<Mono, Rat>>& terms, int k) const {
  // Coordinates of a monomial combination in the dual zone: pairings with
  // the complementary normal basis.
  int c = top - k;
  RingElement e{this, k, {}};
  Mono merged;
  for (int j = 0; j < dim(k); ++j) {
    const Mono& bj = basis_mono(c, j);
    Rat acc(0);
    for (auto& [m, coef] : terms)
      if (merge(m, bj, merged)) {
        Rat d = deg_of_mono(merged);
        if (d != 0) acc += coef * d;
      }
    if (acc != 0) e.c[j] = acc;
  }
  return e;
}

RingElement ChowRing::element_of_monos(
    const std::vector<std::pair<Mono, Rat>>& terms, int k) const {
  if (k > top) return zero(top);
  if (k == top) {
    RingElement e{this, k, {}};
    Rat acc(0);
    for (auto& [m, coef] : terms) acc += coef * deg_of_mono(m);
    if (dual_mode_) {
      if (acc != 0) e.c[0] = acc;
      return e;
    }
    // Real top degree: scale back to the basis coordinate.
    const DegreeData& dd = *deg_[top];
    const SparseVec& flag = nf(top, dd.index.at(key_of(top_flag_)));
    if (acc != 0) e.c[0] = acc * flag.t[0].second;
    return e;
  }
  if (!is_real_degree(k)) return dual_coords(terms, k);
  RingElement e{this, k, {}};
  for (auto& [m, coef] : terms) {
    int idx = mono_index(m);
    if (idx < 0) continue;
    for (auto& [pos, cv] : nf(k, idx).t) accum(e, pos, coef * cv);
  }
  return e;
}

RingElement ChowRing::element_of_mono(const Mono& m) const {
  int k = m.degree();
  if (k > top) return zero(top);
  return element_of_monos({{m, Rat(1)}}, k);
}

RingElement ChowRing::x_class(int flat_idx) const {
  if (!std::binary_search(var_flats_.begin(), var_flats_.end(), flat_idx))
    throw KindUnavailable("no x variable at this flat for this flavor");
  return element_of_mono(Mono{{{flat_idx, 1}}});
}

RingElement ChowRing::alpha() const {
  {
    std::lock_guard<std::mutex> lk(cls_mu_);
    if (alpha_cache_) return *alpha_cache_;
  }
  RingElement result = alpha_uncached();
  std::lock_guard<std::mutex> lk(cls_mu_);
  if (!alpha_cache_) alpha_cache_ = result;
  return *alpha_cache_;
}

RingElement ChowRing::alpha_uncached() const {
  const FlatLattice& l = ctx->lattice;
  if (augmented) {
    RingElement a = zero(1);
    for (int g : var_flats_) a += x_class(g);
    return a;
  }
  std::optional<RingElement> out;
  for (int r1 : l.stratum(1)) {
    Mask rm = l.flat(r1).elements;
    RingElement a = zero(1);
    for (int g : var_flats_)
      if (subset(rm, l.flat(g).elements)) a += x_class(g);
    if (!out) out = a;
    else if (!(*out == a))
      throw std::logic_error("alpha depends on the defining element");
  }
  return out ? *out : zero(1);
}

RingElement ChowRing::beta() const {
  if (augmented) throw KindUnavailable("beta lives in the plain ring");
  {
    std::lock_guard<std::mutex> lk(cls_mu_);
    if (beta_cache_) return *beta_cache_;
  }
  RingElement result = beta_uncached();
  std::lock_guard<std::mutex> lk(cls_mu_);
  if (!beta_cache_) beta_cache_ = result;
  return *beta_cache_;
}

RingElement ChowRing::beta_uncached() const {
  const FlatLattice& l = ctx->lattice;
  std::optional<RingElement> out;
  for (int r1 : l.stratum(1)) {
    Mask rm = l.flat(r1).elements;
    RingElement b = zero(1);
    for (int g : var_flats_)
      if (!subset(rm, l.flat(g).elements)) b += x_class(g);
    if (!out) out = b;
    else if (!(*out == b))
      throw std::logic_error("beta depends on the defining element");
  }
  return out ? *out : zero(1);
}

RingElement ChowRing::y_elem(int e) const {
  if (!augmented) throw KindUnavailable("y classes live in the augmented ring");
  const FlatLattice& l = ctx->lattice;
  RingElement y = zero(1);
  for (int g : var_flats_)
    if (!(l.flat(g).elements >> e & 1)) y += x_class(g);
  return y;
}

RingElement ChowRing::y_flat(int flat_idx) const {
  if (!augmented) throw KindUnavailable("y classes live in the augmented ring");
  {
    std::lock_guard<std::mutex> lk(cls_mu_);
    auto it = yflat_cache_.find(flat_idx);
    if (it != yflat_cache_.end()) return it->second;
  }
  RingElement result = y_flat_uncached(flat_idx);
  std::lock_guard<std::mutex> lk(cls_mu_);
  return yflat_cache_.emplace(flat_idx, std::move(result)).first->second;
}

RingElement ChowRing::y_flat_uncached(int flat_idx) const {
  const FlatLattice& l = ctx->lattice;
  Mask fm = l.flat(flat_idx).elements;
  int r = l.flat(flat_idx).rank;
  const Matroid& m = ctx->m;
  if (r == 0) return one();
  std::optional<RingElement> out;
  int checked = 0;
  for (Mask s = fm;; s = (s - 1) & fm) {
    if (popcount(s) == r && m.rank_of(s) == r) {
      RingElement prod = one();
      for (int e = 0; e < m.n(); ++e)
        if (s >> e & 1) prod = mul(prod, y_elem(e));
      if (!out) out = prod;
      else if (!(*out == prod))
        throw std::logic_error("y_F depends on the chosen spanning set");
      if (++checked >= 12) break;
    }
    if (s == 0) break;
  }
  return *out;
}

RingElement ChowRing::mul(const RingElement& a, const RingElement& b) const {
  int t = a.deg + b.deg;
  if (t > top) throw DegreeOverflow("product exceeds the top degree");
  bool a_real = is_real_degree(a.deg) || (a.deg == top && !dual_mode_);
  bool b_real = is_real_degree(b.deg) || (b.deg == top && !dual_mode_);
  // A factor sitting in the (dual) top degree can only be multiplied by a
  // scalar; treat it through the pairing below.
  if (a.deg == top && dual_mode_) a_real = false;
  if (b.deg == top && dual_mode_) b_real = false;

  if (a_real && b_real && (is_real_degree(t) || !dual_mode_)) {
    // Fully real path.
    RingElement out = zero(t);
    Mono merged;
    for (auto& [ia, ca] : a.c)
      for (auto& [ib, cb] : b.c) {
        const Mono& ma = basis_mono(a.deg, ia);
        const Mono& mb = basis_mono(b.deg, ib);
        if (!merge(ma, mb, merged)) continue;
        int idx = mono_index(merged);
        for (auto& [pos, cv] : nf(t, idx).t) accum(out, pos, ca * cb * cv);
      }
    return out;
  }

  if (a_real && b_real) {
    // Real factors, dual or top target: raw merge plus degree pairings.
    std::vector<std::pair<Mono, Rat>> raw;
    Mono merged;
    for (auto& [ia, ca] : a.c)
      for (auto& [ib, cb] : b.c) {
        const Mono& ma = basis_mono(a.deg, ia);
        const Mono& mb = basis_mono(b.deg, ib);
        if (merge(ma, mb, merged)) raw.emplace_back(merged, ca * cb);
      }
    if (t == top) {
      RingElement e{this, t, {}};
      Rat acc(0);
      for (auto& [m, coef] : raw) acc += coef * deg_of_mono(m);
      if (acc != 0) e.c[0] = acc;
      return e;
    }
    return dual_coords(raw, t);
  }

  // One dual factor v, one real factor r: (r v)_j = <v, r * e_j> computed in
  // the real zone, where e_j runs over the reference basis of the target.
  const RingElement& v = a_real ? b : a;
  const RingElement& r = a_real ? a : b;
  if (v.deg == top) {
    // Only scalars multiply the top degree.
    RingElement out = v;
    Rat s = r.c.empty() ? Rat(0) : r.c.begin()->second;
    out *= s;
    return out;
  }
  if (!is_real_degree(r.deg))
    throw std::logic_error("unsupported multiplication arrangement");
  if (t == top) {
    // Pairing of a dual-coordinate class with a real class of the reference
    // degree: plain dot product in those coordinates.
    if (top - v.deg != r.deg)
      throw std::logic_error("dual pairing degree mismatch");
    Rat acc(0);
    for (auto& [i, cv] : v.c) {
      auto it = r.c.find(i);
      if (it != r.c.end()) acc += cv * it->second;
    }
    RingElement e{this, top, {}};
    if (acc != 0) e.c[0] = acc;
    return e;
  }
  int cref = top - t;           // reference degree of the target
  int vref = top - v.deg;       // reference degree of v
  if (r.deg + cref != vref)
    throw std::logic_error("dual multiplication degree mismatch");
  RingElement out = zero(t);
  for (int j = 0; j < dim(t); ++j) {
    RingElement ej = zero(cref);
    ej.c[j] = 1;
    RingElement w = mul(r, ej);  // real x real into the real zone
    Rat acc(0);
    for (auto& [i, cv] : v.c) {
      auto it = w.c.find(i);
      if (it != w.c.end()) acc += cv * it->second;
    }
    if (acc != 0) out.c[j] = acc;
  }
  return out;
}

RingElement ChowRing::power(const RingElement& a, int e) const {
  RingElement out = one();
  for (int i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

Rat ChowRing::deg_value(const RingElement& e) const {
  if (e.deg != top) throw WrongDegree("degree functional needs top degree");
  if (e.c.empty()) return Rat(0);
  if (dual_mode_) return e.c.begin()->second;
  const DegreeData& dd = *deg_[top];
  const SparseVec& flag = nf(top, dd.index.at(key_of(top_flag_)));
  return e.c.begin()->second / flag.t[0].second;
}

Rat ChowRing::deg_of_mono(const Mono& m) const {
  if (m.degree() != top) throw WrongDegree("degree functional needs top degree");
  if (!dual_mode_) {
    int idx = mono_index(m);
    const SparseVec& v = nf(top, idx);
    if (v.t.empty()) return Rat(0);
    const DegreeData& dd = *deg_[top];
    const SparseVec& flag = nf(top, dd.index.at(key_of(top_flag_)));
    return v.t[0].second / flag.t[0].second;
  }
  MonoKey key = key_of(m);
  {
    std::lock_guard<std::mutex> lk(deg_mu_);
    auto it = deg_cache_.find(key);
    if (it != deg_cache_.end()) return it->second;
  }
  Rat val = deg_recursive(m);
  std::lock_guard<std::mutex> lk(deg_mu_);
  return deg_cache_.emplace(key, std::move(val)).first->second;
}

Rat ChowRing::deg_recursive(const Mono& m) const {
  // Peel the least flat F with exponent a:
  //   deg(x_F^a * rest) = (-1)^{a-1} C(a-1, j) * (alpha-power degree of the
  //   localization) * (degree of beta^{a-1-j} * rest in the contraction),
  // with j = rk F (augmented) or rk F - 1 (plain); zero when a - 1 < j.
  const FlatLattice& l = ctx->lattice;
  if (m.f.empty()) return Rat(1);  // top == 0
  int f1 = m.f[0].first;
  int a1 = m.f[0].second;
  int r1 = l.flat(f1).rank;
  int j = augmented ? r1 : r1 - 1;
  if (a1 - 1 < j) return Rat(0);
  int e = a1 - 1 - j;

  CtxPtr loc = ctx->localization(f1);
  CtxPtr con = ctx->contraction(f1);

  Rat loc_factor;
  if (augmented) loc_factor = ChowRing::get(loc, true)->alpha_top_degree();
  else
    loc_factor = loc->rank() >= 1
                     ? ChowRing::get(loc, false)->alpha_top_degree()
                     : Rat(1);
  if (loc_factor == 0) return Rat(0);

  RingPtr conring = ChowRing::get(con, false);
  const FlatLattice& cl = con->lattice;
  Mono rest;
  std::vector<int> pos =
      mask_positions(ctx->m.ground() & ~l.flat(f1).elements, ctx->m.n());
  for (size_t i = 1; i < m.f.size(); ++i) {
    Mask gm = l.flat(m.f[i].first).elements;
    rest.f.emplace_back(cl.index_of(compress_mask(gm, pos)), m.f[i].second);
  }
  if (rest.degree() + e > conring->top) return Rat(0);
  RingElement v = conring->element_of_mono(rest);
  if (e > 0 && !v.is_zero()) {
    RingElement b = conring->beta();
    for (int i = 0; i < e && !v.is_zero(); ++i) v = conring->mul(b, v);
  }
  if (v.is_zero()) return Rat(0);
  Rat sign = (a1 - 1) % 2 == 0 ? Rat(1) : Rat(-1);
  return sign * Rat(binom(a1 - 1, j)) * loc_factor * conring->deg_value(v);
}

Rat ChowRing::alpha_top_degree() const {
  {
    std::lock_guard<std::mutex> lk(deg_mu_);
    if (alpha_deg_) return *alpha_deg_;
  }
  Rat v;
  if (top == 0) v = 1;
  else v = deg_value(power(alpha(), top));
  std::lock_guard<std::mutex> lk(deg_mu_);
  if (!alpha_deg_) alpha_deg_ = v;
  return *alpha_deg_;
}

Rat ChowRing::pair(const RingElement& a, const RingElement& b) const {
  if (a.deg + b.deg != top)
    throw WrongDegree("pairing needs complementary degrees");
  RingElement p = mul(a, b);
  return deg_value(p);
}

const QMatrix& ChowRing::pairing_matrix(int k) const {
  {
    std::lock_guard<std::mutex> lk(pair_mu_);
    auto it = pair_cache_.find(k);
    if (it != pair_cache_.end()) return it->second;
  }
  int rows = dim(k), cols = dim(top - k);
  QMatrix p(rows, cols);
  if (is_real_degree(k) && is_real_degree(top - k)) {
    Mono merged;
    for (int i = 0; i < rows; ++i) {
      const Mono& mi = basis_mono(k, i);
      for (int j = 0; j < cols; ++j) {
        const Mono& mj = basis_mono(top - k, j);
        if (!merge(mi, mj, merged)) continue;
        p(i, j) = deg_of_mono(merged);
      }
    }
  } else {
    // One side in dual coordinates: the pairing is the defining dot product.
    for (int i = 0; i < std::min(rows, cols); ++i) p(i, i) = 1;
  }
  std::lock_guard<std::mutex> lk(pair_mu_);
  return pair_cache_.emplace(k, std::move(p)).first->second;
}

std::string ring_dump_json(const ChowRing& r) {
  std::ostringstream os;
  os << "{\"augmented\":" << (r.augmented ? "true" : "false")
     << ",\"hilbert\":[";
  auto h = r.hilbert();
  for (size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << "],\"basis\":[";
  for (int k = 0; k <= r.top; ++k) {
    os << (k ? "," : "") << "[";
    if (r.is_real_degree(k)) {
      for (int p = 0; p < r.dim(k); ++p) {
        const Mono& m = r.basis_mono(k, p);
        os << (p ? "," : "") << "{\"flats\":[";
        for (size_t i = 0; i < m.f.size(); ++i)
          os << (i ? "," : "") << m.f[i].first;
        os << "],\"exps\":[";
        for (size_t i = 0; i < m.f.size(); ++i)
          os << (i ? "," : "") << m.f[i].second;
        os << "]}";
      }
    } else {
      os << "{\"dual_of\":" << (r.top - k) << "}";
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace mih
