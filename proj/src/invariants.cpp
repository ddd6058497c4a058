#include "mih/invariants.hpp"

#include <unordered_map>

namespace mih {

namespace {
std::mutex registry_mu;
std::unordered_map<std::string, CtxPtr>& registry() {
  static std::unordered_map<std::string, CtxPtr> r;
  return r;
}
}  // namespace

CtxPtr ctx_of(const Matroid& m) {
  std::string k = m.key();
  std::lock_guard<std::mutex> lk(registry_mu);
  auto& reg = registry();
  auto it = reg.find(k);
  if (it != reg.end()) return it->second;
  CtxPtr p = std::make_shared<MatroidCtx>(m);
  reg.emplace(std::move(k), p);
  return p;
}

CtxPtr MatroidCtx::localization(int flat_idx) const {
  Mask f = lattice.flat(flat_idx).elements;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = loc_cache_.find(f);
    if (it != loc_cache_.end()) return it->second;
  }
  CtxPtr p = ctx_of(m.localization(f));
  std::lock_guard<std::mutex> lk(mu_);
  loc_cache_.emplace(f, p);
  return p;
}

CtxPtr MatroidCtx::contraction(int flat_idx) const {
  Mask f = lattice.flat(flat_idx).elements;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = con_cache_.find(f);
    if (it != con_cache_.end()) return it->second;
  }
  CtxPtr p = ctx_of(m.contraction(f));
  std::lock_guard<std::mutex> lk(mu_);
  con_cache_.emplace(f, p);
  return p;
}

const IntPoly& characteristic_polynomial(const CtxPtr& ctx) {
  {
    std::lock_guard<std::mutex> lk(ctx->inv_mu);
    if (ctx->chi) return *ctx->chi;
  }
  const FlatLattice& l = ctx->lattice;
  int d = ctx->rank();
  std::vector<Int> c(d + 1, Int(0));
  for (int f = 0; f < l.num_flats(); ++f)
    c[d - l.flat(f).rank] += Int(static_cast<long>(l.mobius(l.bottom(), f)));
  IntPoly chi(std::move(c));
  std::lock_guard<std::mutex> lk(ctx->inv_mu);
  if (!ctx->chi) ctx->chi = std::move(chi);
  return *ctx->chi;
}

IntPoly characteristic_polynomial_subset_sum(const Matroid& m) {
  if (m.n() > 12) throw std::invalid_argument("subset-sum oracle capped at n=12");
  std::vector<Int> c(m.rank() + 1, Int(0));
  for (Mask s = 0;; ++s) {
    int crk = m.rank() - m.rank_of(s);
    c[crk] += (popcount(s) % 2 == 0) ? 1 : -1;
    if (s == m.ground()) break;
  }
  return IntPoly(std::move(c));
}

const IntPoly& kl_polynomial(const CtxPtr& ctx) {
  {
    std::lock_guard<std::mutex> lk(ctx->inv_mu);
    if (ctx->kl) return *ctx->kl;
  }
  int d = ctx->rank();
  IntPoly p;
  if (d == 0) {
    p = IntPoly::constant(1);
  } else {
    const FlatLattice& l = ctx->lattice;
    // R = sum over nonempty flats F of chi_{M^F} * P_{M_F}; the defining
    // identity is t^d P(1/t) = P + R, and deg P < d/2 pins P from the top
    // coefficients of R.
    IntPoly r;
    for (int f = 0; f < l.num_flats(); ++f) {
      if (f == l.bottom()) continue;
      r = r + characteristic_polynomial(ctx->localization(f)) *
                  kl_polynomial(ctx->contraction(f));
    }
    std::vector<Int> c;
    for (int k = 0; 2 * k < d; ++k) c.push_back(r.coeff(d - k));
    p = IntPoly(std::move(c));
    if (p.reverse(d) != p + r)
      throw RecursionInconsistent("KL recursion has no low-degree solution");
  }
  std::lock_guard<std::mutex> lk(ctx->inv_mu);
  if (!ctx->kl) ctx->kl = std::move(p);
  return *ctx->kl;
}

const IntPoly& z_polynomial(const CtxPtr& ctx) {
  {
    std::lock_guard<std::mutex> lk(ctx->inv_mu);
    if (ctx->zpoly) return *ctx->zpoly;
  }
  const FlatLattice& l = ctx->lattice;
  int d = ctx->rank();
  IntPoly z;
  for (int f = 0; f < l.num_flats(); ++f)
    z = z + IntPoly::monomial(l.flat(f).rank) * kl_polynomial(ctx->contraction(f));
  if (z.degree() != d || z.coeff(d) != 1)
    throw RecursionInconsistent("Z-polynomial not monic of degree rank");
  if (!z.palindromic(d))
    throw RecursionInconsistent("Z-polynomial not palindromic");
  std::lock_guard<std::mutex> lk(ctx->inv_mu);
  if (!ctx->zpoly) ctx->zpoly = std::move(z);
  return *ctx->zpoly;
}

const IntPoly& inverse_kl_polynomial(const CtxPtr& ctx) {
  {
    std::lock_guard<std::mutex> lk(ctx->inv_mu);
    if (ctx->qpoly) return *ctx->qpoly;
  }
  int d = ctx->rank();
  IntPoly q;
  if (d == 0) {
    q = IntPoly::constant(1);
  } else {
    const FlatLattice& l = ctx->lattice;
    // Route 1: flat-indexed convolution against P of localizations.
    for (int f = 0; f < l.num_flats(); ++f) {
      if (f == l.bottom()) continue;
      IntPoly term = kl_polynomial(ctx->localization(f)) *
                     inverse_kl_polynomial(ctx->contraction(f));
      q = (l.flat(f).rank % 2 == 0) ? q - term : q + term;
    }
    if (2 * q.degree() >= d)
      throw RecursionInconsistent("inverse KL degree bound violated");

    // Route 2: the reversal identity convolved with chi of contractions,
    // using Q of localizations only.  Independent of route 1 above.
    IntPoly d2;
    for (int f = 0; f < l.num_flats(); ++f) {
      if (f == l.top()) continue;
      int crk = d - l.flat(f).rank;
      IntPoly term = inverse_kl_polynomial(ctx->localization(f)) *
                     characteristic_polynomial(ctx->contraction(f)).reverse(crk);
      d2 = (crk % 2 == 0) ? d2 + term : d2 - term;
    }
    std::vector<Int> c;
    for (int k = 0; 2 * k < d; ++k) c.push_back(d2.coeff(d - k));
    IntPoly q2(std::move(c));
    if (q2.reverse(d) != q2 + d2)
      throw CrossCheckMismatch("inverse KL reversal identity fails");
    if (q2 != q)
      throw CrossCheckMismatch("inverse KL recursions disagree");
  }
  std::lock_guard<std::mutex> lk(ctx->inv_mu);
  if (!ctx->qpoly) ctx->qpoly = std::move(q);
  return *ctx->qpoly;
}

std::vector<Int> os_dimensions(const CtxPtr& ctx) {
  const IntPoly& chi = characteristic_polynomial(ctx);
  int d = ctx->rank();
  std::vector<Int> dims(d + 1);
  for (int k = 0; k <= d; ++k) {
    dims[k] = chi.coeff(d - k);
    if (k % 2 == 1) dims[k] = -dims[k];
    if (dims[k] < 0)
      throw RecursionInconsistent("negative Orlik-Solomon dimension");
  }
  return dims;
}

}  // namespace mih
