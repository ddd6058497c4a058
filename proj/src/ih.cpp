#include "mih/ih.hpp"

#include <algorithm>
#include <sstream>

#include "mih/parallel.hpp"

namespace mih {

namespace {

std::mutex threads_mu;
int g_max_threads = 0;

RingElement unit_elem(const ChowRing* r, int deg, int pos) {
  RingElement e{r, deg, {}};
  e.c[pos] = 1;
  return e;
}

QMatrix rows_of(const std::vector<RingElement>& vecs, int dim) {
  QMatrix m(static_cast<int>(vecs.size()), dim);
  for (size_t i = 0; i < vecs.size(); ++i)
    for (auto& [j, v] : vecs[i].c) m(static_cast<int>(i), j) = v;
  return m;
}

// Pairing functional of s against all degree-k coordinate units, as a row.
std::vector<Rat> pairing_row(const ChowRing* r, int k, const RingElement& s) {
  std::vector<Rat> row(r->dim(k));
  bool k_real = r->is_real_degree(k);
  bool s_real = r->is_real_degree(s.deg) ||
                (s.deg == r->top && !r->dual_mode());
  if (s.deg == r->top && r->dual_mode()) s_real = false;
  if (k_real && s_real) {
    const QMatrix& p = r->pairing_matrix(k);
    for (auto& [j, v] : s.c)
      for (int i = 0; i < p.rows(); ++i)
        if (p(i, j) != 0) row[i] += v * p(i, j);
  } else {
    // One side dual: the pairing is the coordinate dot product.
    for (auto& [j, v] : s.c)
      if (j < static_cast<int>(row.size())) row[j] += v;
  }
  return row;
}

}  // namespace

int max_threads() {
  std::lock_guard<std::mutex> lk(threads_mu);
  if (g_max_threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    g_max_threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return g_max_threads;
}

void set_max_threads(int n) {
  std::lock_guard<std::mutex> lk(threads_mu);
  g_max_threads = n < 1 ? 1 : n;
}

RingElement GradedSubspace::element(int k, int row) const {
  RingElement e{ring.get(), k, {}};
  const QMatrix& b = piece[k].basis();
  for (int j = 0; j < b.cols(); ++j)
    if (b(row, j) != 0) e.c[j] = b(row, j);
  return e;
}

std::vector<RingElement> summand_vectors(const CtxPtr& ctx, int f,
                                         bool augmented_parent, int j) {
  RingPtr parent = ChowRing::get(ctx, augmented_parent);
  const FlatLattice& l = ctx->lattice;
  CtxPtr con = ctx->contraction(f);
  CtxPtr loc = ctx->localization(f);
  const UnderlineData& ud = underline_ih_j(con);
  RingPtr L = ChowRing::get(con, false);
  RingPtr R = ChowRing::get(loc, augmented_parent);
  Mask fm = l.flat(f).elements;
  auto pos_out = mask_positions(ctx->m.ground() & ~fm, ctx->m.n());
  auto pos_in = mask_positions(fm, ctx->m.n());

  // Lift tables: parent flat index of each factor flat.
  std::vector<int> lift_left(con->lattice.num_flats());
  for (int g = 0; g < con->lattice.num_flats(); ++g)
    lift_left[g] = l.index_of(
        expand_mask(con->lattice.flat(g).elements, pos_out) | fm);
  std::vector<int> lift_right(loc->lattice.num_flats());
  for (int g = 0; g < loc->lattice.num_flats(); ++g)
    lift_right[g] =
        l.index_of(expand_mask(loc->lattice.flat(g).elements, pos_in));

  std::vector<RingElement> out;
  for (int d1 = 0; d1 <= L->top; ++d1) {
    int d2 = j - 1 - d1;
    if (d2 < 0 || d2 > R->top) continue;
    if (ud.j.dim(d1) == 0 || R->dim(d2) == 0) continue;
    for (int s = 0; s < ud.j.dim(d1); ++s) {
      RingElement u = ud.j.element(d1, s);
      for (int t = 0; t < R->dim(d2); ++t) {
        const Mono& w = R->basis_mono(d2, t);
        Mono wl;
        for (auto& [fl, e] : w.f) wl.f.emplace_back(lift_right[fl], e);
        wl.f.emplace_back(f, 1);
        std::vector<std::pair<Mono, Rat>> raw;
        for (auto& [p, cv] : u.c) {
          const Mono& um = L->basis_mono(d1, p);
          Mono m = wl;
          for (auto& [fl, e] : um.f) m.f.emplace_back(lift_left[fl], e);
          raw.emplace_back(std::move(m), cv);
        }
        out.push_back(parent->element_of_monos(raw, j));
      }
    }
  }
  return out;
}

namespace {

std::mutex ud_mu;
std::map<std::string, std::unique_ptr<UnderlineData>>& ud_registry() {
  static std::map<std::string, std::unique_ptr<UnderlineData>> r;
  return r;
}

std::mutex ih_mu;
std::map<std::pair<std::string, bool>, std::unique_ptr<GradedSubspace>>&
ih_registry() {
  static std::map<std::pair<std::string, bool>,
                  std::unique_ptr<GradedSubspace>>
      r;
  return r;
}

// Perp of the summand span over the listed flats, inside the given ring.
GradedSubspace perp_of_summands(const CtxPtr& ctx, RingPtr ring,
                                const std::vector<int>& flats) {
  int top = ring->top;
  GradedSubspace out;
  out.ring = ring;
  out.piece.resize(top + 1);
  bool aug = ring->augmented;

  // Warm the recursion serially so the parallel stage below only reads.
  for (int f : flats) underline_ih_j(ctx->contraction(f));

  // Summand vectors per (flat, degree), built in parallel.
  int nf = static_cast<int>(flats.size());
  std::vector<std::vector<std::vector<RingElement>>> per(nf);
  parallel_for(nf, [&](int fi) {
    per[fi].resize(top + 1);
    for (int j = 0; j <= top; ++j)
      per[fi][j] = summand_vectors(ctx, flats[fi], aug, j);
  });
  std::vector<std::vector<RingElement>> span(top + 1);
  for (int fi = 0; fi < nf; ++fi)
    for (int j = 0; j <= top; ++j)
      for (auto& v : per[fi][j]) span[j].push_back(std::move(v));

  parallel_for(top + 1, [&](int k) {
    const auto& s = span[top - k];
    QMatrix constraints(static_cast<int>(s.size()), ring->dim(k));
    for (size_t i = 0; i < s.size(); ++i) {
      auto row = pairing_row(ring.get(), k, s[i]);
      for (int j = 0; j < ring->dim(k); ++j) constraints(static_cast<int>(i), j) = row[j];
    }
    out.piece[k] = Subspace::from_span(kernel(constraints));
  });
  return out;
}

}  // namespace

const UnderlineData& underline_ih_j(const CtxPtr& ctx) {
  std::string key = ctx->m.key();
  {
    std::lock_guard<std::mutex> lk(ud_mu);
    auto it = ud_registry().find(key);
    if (it != ud_registry().end()) return *it->second;
  }
  if (ctx->rank() < 1)
    throw RankZeroNonAugmented("underline modules need positive rank");
  RingPtr ring = ChowRing::get(ctx, false);
  const FlatLattice& l = ctx->lattice;
  std::vector<int> flats;
  for (int f = 0; f < l.num_flats(); ++f)
    if (f != l.bottom() && f != l.top()) flats.push_back(f);

  auto data = std::make_unique<UnderlineData>();
  data->ih = perp_of_summands(ctx, ring, flats);

  int d = ctx->rank();
  data->j.ring = ring;
  data->j.piece.resize(ring->top + 1);
  RingElement beta = d >= 2 ? ring->beta() : ring->zero(1);
  for (int k = 0; k <= ring->top; ++k) {
    if (2 * k <= d - 2) {
      data->j.piece[k] = data->ih.piece[k];
    } else {
      int src = d - k - 2;
      int e = 2 * k - d + 2;
      if (src < 0 || data->ih.dim(src) == 0) {
        data->j.piece[k] = Subspace(ring->dim(k));
        continue;
      }
      std::vector<RingElement> rows;
      for (int r = 0; r < data->ih.dim(src); ++r) {
        RingElement v = data->ih.element(src, r);
        for (int i = 0; i < e; ++i) v = ring->mul(beta, v);
        rows.push_back(std::move(v));
      }
      data->j.piece[k] = Subspace::from_span(rows_of(rows, ring->dim(k)));
    }
  }

  std::lock_guard<std::mutex> lk(ud_mu);
  auto [it, ins] = ud_registry().emplace(key, std::move(data));
  return *it->second;
}

const GradedSubspace& ih_space(const CtxPtr& ctx) {
  auto key = std::make_pair(ctx->m.key(), false);
  {
    std::lock_guard<std::mutex> lk(ih_mu);
    auto it = ih_registry().find(key);
    if (it != ih_registry().end()) return *it->second;
  }
  RingPtr ring = ChowRing::get(ctx, true);
  const FlatLattice& l = ctx->lattice;
  std::vector<int> flats;
  for (int f = 0; f < l.num_flats(); ++f)
    if (f != l.top()) flats.push_back(f);
  auto sp = std::make_unique<GradedSubspace>(
      perp_of_summands(ctx, ring, flats));
  std::lock_guard<std::mutex> lk(ih_mu);
  auto [it, ins] = ih_registry().emplace(key, std::move(sp));
  return *it->second;
}

const GradedSubspace& ih_circ_space(const CtxPtr& ctx) {
  if (ctx->m.n() == 0)
    throw EmptyGroundSetCirc("reduced module needs a nonempty ground set");
  auto key = std::make_pair(ctx->m.key(), true);
  {
    std::lock_guard<std::mutex> lk(ih_mu);
    auto it = ih_registry().find(key);
    if (it != ih_registry().end()) return *it->second;
  }
  RingPtr ring = ChowRing::get(ctx, true);
  const FlatLattice& l = ctx->lattice;
  std::vector<int> flats;
  for (int f = 0; f < l.num_flats(); ++f)
    if (f != l.top() && f != l.bottom()) flats.push_back(f);
  auto sp = std::make_unique<GradedSubspace>(
      perp_of_summands(ctx, ring, flats));
  std::lock_guard<std::mutex> lk(ih_mu);
  auto [it, ins] = ih_registry().emplace(key, std::move(sp));
  return *it->second;
}

Decomposition decomposition(const CtxPtr& ctx, IHFlavor flavor) {
  Decomposition out;
  const FlatLattice& l = ctx->lattice;
  std::vector<int> flats;
  switch (flavor) {
    case IHFlavor::Plain:
      out.ring = ChowRing::get(ctx, true);
      out.module = ih_space(ctx);
      for (int f = 0; f < l.num_flats(); ++f)
        if (f != l.top()) flats.push_back(f);
      break;
    case IHFlavor::Circ:
      out.ring = ChowRing::get(ctx, true);
      out.module = ih_circ_space(ctx);
      for (int f = 0; f < l.num_flats(); ++f)
        if (f != l.top() && f != l.bottom()) flats.push_back(f);
      break;
    case IHFlavor::Underline:
      out.ring = ChowRing::get(ctx, false);
      out.module = underline_ih_j(ctx).ih;
      for (int f = 0; f < l.num_flats(); ++f)
        if (f != l.top() && f != l.bottom()) flats.push_back(f);
      break;
  }
  bool aug = out.ring->augmented;
  for (int f : flats) {
    GradedSubspace s;
    s.ring = out.ring;
    s.piece.resize(out.ring->top + 1);
    for (int j = 0; j <= out.ring->top; ++j) {
      auto vecs = summand_vectors(ctx, f, aug, j);
      s.piece[j] = Subspace::from_span(rows_of(vecs, out.ring->dim(j)));
    }
    out.summands.emplace_back(f, std::move(s));
  }
  return out;
}

bool module_closed(const GradedSubspace& n) {
  const ChowRing* r = n.ring.get();
  if (!r->augmented) {
    // Closure under beta.
    RingElement b = r->beta();
    for (int k = 0; k + 1 <= r->top; ++k)
      for (int row = 0; row < n.dim(k); ++row) {
        RingElement v = r->mul(b, n.element(k, row));
        QMatrix vec(1, r->dim(k + 1));
        for (auto& [j, cv] : v.c) vec(0, j) = cv;
        if (!v.is_zero() && !n.piece[k + 1].contains(vec)) return false;
      }
    return true;
  }
  const FlatLattice& l = r->ctx->lattice;
  for (int r1 : l.stratum(1)) {
    RingElement y = r->y_flat(r1);
    for (int k = 0; k + 1 <= r->top; ++k)
      for (int row = 0; row < n.dim(k); ++row) {
        RingElement v = r->mul(y, n.element(k, row));
        QMatrix vec(1, r->dim(k + 1));
        for (auto& [j, cv] : v.c) vec(0, j) = cv;
        if (!v.is_zero() && !n.piece[k + 1].contains(vec)) return false;
      }
  }
  return true;
}

std::vector<int> filter_at_least(const CtxPtr& ctx, int flat) {
  std::vector<int> out;
  const FlatLattice& l = ctx->lattice;
  for (int g = 0; g < l.num_flats(); ++g)
    if (l.leq(flat, g)) out.push_back(g);
  return out;
}

std::vector<int> filter_above(const CtxPtr& ctx, int flat) {
  std::vector<int> out;
  const FlatLattice& l = ctx->lattice;
  for (int g = 0; g < l.num_flats(); ++g)
    if (l.leq(flat, g) && g != flat) out.push_back(g);
  return out;
}

namespace {

// Minimal elements of an upward-closed flat set; y_G for larger G factors
// through them, so spans and annihilators only need the minima.
std::vector<int> filter_minima(const FlatLattice& l,
                               const std::vector<int>& filter) {
  std::vector<int> min;
  for (int g : filter) {
    bool minimal = true;
    for (int h : filter)
      if (h != g && l.leq(h, g)) { minimal = false; break; }
    if (minimal) min.push_back(g);
  }
  return min;
}

}  // namespace

GradedSubspace filter_span(const GradedSubspace& n,
                           const std::vector<int>& filter_full) {
  const ChowRing* r = n.ring.get();
  if (!r->augmented) throw NotAModule("order filters act on the augmented ring");
  const FlatLattice& l = r->ctx->lattice;
  std::vector<int> filter = filter_minima(l, filter_full);
  GradedSubspace out;
  out.ring = n.ring;
  out.piece.assign(r->top + 1, Subspace(0));
  std::vector<std::vector<RingElement>> rows(r->top + 1);
  for (int g : filter) {
    int rg = l.flat(g).rank;
    RingElement y = r->y_flat(g);
    for (int k = 0; k + rg <= r->top; ++k)
      for (int row = 0; row < n.dim(k); ++row) {
        RingElement v = r->mul(y, n.element(k, row));
        if (!v.is_zero()) rows[k + rg].push_back(std::move(v));
      }
  }
  for (int k = 0; k <= r->top; ++k)
    out.piece[k] = Subspace::from_span(rows_of(rows[k], r->dim(k)));
  return out;
}

GradedSubspace filter_annihilator(const GradedSubspace& n,
                                  const std::vector<int>& filter_full) {
  const ChowRing* r = n.ring.get();
  if (!r->augmented) throw NotAModule("order filters act on the augmented ring");
  const FlatLattice& l = r->ctx->lattice;
  std::vector<int> filter = filter_minima(l, filter_full);
  GradedSubspace out;
  out.ring = n.ring;
  out.piece.assign(r->top + 1, Subspace(0));
  for (int k = 0; k <= r->top; ++k) {
    int nk = n.dim(k);
    if (nk == 0) {
      out.piece[k] = Subspace(r->dim(k));
      continue;
    }
    // Constraints on coefficient vectors over the basis of N^k.
    std::vector<std::vector<Rat>> constraint_rows;
    for (int g : filter) {
      int rg = l.flat(g).rank;
      if (k + rg > r->top) continue;  // multiplication lands in zero
      RingElement y = r->y_flat(g);
      int target_dim = r->dim(k + rg);
      // Images of the N^k basis.
      std::vector<RingElement> imgs(nk);
      for (int row = 0; row < nk; ++row)
        imgs[row] = r->mul(y, n.element(k, row));
      for (int col = 0; col < target_dim; ++col) {
        std::vector<Rat> cr(nk);
        bool nonzero = false;
        for (int row = 0; row < nk; ++row) {
          auto it = imgs[row].c.find(col);
          if (it != imgs[row].c.end()) { cr[row] = it->second; nonzero = true; }
        }
        if (nonzero) constraint_rows.push_back(std::move(cr));
      }
    }
    QMatrix cm(static_cast<int>(constraint_rows.size()), nk);
    for (size_t i = 0; i < constraint_rows.size(); ++i)
      for (int j = 0; j < nk; ++j) cm(static_cast<int>(i), j) = constraint_rows[i][j];
    QMatrix coeff_kernel = kernel(cm);
    // Back to ambient coordinates.
    QMatrix rows(coeff_kernel.rows(), r->dim(k));
    for (int i = 0; i < coeff_kernel.rows(); ++i)
      for (int row = 0; row < nk; ++row) {
        if (coeff_kernel(i, row) == 0) continue;
        const QMatrix& nb = n.piece[k].basis();
        for (int j = 0; j < r->dim(k); ++j)
          rows(i, j) += coeff_kernel(i, row) * nb(row, j);
      }
    out.piece[k] = Subspace::from_span(rows);
  }
  return out;
}

std::vector<int> stalk_dims(const GradedSubspace& n, int flat) {
  const ChowRing* r = n.ring.get();
  const CtxPtr& ctx = r->ctx;
  int rk = ctx->lattice.flat(flat).rank;
  GradedSubspace a = filter_span(n, filter_at_least(ctx, flat));
  GradedSubspace b = filter_span(n, filter_above(ctx, flat));
  std::vector<int> dims(r->top + 1 - rk, 0);
  for (int j = 0; j + rk <= r->top; ++j) dims[j] = a.dim(j + rk) - b.dim(j + rk);
  return dims;
}

std::vector<int> costalk_dims(const GradedSubspace& n, int flat) {
  const ChowRing* r = n.ring.get();
  const CtxPtr& ctx = r->ctx;
  GradedSubspace strict = filter_annihilator(n, filter_above(ctx, flat));
  GradedSubspace weak = filter_annihilator(n, filter_at_least(ctx, flat));
  std::vector<int> dims(r->top + 1, 0);
  for (int j = 0; j <= r->top; ++j) dims[j] = strict.dim(j) - weak.dim(j);
  return dims;
}

std::vector<int> socle_dims(const GradedSubspace& n) {
  const ChowRing* r = n.ring.get();
  return costalk_dims(n, r->ctx->lattice.bottom());
}

IntPoly kl_from_ih(const CtxPtr& ctx) {
  const GradedSubspace& ih = ih_space(ctx);
  auto dims = stalk_dims(ih, ctx->lattice.bottom());
  std::vector<Int> c;
  for (int v : dims) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly z_from_ih(const CtxPtr& ctx) {
  const GradedSubspace& ih = ih_space(ctx);
  std::vector<Int> c;
  for (int v : ih.dims()) c.emplace_back(v);
  return IntPoly(std::move(c));
}

std::vector<int> graded_piece_dims(const CtxPtr& ctx, int p) {
  const GradedSubspace& ih = ih_space(ctx);
  const FlatLattice& l = ctx->lattice;
  std::vector<int> ge_p, ge_p1;
  for (int g = 0; g < l.num_flats(); ++g) {
    if (l.flat(g).rank >= p) ge_p.push_back(g);
    if (l.flat(g).rank >= p + 1) ge_p1.push_back(g);
  }
  GradedSubspace a = p == 0 ? ih : filter_span(ih, ge_p);
  GradedSubspace b = filter_span(ih, ge_p1);
  std::vector<int> dims(a.piece.size());
  for (size_t k = 0; k < a.piece.size(); ++k) dims[k] = a.dim(k) - b.dim(k);
  return dims;
}

std::string subspace_dump_json(const GradedSubspace& n, bool with_bases) {
  std::ostringstream os;
  os << "{\"dims\":[";
  auto d = n.dims();
  for (size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k];
  os << "]";
  if (with_bases) {
    os << ",\"bases\":[";
    for (size_t k = 0; k < n.piece.size(); ++k) {
      os << (k ? "," : "") << "[";
      const QMatrix& b = n.piece[k].basis();
      for (int i = 0; i < b.rows(); ++i) {
        os << (i ? "," : "") << "[";
        for (int j = 0; j < b.cols(); ++j)
          os << (j ? "," : "") << "\"" << to_string(b(i, j)) << "\"";
        os << "]";
      }
      os << "]";
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

}  // namespace mih
