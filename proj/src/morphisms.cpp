#include "mih/morphisms.hpp"

#include <algorithm>
#include <sstream>

namespace mih {

namespace {

void taccum(TensorElem& out, const std::tuple<int, int, int>& key,
            const Rat& v) {
  if (v == 0) return;
  auto it = out.c.find(key);
  if (it == out.c.end()) out.c.emplace(key, v);
  else {
    it->second += v;
    if (it->second == 0) out.c.erase(it);
  }
}

RingElement unit_elem(const ChowRing* r, int deg, int pos) {
  RingElement e{r, deg, {}};
  e.c[pos] = 1;
  return e;
}

}  // namespace

TensorElem& TensorElem::operator+=(const TensorElem& o) {
  for (auto& [k, v] : o.c) taccum(*this, k, v);
  return *this;
}

TensorElem& TensorElem::operator*=(const Rat& s) {
  if (s == 0) { c.clear(); return *this; }
  for (auto& [k, v] : c) v *= s;
  return *this;
}

TensorElem tensor_of(const RingElement& a, const RingElement& b) {
  TensorElem t;
  t.deg = a.deg + b.deg;
  for (auto& [pl, ca] : a.c)
    for (auto& [pr, cb] : b.c) taccum(t, {a.deg, pl, pr}, ca * cb);
  return t;
}

TensorElem tensor_mul(const TensorElem& a, const TensorElem& b) {
  TensorElem out;
  out.L = a.L ? a.L : b.L;
  out.R = a.R ? a.R : b.R;
  out.deg = a.deg + b.deg;
  const ChowRing* L = out.L.get();
  const ChowRing* R = out.R.get();
  for (auto& [ka, ca] : a.c)
    for (auto& [kb, cb] : b.c) {
      auto [dla, pla, pra] = ka;
      auto [dlb, plb, prb] = kb;
      if (dla + dlb > L->top || (a.deg - dla) + (b.deg - dlb) > R->top)
        continue;
      RingElement left =
          L->mul(unit_elem(L, dla, pla), unit_elem(L, dlb, plb));
      if (left.is_zero()) continue;
      RingElement rt = R->mul(unit_elem(R, a.deg - dla, pra),
                              unit_elem(R, b.deg - dlb, prb));
      if (rt.is_zero()) continue;
      Rat coef = ca * cb;
      for (auto& [pl2, cl] : left.c)
        for (auto& [pr2, cr] : rt.c)
          taccum(out, {dla + dlb, pl2, pr2}, coef * cl * cr);
    }
  return out;
}

Rat tensor_deg(const TensorElem& t) {
  const ChowRing* L = t.L.get();
  const ChowRing* R = t.R.get();
  Rat acc(0);
  for (auto& [k, v] : t.c) {
    auto [dl, pl, pr] = k;
    if (dl != L->top || t.deg - dl != R->top) continue;
    acc += v * L->deg_value(unit_elem(L, dl, pl)) *
           R->deg_value(unit_elem(R, t.deg - dl, pr));
  }
  return acc;
}

int flat_in_localization(const CtxPtr& parent, int f_idx, int g_idx) {
  const FlatLattice& l = parent->lattice;
  Mask f = l.flat(f_idx).elements, g = l.flat(g_idx).elements;
  auto pos = mask_positions(f, parent->m.n());
  return parent->localization(f_idx)->lattice.index_of(compress_mask(g, pos));
}

int flat_in_contraction(const CtxPtr& parent, int f_idx, int g_idx) {
  const FlatLattice& l = parent->lattice;
  Mask f = l.flat(f_idx).elements, g = l.flat(g_idx).elements;
  auto pos = mask_positions(parent->m.ground() & ~f, parent->m.n());
  return parent->contraction(f_idx)->lattice.index_of(
      compress_mask(g & ~f, pos));
}

RingPtr tensor_left_ring(const CtxPtr& ctx, int f) {
  return ChowRing::get(ctx->contraction(f), false);
}

RingPtr tensor_right_ring(const CtxPtr& ctx, int f, bool right_aug) {
  return ChowRing::get(ctx->localization(f), right_aug);
}

TensorElem apply_pullback_sup(const CtxPtr& ctx, int f, bool right_aug,
                              const RingElement& a) {
  const FlatLattice& l = ctx->lattice;
  if (f == l.top()) throw BadFlat("pullback needs a proper flat");
  if (!right_aug && f == l.bottom())
    throw BadFlat("plain pullback needs a nonempty flat");
  RingPtr L = tensor_left_ring(ctx, f);
  RingPtr R = tensor_right_ring(ctx, f, right_aug);
  const ChowRing* src = a.ring;

  // Generator images.
  std::map<int, TensorElem> gen;
  Mask fm = l.flat(f).elements;
  for (int g : src->var_flats()) {
    Mask gm = l.flat(g).elements;
    TensorElem img;
    img.L = L;
    img.R = R;
    img.deg = 1;
    if (g == f) {
      img = tensor_of(L->beta(), R->one());
      TensorElem t2 = tensor_of(L->one(), R->alpha());
      img += t2;
      img *= Rat(-1);
    } else if (subset(gm, fm)) {
      int gr = flat_in_localization(ctx, f, g);
      img = tensor_of(L->one(), R->x_class(gr));
    } else if (subset(fm, gm)) {
      int gl = flat_in_contraction(ctx, f, g);
      img = tensor_of(L->x_class(gl), R->one());
    }  // incomparable: zero
    img.L = L;
    img.R = R;
    gen.emplace(g, std::move(img));
  }

  TensorElem out;
  out.L = L;
  out.R = R;
  out.deg = a.deg;
  for (auto& [pos, cv] : a.c) {
    const Mono& m = src->basis_mono(a.deg, pos);
    TensorElem prod = tensor_of(L->one(), R->one());
    prod.L = L;
    prod.R = R;
    for (auto& [fl, e] : m.f)
      for (int i = 0; i < e && !prod.is_zero(); ++i)
        prod = tensor_mul(prod, gen.at(fl));
    prod *= cv;
    out += prod;
  }
  return out;
}

RingElement apply_pushforward_sup(const CtxPtr& ctx, int f, bool right_aug,
                                  const TensorElem& t) {
  const FlatLattice& l = ctx->lattice;
  if (!t.L || !t.R)
    throw std::logic_error("tensor element without its factor rings");
  if (f == l.top()) throw BadFlat("pushforward needs a proper flat");
  if (!right_aug && f == l.bottom())
    throw BadFlat("plain pushforward needs a nonempty flat");
  RingPtr target = ChowRing::get(ctx, right_aug);
  const ChowRing* L = t.L.get();
  const ChowRing* R = t.R.get();
  CtxPtr con = ctx->contraction(f);
  CtxPtr loc = ctx->localization(f);
  Mask fm = l.flat(f).elements;
  auto pos_out = mask_positions(ctx->m.ground() & ~fm, ctx->m.n());
  auto pos_in = mask_positions(fm, ctx->m.n());

  std::vector<std::pair<Mono, Rat>> raw;
  for (auto& [k, v] : t.c) {
    auto [dl, pl, pr] = k;
    const Mono& ml = L->basis_mono(dl, pl);
    const Mono& mr = R->basis_mono(t.deg - dl, pr);
    Mono lifted;
    for (auto& [fl, e] : mr.f) {
      Mask gm = expand_mask(loc->lattice.flat(fl).elements, pos_in);
      lifted.f.emplace_back(l.index_of(gm), e);
    }
    lifted.f.emplace_back(f, 1);
    for (auto& [fl, e] : ml.f) {
      Mask gm = expand_mask(con->lattice.flat(fl).elements, pos_out) | fm;
      lifted.f.emplace_back(l.index_of(gm), e);
    }
    raw.emplace_back(std::move(lifted), v);
  }
  return target->element_of_monos(raw, t.deg + 1);
}

RingElement apply_pullback_sub(const CtxPtr& ctx, int f,
                               const RingElement& a) {
  const FlatLattice& l = ctx->lattice;
  RingPtr target = ChowRing::get(ctx->contraction(f), true);
  if (a.deg > target->top) return target->zero(target->top);
  const ChowRing* src = a.ring;
  Mask fm = l.flat(f).elements;

  std::map<int, RingElement> gen;
  for (int g : src->var_flats()) {
    Mask gm = l.flat(g).elements;
    if (subset(fm, gm))
      gen.emplace(g, target->x_class(flat_in_contraction(ctx, f, g)));
    else gen.emplace(g, target->zero(1));
  }
  RingElement out = target->zero(a.deg);
  for (auto& [pos, cv] : a.c) {
    const Mono& m = src->basis_mono(a.deg, pos);
    RingElement prod = target->one();
    for (auto& [fl, e] : m.f)
      for (int i = 0; i < e && !prod.is_zero(); ++i)
        prod = target->mul(prod, gen.at(fl));
    prod *= cv;
    out += prod;
  }
  return out;
}

RingElement apply_pushforward_sub(const CtxPtr& ctx, int f,
                                  const RingElement& a) {
  const FlatLattice& l = ctx->lattice;
  RingPtr target = ChowRing::get(ctx, true);
  CtxPtr con = ctx->contraction(f);
  const ChowRing* src = a.ring;
  Mask fm = l.flat(f).elements;
  auto pos_out = mask_positions(ctx->m.ground() & ~fm, ctx->m.n());

  // Lift of the monomial: x_{G'} -> x_{G' join F}; the empty flat of the
  // contraction lifts to x_F itself.
  std::vector<std::pair<Mono, Rat>> raw;
  for (auto& [pos, cv] : a.c) {
    const Mono& m = src->basis_mono(a.deg, pos);
    Mono lifted;
    for (auto& [fl, e] : m.f) {
      Mask gm = expand_mask(con->lattice.flat(fl).elements, pos_out) | fm;
      lifted.f.emplace_back(l.index_of(gm), e);
    }
    raw.emplace_back(std::move(lifted), cv);
  }
  RingElement lifted_elem = target->element_of_monos(raw, a.deg);
  return target->mul(target->y_flat(f), lifted_elem);
}

TensorBasis tensor_basis(RingPtr L, RingPtr R) {
  TensorBasis tb;
  tb.L = L;
  tb.R = R;
  tb.items.resize(L->top + R->top + 1);
  tb.index.resize(L->top + R->top + 1);
  for (int k = 0; k <= L->top + R->top; ++k)
    for (int dl = std::max(0, k - R->top); dl <= std::min(k, L->top); ++dl)
      for (int pl = 0; pl < L->dim(dl); ++pl)
        for (int pr = 0; pr < R->dim(k - dl); ++pr) {
          tb.index[k].emplace(std::make_tuple(dl, pl, pr),
                              static_cast<int>(tb.items[k].size()));
          tb.items[k].emplace_back(dl, pl, pr);
        }
  return tb;
}

LinearMapData pullback(const CtxPtr& ctx, int f, PP flavor) {
  LinearMapData out;
  out.shift = 0;
  if (flavor == PP::AugSub) {
    RingPtr src = ChowRing::get(ctx, true);
    RingPtr dst = ChowRing::get(ctx->contraction(f), true);
    out.blocks.resize(src->top + 1);
    for (int k = 0; k <= src->top; ++k) {
      QMatrix b(src->dim(k), k <= dst->top ? dst->dim(k) : 0);
      for (int i = 0; i < src->dim(k); ++i) {
        if (k > dst->top) break;
        RingElement img = apply_pullback_sub(ctx, f, unit_elem(src.get(), k, i));
        for (auto& [j, v] : img.c) b(i, j) = v;
      }
      out.blocks[k] = std::move(b);
    }
    return out;
  }
  bool right_aug = flavor == PP::AugSup;
  RingPtr src = ChowRing::get(ctx, right_aug);
  TensorBasis tb =
      tensor_basis(tensor_left_ring(ctx, f), tensor_right_ring(ctx, f, right_aug));
  out.blocks.resize(src->top + 1);
  for (int k = 0; k <= src->top; ++k) {
    QMatrix b(src->dim(k), tb.dim(k));
    for (int i = 0; i < src->dim(k); ++i) {
      TensorElem img = apply_pullback_sup(ctx, f, right_aug,
                                          unit_elem(src.get(), k, i));
      for (auto& [key, v] : img.c) b(i, tb.index[k].at(key)) = v;
    }
    out.blocks[k] = std::move(b);
  }
  return out;
}

LinearMapData pushforward(const CtxPtr& ctx, int f, PP flavor) {
  LinearMapData out;
  if (flavor == PP::AugSub) {
    RingPtr src = ChowRing::get(ctx->contraction(f), true);
    RingPtr dst = ChowRing::get(ctx, true);
    out.shift = ctx->lattice.flat(f).rank;
    out.blocks.resize(src->top + 1);
    for (int k = 0; k <= src->top; ++k) {
      QMatrix b(src->dim(k), dst->dim(k + out.shift));
      for (int i = 0; i < src->dim(k); ++i) {
        RingElement img =
            apply_pushforward_sub(ctx, f, unit_elem(src.get(), k, i));
        for (auto& [j, v] : img.c) b(i, j) = v;
      }
      out.blocks[k] = std::move(b);
    }
    return out;
  }
  bool right_aug = flavor == PP::AugSup;
  RingPtr L = tensor_left_ring(ctx, f);
  RingPtr R = tensor_right_ring(ctx, f, right_aug);
  RingPtr dst = ChowRing::get(ctx, right_aug);
  TensorBasis tb = tensor_basis(L, R);
  out.shift = 1;
  out.blocks.resize(L->top + R->top + 1);
  for (int k = 0; k <= L->top + R->top; ++k) {
    QMatrix b(tb.dim(k), dst->dim(k + 1));
    for (int i = 0; i < tb.dim(k); ++i) {
      auto [dl, pl, pr] = tb.items[k][i];
      TensorElem t;
      t.L = L;
      t.R = R;
      t.deg = k;
      t.c[{dl, pl, pr}] = 1;
      RingElement img = apply_pushforward_sup(ctx, f, right_aug, t);
      for (auto& [j, v] : img.c) b(i, j) = v;
    }
    out.blocks[k] = std::move(b);
  }
  return out;
}

namespace {

QMatrix mult_map_matrix(const ChowRing* r, const RingElement& a, int k) {
  QMatrix m(r->dim(k), r->dim(k + a.deg));
  for (int i = 0; i < r->dim(k); ++i) {
    RingElement img = r->mul(a, unit_elem(r, k, i));
    for (auto& [j, v] : img.c) m(i, j) = v;
  }
  return m;
}

}  // namespace

LawReport verify_pushpull_laws(const CtxPtr& ctx) {
  LawReport rep;
  const FlatLattice& l = ctx->lattice;
  int d = ctx->rank();
  RingPtr aug = ChowRing::get(ctx, true);
  RingPtr plain = d >= 1 ? ChowRing::get(ctx, false) : nullptr;

  for (int f = 0; f < l.num_flats(); ++f) {
    if (f == l.top()) continue;
    Mask fm = l.flat(f).elements;
    bool nonempty = l.flat(f).rank > 0;

    // Superscript pullback/pushforward, augmented and plain versions.
    for (bool right_aug : {true, false}) {
      if (!right_aug && (!nonempty || !plain)) continue;
      RingPtr src = right_aug ? aug : plain;
      RingPtr L = tensor_left_ring(ctx, f);
      RingPtr R = tensor_right_ring(ctx, f, right_aug);
      TensorBasis tb = tensor_basis(L, R);
      LinearMapData pb = pullback(ctx, f, right_aug ? PP::AugSup : PP::UndSup);
      LinearMapData pf =
          pushforward(ctx, f, right_aug ? PP::AugSup : PP::UndSup);
      std::string tag = right_aug ? "aug-sup" : "und-sup";

      // Surjectivity of the pullback, injectivity of the pushforward.
      for (int k = 0; k <= src->top; ++k) {
        bool ok = rref(pb.blocks[k]).rank == tb.dim(k);
        rep.add("pullback-surjective-" + tag, fm, k, ok);
      }
      for (int k = 0; k <= L->top + R->top; ++k) {
        bool ok = rref(pf.blocks[k]).rank == tb.dim(k);
        rep.add("pushforward-injective-" + tag, fm, k, ok);
      }

      // psi o phi is multiplication by x_F.
      RingElement xf = src->x_class(f);
      for (int k = 0; k < src->top; ++k) {
        QMatrix lhs = pb.blocks[k] * pf.blocks[k];
        QMatrix rhs = mult_map_matrix(src.get(), xf, k);
        rep.add("push-pull-xF-" + tag, fm, k, lhs == rhs);
      }

      // Degree-map commutation on the tensor top.
      {
        int ttop = L->top + R->top;
        bool ok = true;
        for (int i = 0; i < tb.dim(ttop); ++i) {
          auto [dl, pl, pr] = tb.items[ttop][i];
          TensorElem t;
          t.L = L; t.R = R; t.deg = ttop;
          t.c[{dl, pl, pr}] = 1;
          RingElement img = apply_pushforward_sup(ctx, f, right_aug, t);
          if (src->deg_value(img) != tensor_deg(t)) ok = false;
        }
        rep.add("push-commutes-degree-" + tag, fm, ttop, ok);
      }

      // Projection formula on ring generators times all tensor basis
      // vectors (multiplicativity extends it to the whole ring).
      {
        bool ok = true;
        for (int g : src->var_flats()) {
          RingElement eta = src->x_class(g);
          TensorElem phi_eta = apply_pullback_sup(ctx, f, right_aug, eta);
          for (int k = 0; k + 1 <= L->top + R->top && ok; ++k)
            for (int i = 0; i < tb.dim(k) && ok; ++i) {
              auto [dl, pl, pr] = tb.items[k][i];
              TensorElem xi;
              xi.L = L; xi.R = R; xi.deg = k;
              xi.c[{dl, pl, pr}] = 1;
              RingElement lhs = src->mul(
                  eta, apply_pushforward_sup(ctx, f, right_aug, xi));
              RingElement rhs = apply_pushforward_sup(
                  ctx, f, right_aug, tensor_mul(phi_eta, xi));
              if (!(lhs == rhs)) ok = false;
            }
        }
        rep.add("projection-formula-" + tag, fm, -1, ok);
      }

      // Pairing of two pushforwards against the twisted tensor pairing.
      {
        bool ok = true;
        RingElement corr = right_aug ? R->alpha() : R->alpha();
        TensorElem twist = tensor_of(L->beta(), R->one());
        twist += tensor_of(L->one(), corr);
        int ttop = L->top + R->top;
        for (int k = 0; k + 1 <= src->top && ok; ++k) {
          int kc = ttop - 1 - k;  // complementary tensor degree
          if (kc < 0 || kc > ttop) continue;
          for (int i = 0; i < tb.dim(k) && ok; ++i)
            for (int j = 0; j < tb.dim(kc) && ok; ++j) {
              auto [dl, pl, pr] = tb.items[k][i];
              TensorElem mu;
              mu.L = L; mu.R = R; mu.deg = k;
              mu.c[{dl, pl, pr}] = 1;
              auto [dl2, pl2, pr2] = tb.items[kc][j];
              TensorElem nu;
              nu.L = L; nu.R = R; nu.deg = kc;
              nu.c[{dl2, pl2, pr2}] = 1;
              RingElement pm = apply_pushforward_sup(ctx, f, right_aug, mu);
              RingElement pn = apply_pushforward_sup(ctx, f, right_aug, nu);
              Rat lhs = src->pair(pm, pn);
              Rat rhs = -tensor_deg(tensor_mul(tensor_mul(twist, mu), nu));
              if (lhs != rhs) ok = false;
            }
        }
        rep.add("push-pairing-twist-" + tag, fm, -1, ok);
      }
    }

    // y classes under the augmented superscript pullback.
    {
      bool ok = true;
      RingPtr R = tensor_right_ring(ctx, f, true);
      CtxPtr loc = ctx->localization(f);
      auto pos_in = mask_positions(fm, ctx->m.n());
      for (int e = 0; e < ctx->m.n(); ++e) {
        TensorElem img = apply_pullback_sup(ctx, f, true, aug->y_elem(e));
        if (fm >> e & 1) {
          int e_loc = 0;
          for (size_t p = 0; p < pos_in.size(); ++p)
            if (pos_in[p] == e) e_loc = static_cast<int>(p);
          TensorElem want =
              tensor_of(tensor_left_ring(ctx, f)->one(), R->y_elem(e_loc));
          if (!(img == want)) ok = false;
        } else if (!img.is_zero()) {
          ok = false;
        }
      }
      rep.add("pullback-y-aug-sup", fm, 1, ok);
    }

    // Subscript flavor: pullback kills y_i for i in F and fixes the rest;
    // psi_F o phi_F is multiplication by y_F.
    {
      RingPtr dst = ChowRing::get(ctx->contraction(f), true);
      CtxPtr con = ctx->contraction(f);
      auto pos_out = mask_positions(ctx->m.ground() & ~fm, ctx->m.n());
      bool ok = true;
      for (int e = 0; e < ctx->m.n(); ++e) {
        RingElement img = apply_pullback_sub(ctx, f, aug->y_elem(e));
        if (fm >> e & 1) {
          if (!img.is_zero()) ok = false;
        } else {
          int e_con = 0;
          for (size_t p = 0; p < pos_out.size(); ++p)
            if (pos_out[p] == e) e_con = static_cast<int>(p);
          if (!(img == dst->y_elem(e_con))) ok = false;
        }
      }
      rep.add("pullback-y-aug-sub", fm, 1, ok);
      // alpha restricts to alpha.
      rep.add("pullback-alpha-aug-sub", fm, 1,
              apply_pullback_sub(ctx, f, aug->alpha()) == dst->alpha());

      LinearMapData pb = pullback(ctx, f, PP::AugSub);
      LinearMapData pf = pushforward(ctx, f, PP::AugSub);
      RingElement yf = aug->y_flat(f);
      bool okc = true;
      for (int k = 0; k + yf.deg <= aug->top; ++k) {
        if (k > dst->top) break;
        QMatrix lhs = pb.blocks[k] * pf.blocks[k];
        QMatrix rhs = mult_map_matrix(aug.get(), yf, k);
        if (!(lhs == rhs)) okc = false;
      }
      rep.add("push-pull-yF-aug-sub", fm, -1, okc);
      bool oki = true;
      for (int k = 0; k <= dst->top; ++k)
        if (rref(pf.blocks[k]).rank != dst->dim(k)) oki = false;
      rep.add("pushforward-injective-aug-sub", fm, -1, oki);
      (void)con;
    }
  }

  // Pullback after pushforward across incomparable flats vanishes.
  {
    bool ok = true;
    for (int f = 0; f < l.num_flats() && ok; ++f)
      for (int g = 0; g < l.num_flats() && ok; ++g) {
        if (f == l.top() || g == l.top()) continue;
        Mask fmm = l.flat(f).elements, gmm = l.flat(g).elements;
        if (subset(fmm, gmm) || subset(gmm, fmm)) continue;
        RingPtr L = tensor_left_ring(ctx, f);
        RingPtr R = tensor_right_ring(ctx, f, true);
        TensorBasis tb = tensor_basis(L, R);
        for (int k = 0; k <= L->top + R->top && ok; ++k)
          for (int i = 0; i < tb.dim(k) && ok; ++i) {
            auto [dl, pl, pr] = tb.items[k][i];
            TensorElem t;
            t.L = L; t.R = R; t.deg = k;
            t.c[{dl, pl, pr}] = 1;
            RingElement pushed = apply_pushforward_sup(ctx, f, true, t);
            if (!apply_pullback_sup(ctx, g, true, pushed).is_zero()) ok = false;
          }
      }
    rep.add("incomparable-pull-after-push", 0, -1, ok);
  }

  // Commuting squares over flat intervals G < F (and G <= F for the
  // subscript flavor), exercised on all tensor basis vectors.
  for (int f = 0; f < l.num_flats(); ++f) {
    if (f == l.top()) continue;
    CtxPtr loc = ctx->localization(f);
    for (int g = 0; g < l.num_flats(); ++g) {
      if (g == f || g == l.top() || !l.leq(g, f)) continue;
      int g_loc = flat_in_localization(ctx, f, g);
      CtxPtr cg = ctx->contraction(g);
      int f_in_cg = flat_in_contraction(ctx, g, f);
      bool g_nonempty = l.flat(g).rank > 0;

      for (bool right_aug : {true, false}) {
        if (!right_aug && (!g_nonempty || !plain)) continue;
        RingPtr L = tensor_left_ring(ctx, f);
        RingPtr R = tensor_right_ring(ctx, f, right_aug);
        TensorBasis tb = tensor_basis(L, R);
        std::string tag = right_aug ? "aug" : "und";

        // Left square: pulling back along G after pushing along F equals
        // pushing through the interval after pulling back inside the
        // localization.
        bool okl = true;
        for (int k = 0; k <= L->top + R->top && okl; ++k)
          for (int i = 0; i < tb.dim(k) && okl; ++i) {
            auto [dl, pl, pr] = tb.items[k][i];
            TensorElem t;
            t.L = L; t.R = R; t.deg = k;
            t.c[{dl, pl, pr}] = 1;
            RingElement pushed = apply_pushforward_sup(ctx, f, right_aug, t);
            TensorElem lhs =
                apply_pullback_sup(ctx, g, right_aug, pushed);
            // Right factor through the localization's pullback at G.
            RingElement w = unit_elem(R.get(), k - dl, pr);
            TensorElem wsplit =
                apply_pullback_sup(loc, g_loc, right_aug, w);
            TensorElem rhs;
            rhs.L = tensor_left_ring(ctx, g);
            rhs.R = tensor_right_ring(ctx, g, right_aug);
            rhs.deg = k + 1;
            for (auto& [key2, v2] : wsplit.c) {
              auto [dl2, pl2, pr2] = key2;
              TensorElem inner = tensor_of(
                  unit_elem(L.get(), dl, pl),
                  unit_elem(wsplit.L.get(), dl2, pl2));
              inner.L = tensor_left_ring(cg, f_in_cg);
              inner.R = tensor_right_ring(cg, f_in_cg, false);
              RingElement lg =
                  apply_pushforward_sup(cg, f_in_cg, false, inner);
              TensorElem term = tensor_of(
                  lg, unit_elem(rhs.R.get(), w.deg - dl2, pr2));
              term *= v2;
              rhs += term;
            }
            if (!(lhs == rhs)) okl = false;
          }
        rep.add("interval-left-square-" + tag, l.flat(g).elements, -1, okl);

        // Right square: pushing the right factor inside the localization
        // then along F equals pushing through the interval then along G.
        RingPtr Rg = tensor_right_ring(loc, g_loc, right_aug);
        RingPtr Lg = tensor_left_ring(loc, g_loc);
        bool okr = true;
        for (int du = 0; du <= L->top && okr; ++du)
          for (int pu = 0; pu < L->dim(du) && okr; ++pu)
            for (int dv = 0; dv <= Lg->top && okr; ++dv)
              for (int pv = 0; pv < Lg->dim(dv) && okr; ++pv)
                for (int dz = 0; dz <= Rg->top && okr; ++dz)
                  for (int pz = 0; pz < Rg->dim(dz) && okr; ++pz) {
                    RingElement u = unit_elem(L.get(), du, pu);
                    RingElement v = unit_elem(Lg.get(), dv, pv);
                    RingElement z = unit_elem(Rg.get(), dz, pz);
                    TensorElem vz = tensor_of(v, z);
                    vz.L = Lg;
                    vz.R = Rg;
                    RingElement inner =
                        apply_pushforward_sup(loc, g_loc, right_aug, vz);
                    TensorElem uw = tensor_of(u, inner);
                    uw.L = L;
                    uw.R = R;
                    RingElement lhs =
                        apply_pushforward_sup(ctx, f, right_aug, uw);
                    TensorElem uv = tensor_of(u, v);
                    uv.L = tensor_left_ring(cg, f_in_cg);
                    uv.R = tensor_right_ring(cg, f_in_cg, false);
                    RingElement lg =
                        apply_pushforward_sup(cg, f_in_cg, false, uv);
                    TensorElem lz = tensor_of(lg, z);
                    lz.L = tensor_left_ring(ctx, g);
                    lz.R = tensor_right_ring(ctx, g, right_aug);
                    RingElement rhs =
                        apply_pushforward_sup(ctx, g, right_aug, lz);
                    if (!(lhs == rhs)) okr = false;
                  }
        rep.add("interval-right-square-" + tag, l.flat(g).elements, -1, okr);
      }

      // Subscript square: contracting at G after pushing along F equals
      // pushing inside the contraction after contracting the right factor.
      {
        RingPtr L = tensor_left_ring(ctx, f);
        RingPtr R = tensor_right_ring(ctx, f, true);
        TensorBasis tb = tensor_basis(L, R);
        bool ok = true;
        for (int k = 0; k <= L->top + R->top && ok; ++k)
          for (int i = 0; i < tb.dim(k) && ok; ++i) {
            auto [dl, pl, pr] = tb.items[k][i];
            TensorElem t;
            t.L = L; t.R = R; t.deg = k;
            t.c[{dl, pl, pr}] = 1;
            RingElement lb = apply_pullback_sub(
                ctx, g, apply_pushforward_sup(ctx, f, true, t));
            RingElement w = unit_elem(R.get(), k - dl, pr);
            RingElement wg = apply_pullback_sub(loc, g_loc, w);
            TensorElem t2 = tensor_of(unit_elem(L.get(), dl, pl), wg);
            t2.L = tensor_left_ring(cg, f_in_cg);
            t2.R = tensor_right_ring(cg, f_in_cg, true);
            RingElement tr = apply_pushforward_sup(cg, f_in_cg, true, t2);
            if (!(lb == tr)) ok = false;
          }
        rep.add("interval-sub-square", l.flat(g).elements, -1, ok);
      }
    }
  }

  return rep;
}

std::string law_report_json(const LawReport& r) {
  std::ostringstream os;
  os << "{\"overall\":" << (r.overall ? "true" : "false") << ",\"laws\":[";
  for (size_t i = 0; i < r.results.size(); ++i) {
    const LawResult& x = r.results[i];
    os << (i ? "," : "") << "{\"law\":\"" << x.law << "\",\"flat\":" << x.flat
       << ",\"degree\":" << x.degree
       << ",\"holds\":" << (x.holds ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace mih
