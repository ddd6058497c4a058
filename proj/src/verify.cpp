#include "mih/verify.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace mih {

namespace {

RingElement power_mul(const ChowRing* r, const RingElement& ell, int e,
                      RingElement v) {
  for (int i = 0; i < e && !v.is_zero(); ++i) v = r->mul(ell, v);
  return v;
}

QMatrix gram_block(const GradedSubspace& n, int k, int j) {
  const ChowRing* r = n.ring.get();
  QMatrix g(n.dim(k), n.dim(j));
  for (int a = 0; a < n.dim(k); ++a) {
    RingElement va = n.element(k, a);
    for (int b = 0; b < n.dim(j); ++b)
      g(a, b) = r->pair(va, n.element(j, b));
  }
  return g;
}

std::string dims_str(const std::vector<int>& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i)
    s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

// Maximum bipartite matching (Hopcroft-Karp).
struct BipartiteMatcher {
  int nl, nr;
  std::vector<std::vector<int>> adj;
  std::vector<int> match_l, match_r, dist;
  explicit BipartiteMatcher(int l, int r) : nl(l), nr(r), adj(l) {}
  void add_edge(int a, int b) { adj[a].push_back(b); }
  bool bfs() {
    std::queue<int> q;
    dist.assign(nl, -1);
    for (int a = 0; a < nl; ++a)
      if (match_l[a] < 0) { dist[a] = 0; q.push(a); }
    bool found = false;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj[a]) {
        int a2 = match_r[b];
        if (a2 < 0) found = true;
        else if (dist[a2] < 0) {
          dist[a2] = dist[a] + 1;
          q.push(a2);
        }
      }
    }
    return found;
  }
  bool dfs(int a) {
    for (int b : adj[a]) {
      int a2 = match_r[b];
      if (a2 < 0 || (dist[a2] == dist[a] + 1 && dfs(a2))) {
        match_l[a] = b;
        match_r[b] = a;
        return true;
      }
    }
    dist[a] = -1;
    return false;
  }
  int solve() {
    match_l.assign(nl, -1);
    match_r.assign(nr, -1);
    int size = 0;
    while (bfs())
      for (int a = 0; a < nl; ++a)
        if (match_l[a] < 0 && dfs(a)) ++size;
    return size;
  }
};

}  // namespace

std::string report_json(const CheckReport& r) {
  std::ostringstream os;
  os << "{\"matroid\":\"" << r.matroid << "\",\"statement\":\"" << r.statement
     << "\",\"perDegree\":[";
  for (size_t i = 0; i < r.per_degree.size(); ++i) {
    const DegreeCheck& d = r.per_degree[i];
    os << (i ? "," : "") << "{\"k\":" << d.k
       << ",\"holds\":" << (d.holds ? "true" : "false") << ",\"witness\":\""
       << d.witness << "\"}";
  }
  os << "],\"overall\":" << (r.overall ? "true" : "false") << "}";
  return os.str();
}

CheckReport check_pd(const GradedSubspace& n, int d) {
  CheckReport rep;
  rep.statement = "PD";
  for (int k = 0; 2 * k <= d; ++k) {
    if (n.dim(k) != n.dim(d - k)) {
      rep.add(k, false,
              "dims " + std::to_string(n.dim(k)) + " vs " +
                  std::to_string(n.dim(d - k)));
      continue;
    }
    if (n.dim(k) == 0) {
      // An empty block is vacuously nondegenerate, but a nonzero
      // complementary piece with a zero piece cannot pair.
      rep.add(k, true);
      continue;
    }
    QMatrix g = gram_block(n, k, d - k);
    bool ok = rref(g).rank == g.rows();
    rep.add(k, ok, ok ? "" : "singular block");
  }
  return rep;
}

CheckReport check_hl(const GradedSubspace& n, const RingElement& ell, int d) {
  CheckReport rep;
  rep.statement = "HL";
  const ChowRing* r = n.ring.get();
  for (int k = 0; 2 * k <= d; ++k) {
    int e = d - 2 * k;
    if (n.dim(k) != n.dim(d - k)) {
      rep.add(k, false, "dims differ");
      continue;
    }
    if (n.dim(k) == 0) {
      rep.add(k, true);
      continue;
    }
    bool inside = true;
    QMatrix rows(n.dim(k), r->dim(k + e));
    for (int a = 0; a < n.dim(k); ++a) {
      RingElement v = power_mul(r, ell, e, n.element(k, a));
      QMatrix vec(1, r->dim(k + e));
      for (auto& [j, cv] : v.c) vec(0, j) = cv;
      for (int j = 0; j < r->dim(k + e); ++j) rows(a, j) = vec(0, j);
      if (!n.piece[k + e].contains(vec)) inside = false;
    }
    if (!inside) {
      rep.add(k, false, "image leaves the module");
      continue;
    }
    bool ok = rref(rows).rank == n.dim(k);
    rep.add(k, ok, ok ? "" : "Lefschetz map not injective");
  }
  return rep;
}

CheckReport check_hr(const GradedSubspace& n, const RingElement& ell, int d) {
  CheckReport hl = check_hl(n, ell, d);
  if (!hl.overall) throw HLFailed("Hodge-Riemann requires hard Lefschetz");
  CheckReport rep;
  rep.statement = "HR";
  const ChowRing* r = n.ring.get();
  for (int k = 0; 2 * k <= d; ++k) {
    int e = d - 2 * k;
    int nk = n.dim(k);
    if (nk == 0) {
      rep.add(k, true);
      continue;
    }
    // Primitive part: coefficient vectors x over the N^k basis with
    // x * images = 0 (everything when the power overflows the ring).
    QMatrix prim_coeff;
    if (k + e + 1 > r->top) {
      prim_coeff = QMatrix::identity(nk);
    } else {
      QMatrix img(nk, r->dim(k + e + 1));
      for (int a = 0; a < nk; ++a) {
        RingElement v = power_mul(r, ell, e + 1, n.element(k, a));
        for (auto& [j, cv] : v.c) img(a, j) = cv;
      }
      prim_coeff = kernel(img.transpose());
    }
    int pd = prim_coeff.rows();
    if (pd == 0) {
      rep.add(k, true, "no primitive classes");
      continue;
    }
    // Primitive vectors in ambient coordinates.
    std::vector<RingElement> prim(pd);
    for (int s = 0; s < pd; ++s) {
      RingElement v{r, k, {}};
      for (int a = 0; a < nk; ++a) {
        if (prim_coeff(s, a) == 0) continue;
        RingElement base = n.element(k, a);
        base *= prim_coeff(s, a);
        v += base;
      }
      prim[s] = std::move(v);
    }
    QMatrix form(pd, pd);
    for (int s = 0; s < pd; ++s) {
      RingElement ls = power_mul(r, ell, e, prim[s]);
      for (int t = 0; t < pd; ++t) {
        Rat val = r->pair(ls, prim[t]);
        if (k % 2 == 1) val = -val;
        form(s, t) = val;
      }
    }
    Signature sig = signature(form);
    bool ok = sig.n_plus == pd && sig.n_minus == 0 && sig.n_zero == 0;
    rep.add(k, ok,
            ok ? "" : "signature (" + std::to_string(sig.n_plus) + "," +
                          std::to_string(sig.n_minus) + "," +
                          std::to_string(sig.n_zero) + ") on dim " +
                          std::to_string(pd));
  }
  return rep;
}

CheckReport check_ns(const CtxPtr& ctx, NSFlavor flavor) {
  CheckReport rep;
  int d = ctx->rank();
  if (flavor == NSFlavor::Underline) {
    rep.statement = "NS-underline";
    const GradedSubspace& ih = underline_ih_j(ctx).ih;
    const ChowRing* r = ih.ring.get();
    RingElement beta = d >= 2 ? r->beta() : r->zero(1);
    for (int k = 0; 2 * k <= d - 2; ++k) {
      // Socle piece: kernel of beta within IH^k.
      int nk = ih.dim(k);
      int soc = 0;
      if (nk > 0) {
        QMatrix img(nk, k + 1 <= r->top ? r->dim(k + 1) : 0);
        if (k + 1 <= r->top) {
          for (int a = 0; a < nk; ++a) {
            RingElement v = r->mul(beta, ih.element(k, a));
            for (auto& [j, cv] : v.c) img(a, j) = cv;
          }
          soc = nk - rref(img).rank;
        } else {
          soc = nk;
        }
      }
      rep.add(k, soc == 0,
              soc == 0 ? "" : "socle dim " + std::to_string(soc));
    }
    return rep;
  }
  rep.statement = flavor == NSFlavor::Plain ? "NS" : "NS-circ";
  const GradedSubspace& n =
      flavor == NSFlavor::Plain ? ih_space(ctx) : ih_circ_space(ctx);
  const ChowRing* r = n.ring.get();
  GradedSubspace soc =
      filter_annihilator(n, filter_above(ctx, ctx->lattice.bottom()));
  if (flavor == NSFlavor::Circ) {
    // The reduced module's algebra also contains the class of the empty
    // flat; intersect with its kernel.
    RingElement x0 = r->x_class(ctx->lattice.bottom());
    GradedSubspace soc2;
    soc2.ring = n.ring;
    soc2.piece.resize(r->top + 1);
    for (int k = 0; k <= r->top; ++k) {
      int nk = soc.dim(k);
      if (nk == 0) {
        soc2.piece[k] = Subspace(r->dim(k));
        continue;
      }
      if (k + 1 > r->top) {
        soc2.piece[k] = soc.piece[k];
        continue;
      }
      QMatrix imgT(r->dim(k + 1), nk);
      for (int a = 0; a < nk; ++a) {
        RingElement v = r->mul(x0, soc.element(k, a));
        for (auto& [j, cv] : v.c) imgT(j, a) = cv;
      }
      QMatrix coeff = kernel(imgT);
      QMatrix out(coeff.rows(), r->dim(k));
      const QMatrix& nb = soc.piece[k].basis();
      for (int i = 0; i < coeff.rows(); ++i)
        for (int a = 0; a < nk; ++a) {
          if (coeff(i, a) == 0) continue;
          for (int j = 0; j < r->dim(k); ++j)
            out(i, j) += coeff(i, a) * nb(a, j);
        }
      soc2.piece[k] = Subspace::from_span(out);
    }
    soc = std::move(soc2);
  }
  for (int k = 0; 2 * k <= d; ++k)
    rep.add(k, soc.dim(k) == 0,
            soc.dim(k) == 0 ? "" : "socle dim " + std::to_string(soc.dim(k)));
  return rep;
}

CheckReport check_cd(const CtxPtr& ctx, IHFlavor flavor) {
  CheckReport rep;
  rep.statement = flavor == IHFlavor::Plain
                      ? "CD"
                      : (flavor == IHFlavor::Circ ? "CD-circ" : "CD-underline");
  Decomposition dec = decomposition(ctx, flavor);
  const ChowRing* r = dec.ring.get();
  int top = r->top;
  // Dimension additivity per degree.
  for (int k = 0; k <= top; ++k) {
    int total = dec.module.dim(k);
    for (auto& [f, s] : dec.summands) total += s.dim(k);
    bool ok = total == r->dim(k);
    rep.add(k, ok,
            ok ? "" : "dims " + std::to_string(total) + " vs ring " +
                          std::to_string(r->dim(k)));
  }
  // Pairwise orthogonality of the summands, and of the module against them.
  bool orth = true;
  auto pair_spaces = [&](const GradedSubspace& a, const GradedSubspace& b) {
    for (int k = 0; k <= top && orth; ++k) {
      int kc = top - k;
      for (int i = 0; i < a.dim(k) && orth; ++i) {
        RingElement va = a.element(k, i);
        for (int j = 0; j < b.dim(kc) && orth; ++j)
          if (r->pair(va, b.element(kc, j)) != 0) orth = false;
      }
    }
  };
  for (size_t x = 0; x < dec.summands.size() && orth; ++x)
    for (size_t y = x + 1; y < dec.summands.size() && orth; ++y)
      pair_spaces(dec.summands[x].second, dec.summands[y].second);
  for (auto& [f, s] : dec.summands) {
    if (!orth) break;
    pair_spaces(dec.module, s);
  }
  rep.add(-1, orth, orth ? "" : "summands not orthogonal");
  // Nonsingular restricted pairings.
  bool nonsing = check_pd(dec.module, top).overall;
  for (auto& [f, s] : dec.summands)
    if (!check_pd(s, top).overall) nonsing = false;
  rep.add(-2, nonsing, nonsing ? "" : "restricted pairing singular");
  return rep;
}

CheckReport check_hancock(const GradedSubspace& n, int d) {
  CheckReport rep;
  rep.statement = "HANCOCK";
  if (d % 2 == 1) {
    rep.add(d / 2, true, "odd top degree");
    return rep;
  }
  QMatrix g = gram_block(n, d / 2, d / 2);
  Signature sig = signature(g);
  long expected = 0;
  for (size_t k = 0; k < n.piece.size(); ++k)
    expected += (k % 2 == 0 ? 1 : -1) * n.dim(static_cast<int>(k));
  bool ok = sig.n_plus - sig.n_minus == expected;
  rep.add(d / 2, ok,
          "signature " + std::to_string(sig.n_plus - sig.n_minus) +
              " expected " + std::to_string(expected));
  return rep;
}

RingElement default_ell(const CtxPtr& ctx, const std::vector<Rat>& coeffs) {
  RingPtr r = ChowRing::get(ctx, true);
  const FlatLattice& l = ctx->lattice;
  const auto& s1 = l.stratum(1);
  if (!coeffs.empty() && coeffs.size() != s1.size())
    throw NonPositiveCoefficients("coefficient count mismatch");
  RingElement ell = r->zero(1);
  for (size_t i = 0; i < s1.size(); ++i) {
    Rat c = coeffs.empty() ? Rat(1) : coeffs[i];
    if (c <= 0) throw NonPositiveCoefficients("coefficients must be positive");
    RingElement y = r->y_flat(s1[i]);
    y *= c;
    ell += y;
  }
  return ell;
}

TopHeavyResult top_heavy(const CtxPtr& ctx, const std::vector<Rat>& coeffs) {
  TopHeavyResult out;
  out.report.statement = "TOPHEAVY";
  const FlatLattice& l = ctx->lattice;
  int d = ctx->rank();
  const auto& s1 = l.stratum(1);
  if (!coeffs.empty() && coeffs.size() != s1.size())
    throw NonPositiveCoefficients("coefficient count mismatch");
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] <= 0)
      throw NonPositiveCoefficients("coefficients must be positive");

  // Multiplication by ell inside the graded Moebius algebra: vectors are
  // indexed by flats.
  auto mul_ell = [&](const std::vector<Rat>& v) {
    std::vector<Rat> out_v(l.num_flats());
    for (int g = 0; g < l.num_flats(); ++g) {
      if (v[g] == 0) continue;
      for (size_t i = 0; i < s1.size(); ++i) {
        int r1 = s1[i];
        int j = l.join(g, r1);
        if (l.flat(j).rank == l.flat(g).rank + 1)
          out_v[j] += v[g] * (coeffs.empty() ? Rat(1) : coeffs[i]);
      }
    }
    return out_v;
  };

  for (int k = 0; 2 * k <= d; ++k) {
    for (int j = k; j <= d - k; ++j) {
      const auto& sk = l.stratum(k);
      const auto& sj = l.stratum(j);
      bool count_ok = sk.size() <= sj.size();
      out.report.add(k * 100 + j, count_ok,
                     "|L^" + std::to_string(k) + "|=" +
                         std::to_string(sk.size()) + " vs |L^" +
                         std::to_string(j) + "|=" + std::to_string(sj.size()));
      if (!count_ok) continue;

      // Matrix of ell^{j-k} on the flat bases.
      QMatrix mat(static_cast<int>(sk.size()), static_cast<int>(sj.size()));
      std::map<int, int> col;
      for (size_t t = 0; t < sj.size(); ++t) col[sj[t]] = static_cast<int>(t);
      bool support_ok = true;
      BipartiteMatcher matcher(static_cast<int>(sk.size()),
                               static_cast<int>(sj.size()));
      for (size_t s = 0; s < sk.size(); ++s) {
        std::vector<Rat> v(l.num_flats());
        v[sk[s]] = 1;
        for (int step = 0; step < j - k; ++step) v = mul_ell(v);
        for (int g = 0; g < l.num_flats(); ++g) {
          if (v[g] == 0) continue;
          if (!l.leq(sk[s], g)) support_ok = false;
          mat(static_cast<int>(s), col.at(g)) = v[g];
          matcher.add_edge(static_cast<int>(s), col.at(g));
        }
      }
      out.report.add(k * 100 + j, support_ok,
                     support_ok ? "support inside containment"
                                : "support outside containment");
      bool rank_ok = rref(mat).rank == static_cast<int>(sk.size());
      out.report.add(k * 100 + j, rank_ok,
                     rank_ok ? "full column rank" : "rank deficient");
      int matched = matcher.solve();
      if (rank_ok && matched != static_cast<int>(sk.size()))
        throw MatchingNotFound("full rank but no perfect matching");
      std::vector<std::pair<int, int>> pairs;
      for (size_t s = 0; s < sk.size(); ++s)
        if (matcher.match_l[s] >= 0)
          pairs.emplace_back(sk[s], sj[matcher.match_l[s]]);
      out.matchings.emplace_back(k, j, std::move(pairs));
    }
  }
  return out;
}

std::string top_heavy_json(const CtxPtr& ctx, const TopHeavyResult& r) {
  const FlatLattice& l = ctx->lattice;
  std::ostringstream os;
  os << "{\"overall\":" << (r.report.overall ? "true" : "false")
     << ",\"matchings\":[";
  for (size_t i = 0; i < r.matchings.size(); ++i) {
    auto& [k, j, pairs] = r.matchings[i];
    os << (i ? "," : "") << "{\"k\":" << k << ",\"j\":" << j << ",\"pairs\":[";
    for (size_t p = 0; p < pairs.size(); ++p) {
      os << (p ? "," : "") << "[" << l.flat(pairs[p].first).elements << ","
         << l.flat(pairs[p].second).elements << "]";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace mih
