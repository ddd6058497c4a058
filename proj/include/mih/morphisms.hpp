#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mih/chow.hpp"

namespace mih {

struct BadFlat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the graded tensor of a plain contraction ring (left) with a
// localization ring (right; augmented or plain).
struct TensorElem {
  RingPtr L, R;
  int deg = 0;
  std::map<std::tuple<int, int, int>, Rat> c;  // (left degree, posL, posR)

  bool is_zero() const { return c.empty(); }
  TensorElem& operator+=(const TensorElem& o);
  TensorElem& operator*=(const Rat& s);
  bool operator==(const TensorElem& o) const {
    if (c.empty() && o.c.empty()) return true;
    return deg == o.deg && c == o.c;
  }
};

TensorElem tensor_of(const RingElement& a, const RingElement& b);
TensorElem tensor_mul(const TensorElem& a, const TensorElem& b);
// Product of the two degree functionals (zero unless both factors land on
// their tops).
Rat tensor_deg(const TensorElem& t);

// Flat translation helpers (order-preserving renumbering).
int flat_in_localization(const CtxPtr& parent, int f_idx, int g_idx);
int flat_in_contraction(const CtxPtr& parent, int f_idx, int g_idx);

// The three pull/push flavors: superscript maps into the tensor over a
// proper flat (augmented and plain versions) and the subscript maps into the
// augmented ring of the contraction.
enum class PP { AugSup, UndSup, AugSub };

// Target rings of the superscript maps for the flat f.
RingPtr tensor_left_ring(const CtxPtr& ctx, int f);
RingPtr tensor_right_ring(const CtxPtr& ctx, int f, bool right_aug);

TensorElem apply_pullback_sup(const CtxPtr& ctx, int f, bool right_aug,
                              const RingElement& a);
RingElement apply_pushforward_sup(const CtxPtr& ctx, int f, bool right_aug,
                                  const TensorElem& t);
RingElement apply_pullback_sub(const CtxPtr& ctx, int f, const RingElement& a);
RingElement apply_pushforward_sub(const CtxPtr& ctx, int f,
                                  const RingElement& a);

// Flattened per-degree bases of a tensor space.
struct TensorBasis {
  RingPtr L, R;
  std::vector<std::vector<std::tuple<int, int, int>>> items;  // by degree
  std::vector<std::map<std::tuple<int, int, int>, int>> index;  // by degree
  int dim(int k) const {
    return k < 0 || k >= static_cast<int>(items.size())
               ? 0
               : static_cast<int>(items[k].size());
  }
};
TensorBasis tensor_basis(RingPtr L, RingPtr R);

// Materialized map with per-source-degree blocks (row = source coordinate).
struct LinearMapData {
  int shift = 0;
  std::vector<QMatrix> blocks;
};

LinearMapData pullback(const CtxPtr& ctx, int f, PP flavor);
LinearMapData pushforward(const CtxPtr& ctx, int f, PP flavor);

struct LawResult {
  std::string law;
  Mask flat;
  int degree;
  bool holds;
};
struct LawReport {
  std::vector<LawResult> results;
  bool overall = true;
  void add(std::string law, Mask flat, int degree, bool ok) {
    overall = overall && ok;
    results.push_back({std::move(law), flat, degree, ok});
  }
};

// Exercises the pullback/pushforward identities on every proper flat:
// composition with the multiplication by x_F or y_F, degree-map
// commutation, the projection formula on spanning sets, vanishing across
// incomparable flats, the restriction rules for y classes and alpha, the
// push-push commutation diagrams, and the pairing identity for two
// pushforwards.
LawReport verify_pushpull_laws(const CtxPtr& ctx);

std::string law_report_json(const LawReport& r);

}  // namespace mih
