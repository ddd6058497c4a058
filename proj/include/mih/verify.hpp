#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mih/ih.hpp"

namespace mih {

struct NonPositiveCoefficients : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HLFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatchingNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeCheck {
  int k;
  bool holds;
  std::string witness;
};

struct CheckReport {
  std::string statement;
  std::string matroid;
  std::vector<DegreeCheck> per_degree;
  bool overall = true;
  void add(int k, bool ok, std::string witness = "") {
    overall = overall && ok;
    per_degree.push_back({k, ok, std::move(witness)});
  }
};

std::string report_json(const CheckReport& r);

// Poincare duality of degree d for a graded subspace with respect to the
// ambient pairing: restricted Gram blocks N^k x N^{d-k} nonsingular.
CheckReport check_pd(const GradedSubspace& n, int d);

// Hard Lefschetz of degree d with respect to multiplication by ell.
CheckReport check_hl(const GradedSubspace& n, const RingElement& ell, int d);

// Hodge-Riemann of degree d: (-1)^k <ell^{d-2k} a, b> positive definite on
// the kernel of ell^{d-2k+1}.  Throws HLFailed if the Lefschetz maps are
// not isomorphisms.
CheckReport check_hr(const GradedSubspace& n, const RingElement& ell, int d);

enum class NSFlavor { Plain, Circ, Underline };
CheckReport check_ns(const CtxPtr& ctx, NSFlavor flavor);

CheckReport check_cd(const CtxPtr& ctx, IHFlavor flavor);

// Middle-pairing signature equals the Poincare polynomial at -1 (even top
// degree; odd passes automatically).
CheckReport check_hancock(const GradedSubspace& n, int d);

// Kahler package for the intersection module of the augmented ring with
// ell = sum of y over rank-1 flats (optionally weighted), and for the plain
// module with beta.
RingElement default_ell(const CtxPtr& ctx,
                        const std::vector<Rat>& coeffs = {});

struct TopHeavyResult {
  CheckReport report;
  // One matching per (k, j) pair: list of (flat in stratum k, flat in
  // stratum j) with containment.
  std::vector<std::tuple<int, int, std::vector<std::pair<int, int>>>>
      matchings;
};
TopHeavyResult top_heavy(const CtxPtr& ctx,
                         const std::vector<Rat>& coeffs = {});

std::string top_heavy_json(const CtxPtr& ctx, const TopHeavyResult& r);

}  // namespace mih
