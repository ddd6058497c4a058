#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "mih/qmatrix.hpp"
#include "mih/rat.hpp"

namespace mih {

// Sparse vector: (index, coefficient) pairs sorted by index, no zeros.
struct SparseVec {
  std::vector<std::pair<int, Rat>> t;

  bool empty() const { return t.empty(); }
  int lead() const { return t.front().first; }
  void push(int i, Rat c) { t.emplace_back(i, std::move(c)); }

  void normalize_sorted() {
    std::sort(t.begin(), t.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rat>> out;
    for (auto& [i, c] : t) {
      if (!out.empty() && out.back().first == i) out.back().second += c;
      else out.emplace_back(i, c);
    }
    t.clear();
    for (auto& [i, c] : out)
      if (c != 0) t.emplace_back(i, std::move(c));
  }

  SparseVec& operator*=(const Rat& s) {
    if (s == 0) { t.clear(); return *this; }
    for (auto& [i, c] : t) c *= s;
    return *this;
  }

  // this += s * o
  void axpy(const Rat& s, const SparseVec& o) {
    if (s == 0 || o.t.empty()) return;
    std::vector<std::pair<int, Rat>> out;
    out.reserve(t.size() + o.t.size());
    size_t a = 0, b = 0;
    while (a < t.size() || b < o.t.size()) {
      if (b == o.t.size() || (a < t.size() && t[a].first < o.t[b].first)) {
        out.push_back(std::move(t[a++]));
      } else if (a == t.size() || o.t[b].first < t[a].first) {
        out.emplace_back(o.t[b].first, s * o.t[b].second);
        ++b;
      } else {
        Rat c = t[a].second + s * o.t[b].second;
        if (c != 0) out.emplace_back(t[a].first, std::move(c));
        ++a; ++b;
      }
    }
    t = std::move(out);
  }
};

// Incremental forward echelon over Q with pivot = least index.  Pivot rows
// are stored lead-normalized; tails are not back-substituted, so full
// reduction walks the vector front to back (tails only reference larger
// indices, which keeps the walk finite).
class RowEliminator {
 public:
  // Reduces `v` against the current echelon; if a nonzero remainder is left
  // it becomes a new pivot row and true is returned.
  bool add_row(SparseVec v) {
    reduce_leads(v);
    if (v.empty()) return false;
    Rat inv = 1 / v.t.front().second;
    v *= inv;
    int lead = v.lead();
    pivot_rows_.emplace(lead, std::move(v));
    return true;
  }

  // Eliminates every pivot index from v (not just the lead).  Pivot tails
  // only reference larger indices, so a single left-to-right sweep suffices.
  void reduce_full(SparseVec& v) const {
    size_t done = 0;
    while (done < v.t.size()) {
      auto it = pivot_rows_.find(v.t[done].first);
      if (it == pivot_rows_.end()) { ++done; continue; }
      Rat c = v.t[done].second;
      v.axpy(-c, it->second);
    }
  }

  bool is_pivot(int idx) const { return pivot_rows_.count(idx) != 0; }
  int rank() const { return static_cast<int>(pivot_rows_.size()); }
  const std::map<int, SparseVec>& pivot_rows() const { return pivot_rows_; }

 private:
  void reduce_leads(SparseVec& v) const {
    while (!v.empty()) {
      auto it = pivot_rows_.find(v.lead());
      if (it == pivot_rows_.end()) return;
      Rat c = v.t.front().second;
      v.axpy(-c, it->second);
    }
  }

  std::map<int, SparseVec> pivot_rows_;
};

}  // namespace mih
