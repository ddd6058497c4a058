#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mih/rat.hpp"

namespace mih {

// Dense polynomial with arbitrary-precision integer coefficients, ascending by
// degree.  The zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static IntPoly constant(long v) {
    return v == 0 ? IntPoly() : IntPoly({Int(v)});
  }
  static IntPoly monomial(int deg, Int coeff = Int(1)) {
    std::vector<Int> c(deg + 1, Int(0));
    c[deg] = std::move(coeff);
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& coeff(int k) const {
    static const Int zero(0);
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : zero;
  }
  const std::vector<Int>& coeffs() const { return c_; }

  IntPoly operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const Int& s) const {
    std::vector<Int> r = c_;
    for (auto& x : r) x *= s;
    return IntPoly(std::move(r));
  }
  IntPoly operator-() const { return *this * Int(-1); }
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

  // t^d * p(1/t); requires degree() <= d.
  IntPoly reverse(int d) const {
    if (degree() > d) throw std::invalid_argument("reverse: degree exceeds d");
    std::vector<Int> r(d + 1, Int(0));
    for (int k = 0; k <= degree(); ++k) r[d - k] = c_[k];
    return IntPoly(std::move(r));
  }

  // Coefficients in degrees <= bound (inclusive).
  IntPoly truncate(int bound) const {
    if (bound < 0) return IntPoly();
    std::vector<Int> r(c_.begin(),
                       c_.begin() + std::min<size_t>(c_.size(), bound + 1));
    return IntPoly(std::move(r));
  }

  Int eval(const Int& t) const {
    Int acc(0);
    for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k];
    return acc;
  }

  bool palindromic(int d) const { return *this == reverse(d); }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += (c_[k] > 0 ? " + " : " - ");
      else if (c_[k] < 0) s += "-";
      Int a = abs(c_[k]);
      if (k == 0) s += a.get_str();
      else {
        if (a != 1) s += a.get_str() + "*";
        s += (k == 1) ? "t" : "t^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

}  // namespace mih
