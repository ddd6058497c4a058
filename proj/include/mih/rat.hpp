#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mih {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// Serialize as "p" or "p/q"; all external output of rationals goes through here.
inline std::string to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline int sign(const Rat& r) { return sgn(r); }

}  // namespace mih
