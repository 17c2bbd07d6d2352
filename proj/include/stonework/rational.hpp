#pragma once

#include <gmpxx.h>

#include <string>

#include "stonework/error.hpp"

namespace stonework {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Canonical form: reduced, "p" when the denominator is 1, else "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0 || (s.find('/') != std::string::npos && s.back() == '/'))
    throw Error("BadRational", "cannot parse rational '" + s + "'");
  if (r.get_den() == 0) throw Error("BadRational", "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace stonework
