#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace Eigen {

// Exact rational scalar support: pivoting and solves in FullPivLU only use
// field operations and comparisons, both of which are exact for mpq_class.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace kempf {

using Int = mpz_class;
using Rat = mpq_class;

// Lattice data (cocharacter weights, weight covectors) is small by nature;
// products that can grow are always accumulated in Int or Rat.
using Coord = std::int64_t;

using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int rat_num(const Rat& r) { return r.get_num(); }
inline Int rat_den(const Rat& r) { return r.get_den(); }

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string format_rat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p", "-p", "p/q" with q > 0 after canonicalization; returns
/// nothing on malformed input.
inline std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (num.empty() || den.empty()) return std::nullopt;
  auto digits_ok = [](const std::string& s, bool sign_ok) {
    size_t i = (sign_ok && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
  Int p(num), q(den);
  if (q == 0) return std::nullopt;
  return make_rat(p, q);
}

/// Checked narrowing; nullopt when the value does not fit in Coord.
inline std::optional<Coord> to_coord(const Int& v) {
  if (!v.fits_slong_p()) return std::nullopt;
  long x = v.get_si();
  return static_cast<Coord>(x);
}

}  // namespace kempf
