// Exact arithmetic in the real multi-quadratic field Q(sqrt(m) : m squarefree).
//
// A Scalar is a finite sum  sum_m c_m * sqrt(m)  with rational coefficients c_m
// and distinct squarefree positive integer radicands m (m = 1 being the
// rational part).  Because the square roots of distinct squarefree integers
// are linearly independent over Q, the representation is canonical: two
// Scalars are equal iff their term maps coincide, and the zero test is exact.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>

namespace ahlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Sign { negative = -1, zero = 0, positive = 1 };

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : Scalar(Rat(v)) {}           // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(Rat(v)) {}            // NOLINT(google-explicit-constructor)
  Scalar(const Rat& v);                        // NOLINT(google-explicit-constructor)
  // c * sqrt(m); m need not be squarefree, it is reduced.
  static Scalar root(const Rat& c, const Int& m);
  // Unique positive square root of a positive rational, as (rational)*sqrt(m).
  static Scalar sqrt_rational(const Rat& q);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // Rational part (coefficient of radicand 1).
  Rat rational_part() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Arbitrary total order (on the canonical representation), for use as map key.
  std::strong_ordering operator<=>(const Scalar& o) const;

  // Multiplicative inverse; throws std::domain_error on zero.
  Scalar inverse() const;

  // Exact sign, decided by refining rational interval enclosures of the roots.
  Sign sign() const;

  double to_double() const;

  // Grammar: sums of terms "<rational>", "<rational>*sqrt(<int>)", "sqrt(<int>)",
  // e.g. "3/2*sqrt(3)", "-1/2+sqrt(2)".  to_string() emits this grammar.
  std::string to_string() const;
  static Scalar parse(const std::string& text);

  const std::map<Int, Rat>& terms() const { return terms_; }

 private:
  void add_term(const Int& radicand, const Rat& coeff);
  std::map<Int, Rat> terms_;  // squarefree radicand -> nonzero coefficient
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

// q = s^2 * m with m squarefree; returns (s, m).  q > 0.
std::pair<Int, Int> squarefree_decompose(const Int& q);

}  // namespace ahlab
