#include "ahlab/scalar.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace ahlab {

namespace {

Int isqrt(const Int& v) { return boost::multiprecision::sqrt(v); }

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

std::pair<Int, Int> squarefree_decompose(const Int& q) {
  if (q <= 0) throw std::domain_error("squarefree_decompose: argument must be positive");
  Int s = 1, m = 1, rest = q;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) m *= p;
  }
  m *= rest;  // leftover prime (exponent 1)
  return {s, m};
}

Scalar::Scalar(const Rat& v) {
  if (v != 0) terms_[1] = v;
}

void Scalar::add_term(const Int& radicand, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(radicand);
  if (it == terms_.end()) {
    terms_.emplace(radicand, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar Scalar::root(const Rat& c, const Int& m) {
  if (c == 0) return Scalar();
  auto [s, sf] = squarefree_decompose(m);
  Scalar r;
  r.add_term(sf, c * s);
  return r;
}

Scalar Scalar::sqrt_rational(const Rat& q) {
  if (q <= 0) throw std::domain_error("sqrt_rational: argument must be positive");
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  // q = num*den / den^2.
  auto [s, m] = squarefree_decompose(num * den);
  return root(Rat(s, den), m);
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rat Scalar::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rat(0) : it->second;
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  for (const auto& [m, cm] : a.terms_) {
    for (const auto& [k, ck] : b.terms_) {
      // sqrt(m)*sqrt(k) = g*sqrt((m/g)(k/g)) with g = gcd(m,k); since m and k
      // are squarefree, (m/g)(k/g) is squarefree.
      Int g = boost::multiprecision::gcd(m, k);
      r.add_term((m / g) * (k / g), cm * ck * g);
    }
  }
  return r;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  auto it = terms_.begin(), jt = o.terms_.begin();
  for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return it->first < jt->first ? std::strong_ordering::less : std::strong_ordering::greater;
    if (it->second != jt->second) return it->second < jt->second ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (it != terms_.end()) return std::strong_ordering::greater;
  if (jt != o.terms_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: division by zero");
  if (is_rational()) return Scalar(Rat(1) / rational_part());
  // Pick a prime p dividing some radicand and split a = b + sqrt(p)*c where b
  // collects the terms whose radicand is coprime to p.  The Galois conjugate
  // a~ = b - sqrt(p)*c satisfies a*a~ = b^2 - p*c^2, which involves one fewer
  // prime, so recursion terminates.
  Int p = 0;
  for (const auto& [m, c] : terms_) {
    if (m > 1) {
      for (Int q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
          p = q;
          break;
        }
      }
      if (p == 0) p = m;
      break;
    }
  }
  Scalar b, c;
  for (const auto& [m, coeff] : terms_) {
    if (m % p == 0) {
      c.add_term(m / p, coeff);
    } else {
      b.add_term(m, coeff);
    }
  }
  Scalar conj = b - Scalar::root(1, p) * c;
  Scalar norm = *this * conj;  // lives in the subfield without sqrt(p)
  return conj * norm.inverse();
}

Sign Scalar::sign() const {
  if (is_zero()) return Sign::zero;
  if (is_rational()) return rational_part() > 0 ? Sign::positive : Sign::negative;
  // Interval refinement: enclose each sqrt(m) in [lo, hi] with hi - lo = 4^-t
  // and widen t until the enclosure of the sum excludes zero.  Termination is
  // guaranteed because the value is exactly nonzero.
  for (int t = 8;; t *= 2) {
    const Int scale = Int(1) << t;
    Rat lo_sum = 0, hi_sum = 0;
    for (const auto& [m, c] : terms_) {
      Int r = isqrt(m * scale * scale);
      Rat lo(r, scale), hi(r + 1, scale);
      if (c > 0) {
        lo_sum += c * lo;
        hi_sum += c * hi;
      } else {
        lo_sum += c * hi;
        hi_sum += c * lo;
      }
    }
    if (lo_sum > 0) return Sign::positive;
    if (hi_sum < 0) return Sign::negative;
  }
}

double Scalar::to_double() const {
  double v = 0;
  for (const auto& [m, c] : terms_) v += c.convert_to<double>() * std::sqrt(m.convert_to<double>());
  return v;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const Rat a = abs_rat(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? "-" : "+");
    }
    if (m == 1) {
      out << a;
    } else {
      if (a != 1) out << a << "*";
      out << "sqrt(" << m << ")";
    }
  }
  return out.str();
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("Scalar parse error at position " + std::to_string(pos) + ": " + what +
                                " in \"" + s + "\"");
  }
  Int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return Int(s.substr(start, pos - start));
  }
  Rat rational() {
    Int num = integer();
    if (eat('/')) return Rat(num, integer());
    return Rat(num);
  }
  bool at_sqrt() {
    skip_ws();
    return s.compare(pos, 4, "sqrt") == 0;
  }
  // One term: [rational ['*']] [sqrt(int)]
  Scalar term() {
    Rat coeff = 1;
    bool have_coeff = false;
    if (!at_sqrt()) {
      coeff = rational();
      have_coeff = true;
    }
    if (have_coeff && !eat('*')) return Scalar(coeff);
    if (!at_sqrt()) {
      if (have_coeff) fail("expected sqrt(...) after '*'");
      fail("expected term");
    }
    pos += 4;
    if (!eat('(')) fail("expected '(' after sqrt");
    Int m = integer();
    if (!eat(')')) fail("expected ')'");
    return Scalar::root(coeff, m);
  }
  Scalar expr() {
    Scalar total;
    bool negative = eat('-');
    if (!negative) eat('+');
    while (true) {
      Scalar t = term();
      total += negative ? -t : t;
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) {
        negative = false;
      } else if (eat('-')) {
        negative = true;
      } else {
        fail("expected '+' or '-'");
      }
    }
    return total;
  }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Parser p(text);
  p.skip_ws();
  if (p.pos >= text.size()) throw std::invalid_argument("Scalar parse error: empty input");
  return p.expr();
}

}  // namespace ahlab
