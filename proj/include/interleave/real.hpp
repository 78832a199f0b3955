#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace interleave {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline Integer parse_integer(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty integer");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad integer '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

inline Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace detail

/** @brief Parses "p/q", integers and finite decimals such as "-1.25" or "3e-2" exactly. */
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash));
    Integer den = detail::parse_integer(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (dot) --exponent;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw ParseError("bad number '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("bad number '" + std::string(s) + "'");
    Integer e = detail::parse_integer(s.substr(i + 1));
    if (!e.fits_slong_p()) throw ParseError("exponent out of range");
    exponent += e.get_si();
  }
  Integer mant(digits, 10);
  if (neg) mant = -mant;
  Rational q;
  if (exponent >= 0) {
    q = Rational(mant * detail::pow10(static_cast<unsigned long>(exponent)));
  } else {
    q = Rational(mant, detail::pow10(static_cast<unsigned long>(-exponent)));
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/**
 * @brief Exact real number of the form sum c_i * sqrt(n_i).
 *
 * Radicands are positive integers, one representative per square class, so the
 * representation is zero iff it has no terms. Sign is decided exactly.
 */
class Real {
 public:
  struct Term {
    Integer radicand;  // 1 for the rational part
    Rational coeff;
  };

  Real() = default;
  Real(const Rational& q) {  // NOLINT: implicit by design
    Rational c = q;
    c.canonicalize();
    if (c != 0) terms_.push_back({Integer(1), std::move(c)});
  }
  template <class I>
    requires std::is_integral_v<I>
  Real(I v) : Real(Rational(static_cast<long>(v))) {}  // NOLINT

  /** @brief Exact square root of a non-negative rational. */
  static Real sqrt(const Rational& q) {
    Rational qc = q;
    qc.canonicalize();
    if (qc < 0) throw DomainError("sqrt of negative rational");
    Real r;
    if (qc == 0) return r;
    Integer n = qc.get_num() * qc.get_den();
    Rational c(1, qc.get_den());
    c.canonicalize();
    r.add_raw(c, n);
    return r;
  }

  static Real parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1); }
  bool is_monomial() const { return terms_.size() <= 1; }

  Rational to_rational() const {
    if (!is_rational()) throw DomainError("value " + str() + " is irrational");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }

  int sign() const {
    if (terms_.empty()) return 0;
    int first = sgn(terms_[0].coeff);
    bool same = true;
    for (const auto& t : terms_) same = same && sgn(t.coeff) == first;
    if (same) return first;
    if (terms_.size() == 2) {
      // a*sqrt(m) + b*sqrt(n) with opposite signs: compare squares
      const auto& a = terms_[0];
      const auto& b = terms_[1];
      Rational lhs = a.coeff * a.coeff * Rational(a.radicand);
      Rational rhs = b.coeff * b.coeff * Rational(b.radicand);
      return lhs > rhs ? sgn(a.coeff) : sgn(b.coeff);
    }
    for (unsigned bits = 64;; bits *= 2) {
      auto [lo, hi] = enclosure(bits);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
  }

  /** @brief Rational bounds lo <= x <= hi with width O(2^-bits). */
  std::pair<Rational, Rational> enclosure(unsigned bits = 64) const {
    Rational lo(0), hi(0);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    for (const auto& t : terms_) {
      if (t.radicand == 1) {
        lo += t.coeff;
        hi += t.coeff;
        continue;
      }
      Integer s = detail::isqrt(t.radicand * scale * scale);
      Rational a(s, scale), b(s + 1, scale);
      a.canonicalize();
      b.canonicalize();
      if (t.coeff > 0) {
        lo += t.coeff * a;
        hi += t.coeff * b;
      } else {
        lo += t.coeff * b;
        hi += t.coeff * a;
      }
    }
    return {lo, hi};
  }

  double to_double() const {
    if (is_rational()) return to_rational().get_d();
    auto [lo, hi] = enclosure(80);
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
  }

  Integer floor() const {
    if (is_rational()) return detail::floor_of(to_rational());
    for (unsigned bits = 64;; bits *= 2) {
      auto [lo, hi] = enclosure(bits);
      Integer f = detail::floor_of(lo);
      if (detail::ceil_of(hi) - 1 == f) return f;
    }
  }
  Integer ceil() const { return -(Real(-*this).floor()); }

  Real operator-() const {
    Real r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Real& operator+=(const Real& o) {
    for (const auto& t : o.terms_) add_term(t.coeff, t.radicand);
    return *this;
  }
  Real& operator-=(const Real& o) {
    for (const auto& t : o.terms_) add_term(-t.coeff, t.radicand);
    return *this;
  }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }

  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    if (a.is_rational() && b.is_rational()) return Real(a.to_rational() * b.to_rational());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.radicand.get_mpz_t(), y.radicand.get_mpz_t());
        Integer n = (x.radicand / g) * (y.radicand / g);
        r.add_term(x.coeff * y.coeff * Rational(g), n);
      }
    }
    return r;
  }

  friend Real operator/(const Real& a, const Real& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (b.is_rational()) {
      Rational inv = 1 / b.to_rational();
      Real r = a;
      for (auto& t : r.terms_) t.coeff *= inv;
      return r;
    }
    if (b.is_monomial()) {
      const auto& t = b.terms_[0];
      Real inv;
      inv.add_term(1 / (t.coeff * Rational(t.radicand)), t.radicand);
      return a * inv;
    }
    return a * b.inverse();
  }

  friend bool operator==(const Real& a, const Real& b) {
    if (a.is_rational() && b.is_rational()) return a.to_rational() == b.to_rational();
    return (a - b).is_zero();
  }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    if (a.is_rational() && b.is_rational()) {
      int c = cmp(a.to_rational(), b.to_rational());
      return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /** @brief Canonical text: "p/q" for rationals, otherwise e.g. "1+1/2*sqrt(3)". */
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      Rational mag = abs(c);
      std::string piece;
      if (t.radicand == 1) {
        piece = mag.get_str();
      } else {
        std::string root = "sqrt(" + t.radicand.get_str() + ")";
        piece = mag == 1 ? root : mag.get_str() + "*" + root;
      }
      if (first) {
        out = (c < 0 ? "-" : "") + piece;
      } else {
        out += (c < 0 ? "-" : "+") + piece;
      }
      first = false;
    }
    return out;
  }

 private:
  static Integer reduce_radicand(Integer n, Rational& coeff) {
    for (unsigned long p = 2; p <= 1000; p += (p == 2 ? 1 : 2)) {
      unsigned long pp = p * p;
      if (n < pp) break;
      while (mpz_divisible_ui_p(n.get_mpz_t(), pp)) {
        n /= pp;
        coeff *= p;
      }
    }
    if (n > 1 && detail::is_square(n)) {
      coeff *= detail::isqrt(n);
      n = 1;
    }
    return n;
  }

  void add_raw(Rational c, Integer n) {
    n = reduce_radicand(std::move(n), c);
    add_term(std::move(c), std::move(n));
  }

  void add_term(Rational c, Integer n) {
    if (c == 0) return;
    if (n != 1 && detail::is_square(n)) {
      c *= detail::isqrt(n);
      n = 1;
    }
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->radicand == n) {
        it->coeff += c;
        if (it->coeff == 0) terms_.erase(it);
        return;
      }
      if (n != 1 && it->radicand != 1) {
        Integer prod = it->radicand * n;
        if (detail::is_square(prod)) {
          // sqrt(n) = k / sqrt(r) = (k / r) sqrt(r)
          Integer k = detail::isqrt(prod);
          it->coeff += c * Rational(k, it->radicand);
          it->coeff.canonicalize();
          if (it->coeff == 0) terms_.erase(it);
          return;
        }
      }
    }
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), n,
                                [](const Term& t, const Integer& v) { return t.radicand < v; });
    terms_.insert(pos, Term{std::move(n), std::move(c)});
  }

  static std::vector<Integer> coprime_base(std::vector<Integer> xs) {
    std::vector<Integer> base;
    while (!xs.empty()) {
      Integer a = xs.back();
      xs.pop_back();
      if (a == 1) continue;
      bool split = false;
      for (std::size_t i = 0; i < base.size(); ++i) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), base[i].get_mpz_t());
        if (g == 1) continue;
        Integer b = base[i];
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
        xs.push_back(a / g);
        xs.push_back(b / g);
        xs.push_back(g);
        split = true;
        break;
      }
      if (!split && std::find(base.begin(), base.end(), a) == base.end()) base.push_back(a);
    }
    std::sort(base.begin(), base.end());
    return base;
  }

  Real conjugate(const Integer& q) const {
    Real r = *this;
    for (auto& t : r.terms_) {
      Integer n = t.radicand;
      unsigned parity = 0;
      while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
        n /= q;
        parity ^= 1U;
      }
      if (parity) t.coeff = -t.coeff;
    }
    return r;
  }

  Real inverse() const {
    std::vector<Integer> rads;
    for (const auto& t : terms_)
      if (t.radicand != 1) rads.push_back(t.radicand);
    Real x = *this;
    Real acc(Rational(1));
    for (const auto& q : coprime_base(rads)) {
      if (detail::is_square(q)) continue;
      Real c = x.conjugate(q);
      x = x * c;
      acc = acc * c;
    }
    if (!x.is_rational() || x.is_zero()) throw DomainError("failed to invert " + str());
    Rational n = x.to_rational();
    for (auto& t : acc.terms_) t.coeff /= n;
    return acc;
  }

  std::vector<Term> terms_;
};

namespace detail {

// term := number | number*sqrt(number) | sqrt(number)
inline Real parse_real_term(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty term");
  auto root = s.find("sqrt(");
  if (root == std::string_view::npos) return Real(parse_rational(s));
  if (s.back() != ')') throw ParseError("unterminated sqrt in '" + std::string(s) + "'");
  Rational coeff(1);
  std::string_view pre = trim(s.substr(0, root));
  if (!pre.empty()) {
    if (pre == "-") {
      coeff = -1;
    } else if (pre == "+") {
      coeff = 1;
    } else {
      if (pre.back() != '*') throw ParseError("expected '*' before sqrt in '" + std::string(s) + "'");
      coeff = parse_rational(pre.substr(0, pre.size() - 1));
    }
  }
  Rational arg = parse_rational(s.substr(root + 5, s.size() - root - 6));
  return Real(coeff) * Real::sqrt(arg);
}

}  // namespace detail

inline Real Real::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty real");
  Real r;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    bool split = i == s.size();
    if (!split) {
      char c = s[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      bool exp_sign = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E');
      split = depth == 0 && i > start && (c == '+' || c == '-') && !exp_sign && s[i - 1] != '*' && s[i - 1] != '/';
    }
    if (split) {
      r += detail::parse_real_term(s.substr(start, i - start));
      start = i;
    }
  }
  return r;
}

inline std::string to_string(const Real& x) { return x.str(); }
inline std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

/** @brief Element of the extended line: -inf, a finite Real, or +inf. */
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtendedReal() = default;
  ExtendedReal(Real v) : value_(std::move(v)) {}  // NOLINT
  ExtendedReal(const Rational& q) : value_(q) {}  // NOLINT
  template <class I>
    requires std::is_integral_v<I>
  ExtendedReal(I v) : value_(v) {}  // NOLINT

  static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }
  static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  const Real& value() const {
    if (!is_finite()) throw DomainError("infinite value has no finite coordinate");
    return value_;
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (!a.is_finite()) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "inf";
      default: return value_.str();
    }
  }

  static ExtendedReal parse(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "inf" || s == "+inf" || s == "Infinity") return pos_inf();
    if (s == "-inf" || s == "-Infinity") return neg_inf();
    return ExtendedReal(Real::parse(s));
  }

  double to_double() const {
    if (is_neg_inf()) return -1.0 / 0.0;
    if (is_pos_inf()) return 1.0 / 0.0;
    return value_.to_double();
  }

 private:
  explicit ExtendedReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Real value_;
};

inline ExtendedReal operator+(const ExtendedReal& a, const Real& b) {
  return a.is_finite() ? ExtendedReal(a.value() + b) : a;
}

inline std::string to_string(const ExtendedReal& x) { return x.str(); }
inline std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.str(); }

}  // namespace interleave
