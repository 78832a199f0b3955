#pragma once

#include <compare>
#include <optional>
#include <string>

#include "interleave/real.hpp"

namespace interleave {

enum class Decoration : std::uint8_t { Minus, Plus };

/**
 * @brief Element of the decorated line: -inf, t- or t+ for finite t, or +inf.
 *
 * t- < t+ and both sit between every s+/- with s < t and s > t.
 */
class DecoratedValue {
 public:
  using Kind = ExtendedReal::Kind;

  DecoratedValue() = default;
  DecoratedValue(Real v, Decoration d) : value_(std::move(v)), dec_(d) {}

  static DecoratedValue neg_inf() { return DecoratedValue(Kind::NegInf); }
  static DecoratedValue pos_inf() { return DecoratedValue(Kind::PosInf); }
  static DecoratedValue minus(Real v) { return {std::move(v), Decoration::Minus}; }
  static DecoratedValue plus(Real v) { return {std::move(v), Decoration::Plus}; }

  /** @brief Rejects decorating an infinity. */
  static DecoratedValue make(const ExtendedReal& v, Decoration d) {
    if (!v.is_finite()) throw DomainError("infinities carry no decoration");
    return {v.value(), d};
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  const Real& value() const {
    if (!is_finite()) throw DomainError("infinite decorated value has no coordinate");
    return value_;
  }
  Decoration decoration() const { return dec_; }

  friend bool operator==(const DecoratedValue& a, const DecoratedValue& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || (a.dec_ == b.dec_ && a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const DecoratedValue& a, const DecoratedValue& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (!a.is_finite()) return std::strong_ordering::equal;
    if (auto c = a.value_ <=> b.value_; c != 0) return c;
    return static_cast<int>(a.dec_) <=> static_cast<int>(b.dec_);
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "inf";
      default: return value_.str() + (dec_ == Decoration::Minus ? "-" : "+");
    }
  }

 private:
  explicit DecoratedValue(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Real value_;
  Decoration dec_ = Decoration::Minus;
};

/** @brief pi: forgets the decoration. */
inline ExtendedReal project(const DecoratedValue& e) {
  if (e.is_neg_inf()) return ExtendedReal::neg_inf();
  if (e.is_pos_inf()) return ExtendedReal::pos_inf();
  return e.value();
}

/** @brief i-: t -> t-, infinities fixed. */
inline DecoratedValue inject_minus(const ExtendedReal& t) {
  if (t.is_neg_inf()) return DecoratedValue::neg_inf();
  if (t.is_pos_inf()) return DecoratedValue::pos_inf();
  return DecoratedValue::minus(t.value());
}

/** @brief i+: t -> t+, infinities fixed. */
inline DecoratedValue inject_plus(const ExtendedReal& t) {
  if (t.is_neg_inf()) return DecoratedValue::neg_inf();
  if (t.is_pos_inf()) return DecoratedValue::pos_inf();
  return DecoratedValue::plus(t.value());
}

/** @brief Whether the finite point t lies in the up-set <e, inf>. */
inline bool in_upset(const DecoratedValue& e, const Real& t) { return e <= DecoratedValue::minus(t); }

/** @brief Whether the finite point t lies in the down-set <-inf, e>. */
inline bool in_downset(const DecoratedValue& e, const Real& t) { return DecoratedValue::plus(t) <= e; }

/** @brief Nonempty interval <b, d> of the real line, b < d. */
class DecoratedInterval {
 public:
  DecoratedInterval(DecoratedValue b, DecoratedValue d) : b_(std::move(b)), d_(std::move(d)) {
    if (!(b_ < d_)) throw DomainError("empty interval <" + b_.str() + ", " + d_.str() + ">");
  }

  /** @brief Returns nullopt when b >= d instead of throwing. */
  static std::optional<DecoratedInterval> make(const DecoratedValue& b, const DecoratedValue& d) {
    if (!(b < d)) return std::nullopt;
    return DecoratedInterval(b, d);
  }

  /** @brief [lo, hi) for finite lo < hi. */
  static DecoratedInterval closed_open(const Real& lo, const Real& hi) {
    return {DecoratedValue::minus(lo), DecoratedValue::minus(hi)};
  }

  const DecoratedValue& b() const { return b_; }
  const DecoratedValue& d() const { return d_; }

  bool contains(const Real& t) const { return in_upset(b_, t) && in_downset(d_, t); }

  friend bool operator==(const DecoratedInterval&, const DecoratedInterval&) = default;

  std::string str() const { return "<" + b_.str() + ", " + d_.str() + ">"; }

 private:
  DecoratedValue b_;
  DecoratedValue d_;
};

inline std::ostream& operator<<(std::ostream& os, const DecoratedValue& e) { return os << e.str(); }
inline std::ostream& operator<<(std::ostream& os, const DecoratedInterval& J) { return os << J.str(); }

inline bool contains(const DecoratedInterval& J, const Real& t) { return J.contains(t); }

inline std::optional<DecoratedInterval> intersect(const DecoratedInterval& A, const DecoratedInterval& B) {
  return DecoratedInterval::make(std::max(A.b(), B.b()), std::min(A.d(), B.d()));
}

/** @brief A bounds B below: every y in B has some x in A with x <= y. */
inline bool bounds_below(const DecoratedInterval& A, const DecoratedInterval& B) { return A.b() <= B.b(); }

/** @brief A bounds B above: every x in A has some y in B with x <= y. */
inline bool bounds_above(const DecoratedInterval& A, const DecoratedInterval& B) { return A.d() <= B.d(); }

/** @brief Both bounding relations hold and the intervals meet. */
inline bool overlaps_above(const DecoratedInterval& A, const DecoratedInterval& B) {
  return bounds_below(A, B) && bounds_above(A, B) && intersect(A, B).has_value();
}

}  // namespace interleave
