// Fixed-point LLR arithmetic in the Qi.Qc.Qf format.
//
// Values are stored sign-magnitude with a symmetric range
// [-(2^(q-1)-1), 2^(q-1)-1]. The sign bit survives a zero magnitude, so the
// min-sum F operation on (0, -9) yields a "negative zero" whose hard decision
// is 1. Channel quantization and a + (-a) always produce +0.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace polar {

struct QuantSpec {
  int qi = 5;  // internal LLR bits, sign included
  int qc = 4;  // channel LLR bits, sign included
  int qf = 0;  // fractional bits shared by both

  /// Parses "Qi.Qc.Qf", e.g. "5.4.0". Throws std::invalid_argument.
  static QuantSpec parse(std::string_view text);
  std::string str() const;
  void validate() const;

  std::int32_t internal_limit() const { return (std::int32_t{1} << (qi - 1)) - 1; }
  std::int32_t channel_limit() const { return (std::int32_t{1} << (qc - 1)) - 1; }

  friend bool operator==(const QuantSpec&, const QuantSpec&) = default;
};

enum class Rounding { half_away_from_zero, truncate };

class QLlr {
 public:
  constexpr QLlr() = default;
  constexpr explicit QLlr(std::int32_t raw) : mag_(raw < 0 ? -raw : raw), neg_(raw < 0) {}

  static constexpr QLlr from_sign_magnitude(bool negative, std::int32_t magnitude) {
    QLlr v;
    v.mag_ = magnitude;
    v.neg_ = negative;
    return v;
  }

  constexpr std::int32_t raw() const { return neg_ ? -mag_ : mag_; }
  constexpr std::int32_t magnitude() const { return mag_; }
  constexpr bool sign_bit() const { return neg_; }

  friend constexpr bool operator==(QLlr, QLlr) = default;

 private:
  std::int32_t mag_ = 0;
  bool neg_ = false;
};

QLlr quantize_channel(double llr, const QuantSpec& q, double scale = 1.0,
                      Rounding rounding = Rounding::half_away_from_zero);

/// Clamps the magnitude to `limit`, keeping the sign bit.
constexpr QLlr saturate(QLlr a, std::int32_t limit) {
  return a.magnitude() > limit ? QLlr::from_sign_magnitude(a.sign_bit(), limit) : a;
}

constexpr QLlr negate(QLlr a) { return QLlr::from_sign_magnitude(!a.sign_bit(), a.magnitude()); }

/// Saturating sign-magnitude addition. Equal magnitudes of opposite sign give +0.
constexpr QLlr sat_add(QLlr a, QLlr b, std::int32_t limit) {
  if (a.sign_bit() == b.sign_bit()) {
    const std::int32_t m = a.magnitude() + b.magnitude();
    return QLlr::from_sign_magnitude(a.sign_bit(), m > limit ? limit : m);
  }
  if (a.magnitude() > b.magnitude())
    return QLlr::from_sign_magnitude(a.sign_bit(), a.magnitude() - b.magnitude());
  if (b.magnitude() > a.magnitude())
    return QLlr::from_sign_magnitude(b.sign_bit(), b.magnitude() - a.magnitude());
  return QLlr{};
}

inline QLlr sat_add(QLlr a, QLlr b, const QuantSpec& q) { return sat_add(a, b, q.internal_limit()); }

constexpr std::uint8_t hard_bit(QLlr a) { return a.sign_bit() ? 1 : 0; }

}  // namespace polar
