// Arithmetic domains shared by the SC reference, the Fast-SSC kernels and the
// pipeline simulator. Both domains carry a sign bit through zero magnitudes
// (IEEE signed zero for doubles, sign-magnitude QLlr for fixed point) so that
// every specialized node kernel reproduces SC decisions exactly.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "polar/quant.hpp"

namespace polar {

template <typename T>
using LlrVec = std::vector<T>;

struct FloatDomain {
  using value_type = double;

  /// Min-sum F: sign(a)^sign(b) times min(|a|, |b|).
  value_type f(value_type a, value_type b) const {
    const double m = std::fmin(std::fabs(a), std::fabs(b));
    return std::signbit(a) != std::signbit(b) ? -m : m;
  }
  /// G: b + a when the left estimate is 0, b - a otherwise.
  value_type g(value_type a, value_type b, std::uint8_t beta) const { return beta ? b - a : b + a; }
  std::uint8_t hard(value_type a) const { return std::signbit(a) ? 1 : 0; }
  double magnitude(value_type a) const { return std::fabs(a); }
};

class FixedDomain {
 public:
  using value_type = QLlr;

  explicit FixedDomain(const QuantSpec& q) : q_(q), limit_(q.internal_limit()) {}

  value_type f(value_type a, value_type b) const {
    const auto m = a.magnitude() < b.magnitude() ? a.magnitude() : b.magnitude();
    return QLlr::from_sign_magnitude(a.sign_bit() != b.sign_bit(), m);
  }
  value_type g(value_type a, value_type b, std::uint8_t beta) const {
    return sat_add(b, beta ? negate(a) : a, limit_);
  }
  std::uint8_t hard(value_type a) const { return hard_bit(a); }
  std::int32_t magnitude(value_type a) const { return a.magnitude(); }

  const QuantSpec& quant() const { return q_; }

 private:
  QuantSpec q_;
  std::int32_t limit_;
};

inline LlrVec<QLlr> quantize_frame(const std::vector<double>& llr, const QuantSpec& q, double scale = 1.0,
                                   Rounding rounding = Rounding::half_away_from_zero) {
  LlrVec<QLlr> out;
  out.reserve(llr.size());
  for (double v : llr) out.push_back(quantize_channel(v, q, scale, rounding));
  return out;
}

}  // namespace polar
