#include "polar/quant.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polar {

QuantSpec QuantSpec::parse(std::string_view text) {
  std::vector<int> parts;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  while (p < end) {
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) throw std::invalid_argument("malformed quantization '" + std::string(text) + "'");
    parts.push_back(v);
    p = next;
    if (p < end) {
      if (*p != '.') throw std::invalid_argument("malformed quantization '" + std::string(text) + "'");
      ++p;
      if (p == end) throw std::invalid_argument("malformed quantization '" + std::string(text) + "'");
    }
  }
  if (parts.size() != 3) throw std::invalid_argument("quantization needs Qi.Qc.Qf, got '" + std::string(text) + "'");
  QuantSpec q{parts[0], parts[1], parts[2]};
  q.validate();
  return q;
}

std::string QuantSpec::str() const {
  return std::to_string(qi) + "." + std::to_string(qc) + "." + std::to_string(qf);
}

void QuantSpec::validate() const {
  if (qc < 2 || qi < qc) throw std::invalid_argument("quantization requires qi >= qc >= 2: " + str());
  if (qf < 0 || qf >= qc) throw std::invalid_argument("quantization requires 0 <= qf < qc: " + str());
  if (qi > 30) throw std::invalid_argument("quantization qi too large: " + str());
}

QLlr quantize_channel(double llr, const QuantSpec& q, double scale, Rounding rounding) {
  const double x = llr * scale * std::ldexp(1.0, q.qf);
  const double r = rounding == Rounding::half_away_from_zero ? std::round(x) : std::trunc(x);
  const double lim = static_cast<double>(q.channel_limit());
  if (std::isnan(r)) return QLlr{};
  const double clamped = r > lim ? lim : (r < -lim ? -lim : r);
  return QLlr{static_cast<std::int32_t>(clamped)};
}

}  // namespace polar
