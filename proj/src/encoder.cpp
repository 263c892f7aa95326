#include "polar/encoder.hpp"

#include <stdexcept>

namespace polar {

void polar_transform_inplace(std::span<std::uint8_t> x) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("transform length " + std::to_string(n) + " is not a power of two");
  for (std::size_t h = 1; h < n; h *= 2)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) x[j] ^= x[j + h];
}

BitVec polar_transform(BitVec u) {
  polar_transform_inplace(u);
  return u;
}

namespace {

BitVec place_info(const CodeSpec& spec, std::span<const std::uint8_t> info) {
  if (info.size() != spec.k())
    throw std::invalid_argument("expected " + std::to_string(spec.k()) + " info bits, got " +
                                std::to_string(info.size()));
  BitVec u(spec.n(), 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (!spec.is_frozen(i)) u[i] = info[next++] & 1;
  return u;
}

}  // namespace

BitVec encode_nonsystematic(const CodeSpec& spec, std::span<const std::uint8_t> info) {
  return polar_transform(place_info(spec, info));
}

BitVec encode_systematic(const CodeSpec& spec, std::span<const std::uint8_t> info) {
  BitVec v = place_info(spec, info);
  polar_transform_inplace(v);
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (spec.is_frozen(i)) v[i] = 0;
  polar_transform_inplace(v);
  std::size_t next = 0;
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (!spec.is_frozen(i) && v[i] != (info[next++] & 1))
      throw std::domain_error("frozen set of " + spec.id() + " does not admit two-pass systematic encoding");
  return v;
}

BitVec extract_info(const CodeSpec& spec, std::span<const std::uint8_t> codeword) {
  if (codeword.size() != spec.n()) throw std::invalid_argument("codeword length mismatch");
  BitVec out;
  out.reserve(spec.k());
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (!spec.is_frozen(i)) out.push_back(codeword[i]);
  return out;
}

bool is_codeword(const CodeSpec& spec, std::span<const std::uint8_t> x) {
  if (x.size() != spec.n()) return false;
  BitVec u(x.begin(), x.end());
  polar_transform_inplace(u);
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (spec.is_frozen(i) && u[i]) return false;
  return true;
}

std::string to_bit_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitVec parse_bit_string(const std::string& text) {
  BitVec out;
  for (char c : text) {
    if (c == '0' || c == '1')
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != ',')
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in bit string");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bits) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nib = 0;
    for (std::size_t j = 0; j < 4; ++j) nib = (nib << 1) | (i + j < bits.size() ? (bits[i + j] & 1u) : 0u);
    s.push_back(digits[nib]);
  }
  return s;
}

BitVec parse_hex(const std::string& text, std::size_t nbits) {
  BitVec out;
  for (char c : text) {
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      v = static_cast<unsigned>(c - 'A' + 10);
    else
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in hex string");
    for (int j = 3; j >= 0; --j) out.push_back(static_cast<std::uint8_t>((v >> j) & 1u));
  }
  if (out.size() < nbits) throw std::invalid_argument("hex string too short");
  out.resize(nbits);
  return out;
}

}  // namespace polar
