#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polar/codespec.hpp"

namespace polar {

using BitVec = std::vector<std::uint8_t>;

/// In-place butterfly x[j] ^= x[j + h] over all stages (natural order).
/// The transform is its own inverse over GF(2).
void polar_transform_inplace(std::span<std::uint8_t> bits);
BitVec polar_transform(BitVec u);

BitVec encode_nonsystematic(const CodeSpec& spec, std::span<const std::uint8_t> info);

/// Two-pass systematic encoder: transform, clear frozen positions, transform.
/// Throws std::domain_error if the mask does not admit this encoder (the
/// result would not carry `info` on the information positions).
BitVec encode_systematic(const CodeSpec& spec, std::span<const std::uint8_t> info);

/// Info bits read back from a systematic codeword.
BitVec extract_info(const CodeSpec& spec, std::span<const std::uint8_t> codeword);

/// True when transform(x) is zero on every frozen position.
bool is_codeword(const CodeSpec& spec, std::span<const std::uint8_t> x);

std::string to_bit_string(std::span<const std::uint8_t> bits);
BitVec parse_bit_string(const std::string& text);
std::string to_hex(std::span<const std::uint8_t> bits);
BitVec parse_hex(const std::string& text, std::size_t nbits);

}  // namespace polar
