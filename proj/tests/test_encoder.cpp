#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "polar/catalog.hpp"
#include "polar/encoder.hpp"

using namespace polar;

TEST_CASE("transform") {
  CHECK(polar_transform(BitVec(16, 0)) == BitVec(16, 0));
  BitVec last(8, 0);
  last[7] = 1;
  CHECK(polar_transform(last) == BitVec(8, 1));

  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    BitVec u(64);
    for (auto& b : u) b = rng() & 1u;
    CHECK(polar_transform(polar_transform(u)) == u);
    CHECK(polar_transform(u) == oracle::encode(u));
  }
}

TEST_CASE("non-systematic") {
  const auto c16 = catalog::code_16_12();
  CHECK(encode_nonsystematic(c16, BitVec(12, 0)) == BitVec(16, 0));
  CHECK(encode_nonsystematic(catalog::code_8_4(), BitVec{0, 0, 0, 1}) == BitVec(8, 1));
  CHECK_THROWS_AS(encode_nonsystematic(c16, BitVec(11, 0)), std::invalid_argument);
}

TEST_CASE("systematic") {
  const auto c84 = catalog::code_8_4();
  CHECK(encode_systematic(c84, BitVec(4, 0)) == BitVec(8, 0));

  const auto x = encode_systematic(c84, BitVec{1, 1, 1, 1});
  CHECK(x[3] == 1);
  CHECK(x[5] == 1);
  CHECK(x[6] == 1);
  CHECK(x[7] == 1);
  // transform(x) vanishes on the frozen set, checked with the oracle encoder
  const auto u = oracle::encode(x);
  for (auto i : c84.frozen_indices()) CHECK(u[i] == 0);

  std::mt19937 rng(5);
  for (const auto& spec : {catalog::code_16_12(), catalog::code_1024_512(), catalog::code_2048_1365()}) {
    for (int t = 0; t < 20; ++t) {
      BitVec info(spec.k());
      for (auto& b : info) b = rng() & 1u;
      const auto cw = encode_systematic(spec, info);
      CHECK(extract_info(spec, cw) == info);
      CHECK(is_codeword(spec, cw));
    }
  }
}

TEST_CASE("every codeword of small codes") {
  const auto c16 = catalog::code_16_12();
  std::size_t seen = 0;
  for (std::uint32_t w = 0; w < (1u << 12); ++w) {
    BitVec info(12);
    for (std::size_t i = 0; i < 12; ++i) info[i] = (w >> i) & 1u;
    const auto x = encode_systematic(c16, info);
    seen += is_codeword(c16, x) && extract_info(c16, x) == info;
  }
  CHECK(seen == 4096);
}

TEST_CASE("text formats") {
  const BitVec b{1, 0, 1, 1, 0, 0, 0, 1, 1};
  CHECK(to_bit_string(b) == "101100011");
  CHECK(parse_bit_string("101100011") == b);
  CHECK(parse_hex(to_hex(b), b.size()) == b);
  CHECK_THROWS(parse_bit_string("10x"));
}
