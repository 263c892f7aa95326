// Reference successive-cancellation decoder. It walks the complete code tree
// down to single-bit leaves and serves as the correctness oracle for the
// pruned decoders.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "polar/codespec.hpp"
#include "polar/encoder.hpp"
#include "polar/llr_domain.hpp"

namespace polar {

template <typename D>
void f_op(const D& d, std::span<const typename D::value_type> alpha, std::span<typename D::value_type> out) {
  const std::size_t m = alpha.size() / 2;
  for (std::size_t i = 0; i < m; ++i) out[i] = d.f(alpha[i], alpha[i + m]);
}

template <typename D>
void g_op(const D& d, std::span<const typename D::value_type> alpha, std::span<const std::uint8_t> beta_l,
          std::span<typename D::value_type> out) {
  const std::size_t m = alpha.size() / 2;
  for (std::size_t i = 0; i < m; ++i) out[i] = d.g(alpha[i], alpha[i + m], beta_l[i]);
}

/// out[i] = l[i] ^ r[i] for the first half, r[i - m] for the second.
inline void combine_op(std::span<const std::uint8_t> beta_l, std::span<const std::uint8_t> beta_r,
                       std::span<std::uint8_t> out) {
  const std::size_t m = beta_r.size();
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = beta_l[i] ^ beta_r[i];
    out[i + m] = beta_r[i];
  }
}

template <typename D>
LlrVec<typename D::value_type> f_op(const D& d, const LlrVec<typename D::value_type>& alpha) {
  if (alpha.size() % 2) throw std::invalid_argument("f_op needs an even-length input");
  LlrVec<typename D::value_type> out(alpha.size() / 2);
  f_op<D>(d, alpha, out);
  return out;
}

template <typename D>
LlrVec<typename D::value_type> g_op(const D& d, const LlrVec<typename D::value_type>& alpha, const BitVec& beta_l) {
  if (alpha.size() != 2 * beta_l.size()) throw std::invalid_argument("g_op length mismatch");
  LlrVec<typename D::value_type> out(beta_l.size());
  g_op<D>(d, alpha, beta_l, out);
  return out;
}

inline BitVec combine_op(const BitVec& beta_l, const BitVec& beta_r) {
  if (beta_l.size() != beta_r.size()) throw std::invalid_argument("combine_op length mismatch");
  BitVec out(2 * beta_r.size());
  combine_op(std::span<const std::uint8_t>(beta_l), std::span<const std::uint8_t>(beta_r), std::span<std::uint8_t>(out));
  return out;
}

/// Reusable SC decoder with preallocated per-level scratch.
template <typename D>
class ScDecoder {
 public:
  using T = typename D::value_type;

  ScDecoder(const CodeSpec& spec, D domain) : spec_(spec), d_(std::move(domain)) {
    const unsigned m = log2_exact(spec_.n());
    alpha_.resize(m + 1);
    for (unsigned lvl = 0; lvl <= m; ++lvl) alpha_[lvl].resize(spec_.n() >> lvl);
    beta_.resize(spec_.n());
  }

  /// Returns the codeword estimate (systematic view).
  BitVec decode(std::span<const T> channel) {
    if (channel.size() != spec_.n())
      throw std::invalid_argument("channel has " + std::to_string(channel.size()) + " LLRs, expected " +
                                  std::to_string(spec_.n()));
    std::copy(channel.begin(), channel.end(), alpha_[0].begin());
    node(0, 0);
    return beta_;
  }

 private:
  // Decodes the node at tree level `lvl` whose span starts at `offset`;
  // its input is alpha_[lvl], its estimate lands in beta_[offset, +len).
  void node(unsigned lvl, std::size_t offset) {
    const std::size_t len = spec_.n() >> lvl;
    if (len == 1) {
      beta_[offset] = spec_.is_frozen(offset) ? 0 : d_.hard(alpha_[lvl][0]);
      return;
    }
    const std::size_t h = len / 2;
    std::span<const T> a(alpha_[lvl].data(), len);
    std::span<T> child(alpha_[lvl + 1].data(), h);
    f_op<D>(d_, a, child);
    node(lvl + 1, offset);
    g_op<D>(d_, a, std::span<const std::uint8_t>(beta_.data() + offset, h), child);
    node(lvl + 1, offset + h);
    for (std::size_t i = 0; i < h; ++i) beta_[offset + i] ^= beta_[offset + h + i];
  }

  CodeSpec spec_;
  D d_;
  std::vector<LlrVec<T>> alpha_;
  BitVec beta_;
};

template <typename D>
BitVec sc_decode(const CodeSpec& spec, std::span<const typename D::value_type> channel, const D& d) {
  ScDecoder<D> dec(spec, d);
  return dec.decode(channel);
}

inline BitVec sc_decode(const CodeSpec& spec, const std::vector<double>& channel) {
  return sc_decode<FloatDomain>(spec, channel, FloatDomain{});
}

inline BitVec sc_decode(const CodeSpec& spec, const std::vector<QLlr>& channel, const QuantSpec& q) {
  return sc_decode<FixedDomain>(spec, channel, FixedDomain{q});
}

}  // namespace polar
