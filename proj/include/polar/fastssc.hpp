// Fast-SSC: pruned decoder tree plus one-shot kernels for Rate-0, Rate-1,
// repetition, SPC and RepSPC constituent codes.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/codespec.hpp"
#include "polar/encoder.hpp"
#include "polar/llr_domain.hpp"
#include "polar/sc_ref.hpp"

namespace polar {

enum class NodeKind { rate0, rate1, rep, spc, repspc, rate_r };

std::string to_string(NodeKind k);

struct NodeConstraints {
  std::size_t max_rep = 8;
  std::size_t max_spc = 4;
  bool enable_repspc = false;

  void validate() const;
};

struct TreeNode {
  NodeKind kind;
  std::size_t offset;
  std::size_t length;
  int left = -1;
  int right = -1;
  int parent = -1;
  unsigned level = 0;  // depth below the root
};

/// Nodes are stored in pre-order; node 0 is the root.
class DecoderTree {
 public:
  static DecoderTree build(const CodeSpec& spec, const NodeConstraints& c);

  const CodeSpec& spec() const { return spec_; }
  const NodeConstraints& constraints() const { return constraints_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  int root() const { return 0; }

  /// Node whose span is exactly [offset, offset + length), or -1.
  int find_node(std::size_t offset, std::size_t length) const;
  /// Leaf ids in decoding order.
  std::vector<int> leaves() const;
  std::size_t count(NodeKind k) const;

  /// Tree restricted to the subtree at `id`, rebased to offset 0.
  DecoderTree subtree(int id) const;

  std::string to_dot() const;

 private:
  DecoderTree(CodeSpec spec, NodeConstraints c) : spec_(std::move(spec)), constraints_(c) {}
  int grow(std::size_t offset, std::size_t length, int parent, unsigned level);

  CodeSpec spec_;
  NodeConstraints constraints_;
  std::vector<TreeNode> nodes_;
};

/// Kind a span would get as a leaf under `c`, or rate_r.
NodeKind classify_span(const CodeSpec& spec, std::size_t offset, std::size_t length, const NodeConstraints& c);

// Leaf kernels. Each writes len bits to `out`; `scratch` must hold at least
// len values where noted.

inline void decode_rate0(std::span<std::uint8_t> out) { std::fill(out.begin(), out.end(), std::uint8_t{0}); }

inline BitVec decode_rate0(std::size_t len) { return BitVec(len, 0); }

template <typename D>
void decode_rate1(const D& d, std::span<const typename D::value_type> alpha, std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = d.hard(alpha[i]);
}

/// Pairwise adder tree in SC's pairing order, then a sign decision.
template <typename D>
void decode_rep(const D& d, std::span<const typename D::value_type> alpha, std::span<std::uint8_t> out,
                std::span<typename D::value_type> scratch) {
  std::size_t m = alpha.size();
  std::copy(alpha.begin(), alpha.end(), scratch.begin());
  while (m > 1) {
    m /= 2;
    for (std::size_t i = 0; i < m; ++i) scratch[i] = d.g(scratch[i], scratch[i + m], 0);
  }
  std::fill(out.begin(), out.end(), d.hard(scratch[0]));
}

namespace detail {

// Index SC would flip in an SPC node with odd parity. Every level keeps the
// pair that wins the F minimum, so the chosen bit has minimum magnitude.
template <typename D>
std::size_t spc_flip_index(const D& d, std::span<const typename D::value_type> alpha,
                           std::span<typename D::value_type> scratch) {
  const std::size_t m = alpha.size();
  if (m == 1) return 0;
  const std::size_t h = m / 2;
  auto fv = scratch.first(h);
  for (std::size_t i = 0; i < h; ++i) fv[i] = d.f(alpha[i], alpha[i + h]);
  const std::size_t j = spc_flip_index<D>(d, fv, scratch.subspan(h));
  const auto a = alpha[j];
  const auto b = alpha[j + h];
  const std::uint8_t beta_l = static_cast<std::uint8_t>(d.hard(a) ^ d.hard(b) ^ 1);
  const auto r = d.g(a, b, beta_l);
  return d.hard(r) != d.hard(b) ? j + h : j;
}

}  // namespace detail

/// Hard decisions, plus one flip of the least reliable bit when the parity is odd.
template <typename D>
void decode_spc(const D& d, std::span<const typename D::value_type> alpha, std::span<std::uint8_t> out,
                std::span<typename D::value_type> scratch) {
  std::uint8_t parity = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out[i] = d.hard(alpha[i]);
    parity ^= out[i];
  }
  if (parity) out[detail::spc_flip_index<D>(d, alpha, scratch)] ^= 1;
}

/// Length-8 node: repetition code on the left half, SPC on the right.
/// Scratch needs 12 values.
template <typename D>
void decode_repspc(const D& d, std::span<const typename D::value_type> alpha, std::span<std::uint8_t> out,
                   std::span<typename D::value_type> scratch) {
  auto child = scratch.first(4);
  auto work = scratch.subspan(4);
  f_op<D>(d, alpha, child);
  decode_rep<D>(d, child, out.first(4), work);
  g_op<D>(d, alpha, out.first(4), child);
  decode_spc<D>(d, child, out.subspan(4, 4), work);
  for (std::size_t i = 0; i < 4; ++i) out[i] ^= out[i + 4];
}

// Vector conveniences.
template <typename D>
BitVec decode_rate1(const D& d, const LlrVec<typename D::value_type>& alpha) {
  BitVec out(alpha.size());
  decode_rate1<D>(d, alpha, out);
  return out;
}

template <typename D>
BitVec decode_rep(const D& d, const LlrVec<typename D::value_type>& alpha) {
  if (!is_power_of_two(alpha.size())) throw std::invalid_argument("repetition node length must be a power of two");
  BitVec out(alpha.size());
  LlrVec<typename D::value_type> scratch(alpha.size());
  decode_rep<D>(d, alpha, out, scratch);
  return out;
}

template <typename D>
BitVec decode_spc(const D& d, const LlrVec<typename D::value_type>& alpha) {
  if (!is_power_of_two(alpha.size())) throw std::invalid_argument("SPC node length must be a power of two");
  BitVec out(alpha.size());
  LlrVec<typename D::value_type> scratch(alpha.size());
  decode_spc<D>(d, alpha, out, scratch);
  return out;
}

template <typename D>
BitVec decode_repspc(const D& d, const LlrVec<typename D::value_type>& alpha) {
  if (alpha.size() != 8) throw std::invalid_argument("RepSPC node length must be 8");
  BitVec out(8);
  LlrVec<typename D::value_type> scratch(12);
  decode_repspc<D>(d, alpha, out, scratch);
  return out;
}

/// Reusable decoder over a fixed tree. Not thread-safe; use one per thread.
template <typename D>
class FastSscDecoder {
 public:
  using T = typename D::value_type;

  FastSscDecoder(const DecoderTree& tree, D domain) : tree_(&tree), d_(std::move(domain)) {
    const std::size_t n = tree.spec().n();
    const unsigned m = log2_exact(n);
    alpha_.resize(m + 1);
    for (unsigned lvl = 0; lvl <= m; ++lvl) alpha_[lvl].resize(n >> lvl);
    beta_.resize(n);
    scratch_.resize(std::max<std::size_t>(n, 12));
  }

  BitVec decode(std::span<const T> channel) { return decode_node(tree_->root(), channel); }

  /// Decodes the constituent code at node `id`; `alpha` has the node's length.
  BitVec decode_node(int id, std::span<const T> alpha) {
    const TreeNode& nd = tree_->node(id);
    if (alpha.size() != nd.length)
      throw std::invalid_argument("input has " + std::to_string(alpha.size()) + " LLRs, node expects " +
                                  std::to_string(nd.length));
    std::copy(alpha.begin(), alpha.end(), alpha_[nd.level].begin());
    visit(id);
    return BitVec(beta_.begin() + static_cast<std::ptrdiff_t>(nd.offset),
                  beta_.begin() + static_cast<std::ptrdiff_t>(nd.offset + nd.length));
  }

 private:
  void visit(int id) {
    const TreeNode& nd = tree_->node(id);
    std::span<const T> a(alpha_[nd.level].data(), nd.length);
    std::span<std::uint8_t> out(beta_.data() + nd.offset, nd.length);
    switch (nd.kind) {
      case NodeKind::rate0: decode_rate0(out); return;
      case NodeKind::rate1: decode_rate1<D>(d_, a, out); return;
      case NodeKind::rep: decode_rep<D>(d_, a, out, scratch_); return;
      case NodeKind::spc: decode_spc<D>(d_, a, out, scratch_); return;
      case NodeKind::repspc: decode_repspc<D>(d_, a, out, scratch_); return;
      case NodeKind::rate_r: break;
    }
    const std::size_t h = nd.length / 2;
    std::span<T> child(alpha_[nd.level + 1].data(), h);
    const TreeNode& l = tree_->node(nd.left);
    const TreeNode& r = tree_->node(nd.right);
    if (l.kind == NodeKind::rate0) {
      // G0R then C0R: the left estimate is known to be zero.
      for (std::size_t i = 0; i < h; ++i) child[i] = d_.g(a[i], a[i + h], 0);
      visit(nd.right);
      std::copy(out.begin() + static_cast<std::ptrdiff_t>(h), out.end(), out.begin());
      return;
    }
    f_op<D>(d_, a, child);
    visit(nd.left);
    if (r.kind == NodeKind::rate0) {
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(h), out.end(), std::uint8_t{0});
      return;
    }
    g_op<D>(d_, a, out.first(h), child);
    visit(nd.right);
    for (std::size_t i = 0; i < h; ++i) out[i] ^= out[i + h];
  }

  const DecoderTree* tree_;
  D d_;
  std::vector<LlrVec<T>> alpha_;
  BitVec beta_;
  LlrVec<T> scratch_;
};

template <typename D>
BitVec fastssc_decode(const DecoderTree& tree, std::span<const typename D::value_type> channel, const D& d) {
  FastSscDecoder<D> dec(tree, d);
  return dec.decode(channel);
}

inline BitVec fastssc_decode(const DecoderTree& tree, const std::vector<double>& channel) {
  return fastssc_decode<FloatDomain>(tree, channel, FloatDomain{});
}

inline BitVec fastssc_decode(const DecoderTree& tree, const std::vector<QLlr>& channel, const QuantSpec& q) {
  return fastssc_decode<FixedDomain>(tree, channel, FixedDomain{q});
}

}  // namespace polar
