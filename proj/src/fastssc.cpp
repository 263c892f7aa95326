#include "polar/fastssc.hpp"

#include <sstream>

namespace polar {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::rate0: return "RATE0";
    case NodeKind::rate1: return "RATE1";
    case NodeKind::rep: return "REP";
    case NodeKind::spc: return "SPC";
    case NodeKind::repspc: return "REPSPC";
    case NodeKind::rate_r: return "RATE_R";
  }
  return "?";
}

void NodeConstraints::validate() const {
  if (!is_power_of_two(max_rep) || max_rep < 2)
    throw std::invalid_argument("max_rep must be a power of two >= 2, got " + std::to_string(max_rep));
  if (!is_power_of_two(max_spc) || max_spc < 2)
    throw std::invalid_argument("max_spc must be a power of two >= 2, got " + std::to_string(max_spc));
}

namespace {

bool rep_pattern(const CodeSpec& s, std::size_t off, std::size_t len) {
  return len >= 2 && s.info_count(off, len) == 1 && !s.is_frozen(off + len - 1);
}

bool spc_pattern(const CodeSpec& s, std::size_t off, std::size_t len) {
  return len >= 2 && s.info_count(off, len) == len - 1 && s.is_frozen(off);
}

}  // namespace

NodeKind classify_span(const CodeSpec& spec, std::size_t offset, std::size_t length, const NodeConstraints& c) {
  const std::size_t k = spec.info_count(offset, length);
  if (k == 0) return NodeKind::rate0;
  if (k == length) return NodeKind::rate1;
  if (length <= c.max_rep && rep_pattern(spec, offset, length)) return NodeKind::rep;
  if (length <= c.max_spc && spc_pattern(spec, offset, length)) return NodeKind::spc;
  if (c.enable_repspc && length == 8 && rep_pattern(spec, offset, 4) && spc_pattern(spec, offset + 4, 4))
    return NodeKind::repspc;
  return NodeKind::rate_r;
}

DecoderTree DecoderTree::build(const CodeSpec& spec, const NodeConstraints& c) {
  c.validate();
  DecoderTree t(spec, c);
  t.grow(0, spec.n(), -1, 0);
  return t;
}

int DecoderTree::grow(std::size_t offset, std::size_t length, int parent, unsigned level) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({classify_span(spec_, offset, length, constraints_), offset, length, -1, -1, parent, level});
  if (nodes_.back().kind == NodeKind::rate_r) {
    const int l = grow(offset, length / 2, id, level + 1);
    const int r = grow(offset + length / 2, length / 2, id, level + 1);
    nodes_[static_cast<std::size_t>(id)].left = l;
    nodes_[static_cast<std::size_t>(id)].right = r;
  }
  return id;
}

int DecoderTree::find_node(std::size_t offset, std::size_t length) const {
  int id = root();
  while (id >= 0) {
    const TreeNode& nd = node(id);
    if (nd.offset == offset && nd.length == length) return id;
    if (nd.kind != NodeKind::rate_r || length >= nd.length || offset < nd.offset ||
        offset + length > nd.offset + nd.length)
      return -1;
    id = offset < nd.offset + nd.length / 2 ? nd.left : nd.right;
  }
  return -1;
}

std::vector<int> DecoderTree::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind != NodeKind::rate_r) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t DecoderTree::count(NodeKind k) const {
  std::size_t c = 0;
  for (const auto& nd : nodes_) c += nd.kind == k ? 1 : 0;
  return c;
}

DecoderTree DecoderTree::subtree(int id) const {
  const TreeNode& nd = node(id);
  return build(spec_.sub_code(nd.offset, nd.length), constraints_);
}

std::string DecoderTree::to_dot() const {
  std::ostringstream os;
  os << "digraph fastssc {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& nd = nodes_[i];
    os << "  n" << i << " [label=\"" << to_string(nd.kind) << "\\n[" << nd.offset << ", " << nd.offset + nd.length
       << ")\"";
    if (nd.kind == NodeKind::rate0) os << ", style=filled, fillcolor=white";
    if (nd.kind == NodeKind::rate1) os << ", style=filled, fillcolor=gray30, fontcolor=white";
    os << "];\n";
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& nd = nodes_[i];
    if (nd.left >= 0) os << "  n" << i << " -> n" << nd.left << ";\n  n" << i << " -> n" << nd.right << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace polar
