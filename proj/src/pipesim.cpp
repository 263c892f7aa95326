#include "polar/pipesim.hpp"

#include <ostream>

namespace polar {

ModeTable build_mode_table(const PipelinePlan& plan, const std::vector<int>& roots) {
  const auto& s = plan.schedule;
  const auto& tree = s.tree;
  std::vector<int> ids{tree.root()};
  for (int r : roots) {
    if (r < 0 || static_cast<std::size_t>(r) >= tree.nodes().size())
      throw std::invalid_argument("mode root " + std::to_string(r) + " is not a node of the decoder tree");
    if (r != tree.root()) ids.push_back(r);
  }
  ModeTable t;
  for (int id : ids) {
    const auto& nd = tree.node(id);
    const auto& ns = s.nodes[static_cast<std::size_t>(id)];
    if (ns.out_value < 0)
      throw std::invalid_argument("mode root [" + std::to_string(nd.offset) + ", +" + std::to_string(nd.length) +
                                  ") is a Rate-0 node with nothing to decode");
    const std::size_t k = tree.spec().info_count(nd.offset, nd.length);
    ModeEntry e;
    e.code_id = "(" + std::to_string(nd.length) + "," + std::to_string(k) + ")";
    e.node = id;
    e.offset = nd.offset;
    e.length = nd.length;
    e.k = k;
    e.entry_stage = ns.s_first;
    e.exit_stage = ns.s_end;
    e.latency = s.cost.load + (ns.s_end - ns.s_first) + s.cost.offload;
    e.i_start = (s.cost.load + ns.s_first) % plan.interval;
    t.modes.push_back(e);
  }
  return t;
}

std::vector<int> resolve_modes(const DecoderTree& tree, const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  std::vector<int> ids;
  for (const auto& [off, len] : spans) {
    const int id = tree.find_node(off, len);
    if (id < 0)
      throw std::invalid_argument("span [" + std::to_string(off) + ", +" + std::to_string(len) +
                                  ") is not a node of the pruned decoder tree");
    ids.push_back(id);
  }
  return ids;
}

CostReport throughput_report(const PipelinePlan& plan, const ModeTable& table, std::size_t mode, double f_hz,
                             const AreaModel& area) {
  if (mode >= table.modes.size()) throw std::out_of_range("mode " + std::to_string(mode) + " does not exist");
  if (!(f_hz > 0.0)) throw std::invalid_argument("clock frequency must be positive");
  const auto& m = table.modes[mode];
  CostReport r;
  r.n = m.length;
  r.k = m.k;
  r.interval = plan.interval;
  r.f_hz = f_hz;
  r.coded_throughput_bps = static_cast<double>(m.length) * f_hz / static_cast<double>(plan.interval);
  r.info_throughput_bps = r.coded_throughput_bps * static_cast<double>(m.k) / static_cast<double>(m.length);
  r.latency_cycles = m.latency;
  r.decode_cycles = m.exit_stage - m.entry_stage;
  r.latency_s = static_cast<double>(m.latency) / f_hz;
  r.bus_width = m.length;
  r.logic_area_mm2 = area.logic_mm2(plan.schedule.tree.spec().n());
  r.memory_area_mm2 = area.memory_mm2(plan.schedule.tree.spec().n());
  r.register_bits = plan.register_bits();
  r.sram_bits = plan.sram_bits();
  r.imax = compute_imax(plan.schedule);
  return r;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "cycle,phase,injected_frame,emitted_frame\n";
  for (const auto& r : rows) {
    os << r.cycle << ',' << r.phase << ',';
    if (r.injected >= 0) os << r.injected;
    os << ',';
    if (r.emitted >= 0) os << r.emitted;
    os << '\n';
  }
}

}  // namespace polar
