// Cycle-accurate simulation of an unrolled pipeline plan.
//
// Each frame moves through the schedule in virtual time vt = cycle -
// injection + entry stage. An op at time t evaluates in cycles where
// vt = t (mod I); a chain produced at q latches at the end of cycles where
// vt = q (mod I). With I > 1 this is the enable-signal scheme: every
// register latches once per I cycles, on its own phase.
//
// Every slot carries the id of the frame it belongs to, so reads that mix
// frames are counted as hazards instead of passing silently.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/fastssc.hpp"
#include "polar/llr_domain.hpp"
#include "polar/unroll.hpp"

namespace polar {

struct ModeEntry {
  std::string code_id;  // "(n,k)"
  int node;             // subtree root in the plan's tree
  std::size_t offset;
  std::size_t length;
  std::size_t k;
  long entry_stage;  // stage of the subtree's first op
  long exit_stage;   // stage after its last op
  long latency;      // cycles from injection to estimate
  long i_start;      // phase of the first op, (load + entry_stage) mod I
};

struct ModeTable {
  std::vector<ModeEntry> modes;  // modes[0] is the master code
};

/// Mode 0 is always the master; `roots` lists further subtree roots.
ModeTable build_mode_table(const PipelinePlan& plan, const std::vector<int>& roots);

/// Resolves (offset, length) spans to node ids; throws when a span is not a node.
std::vector<int> resolve_modes(const DecoderTree& tree, const std::vector<std::pair<std::size_t, std::size_t>>& spans);

CostReport throughput_report(const PipelinePlan& plan, const ModeTable& table, std::size_t mode, double f_hz,
                             const AreaModel& area = {});

struct TraceRow {
  long cycle;
  long phase;
  int injected;  // frame id, -1 if none
  int emitted;
};

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);

template <typename D>
class Pipeline {
 public:
  using T = typename D::value_type;

  struct StepOutput {
    bool sampled = false;  // the offload register was read this cycle
    int tag = -1;          // frame id, -1 for a bubble
    BitVec bits;
  };

  Pipeline(const PipelinePlan& plan, const std::vector<int>& mode_roots, D domain)
      : plan_(plan), table_(build_mode_table(plan, mode_roots)), d_(std::move(domain)) {
    const auto& s = plan_.schedule;
    const long I = plan_.interval;
    for (const auto& c : plan_.chains) {
      const auto& v = s.values[static_cast<std::size_t>(c.value)];
      add_chain(v.q, c.effective, c.storage == Storage::sram ? c.sram_depth : 0, v.kind != ValueKind::bits, v.length);
    }
    scratch_.resize(std::max<std::size_t>(s.tree.spec().n(), 12));
    for (std::size_t m = 0; m < table_.modes.size(); ++m) {
      const auto& me = table_.modes[m];
      const auto& ns = s.nodes[static_cast<std::size_t>(me.node)];
      Route r;
      r.s_first = ns.s_first;
      r.latency = me.latency;
      r.t_out = s.cost.load + ns.s_end + s.cost.offload;
      const int in_value = ns.in_value;
      const int out_value = ns.out_value;
      if (m == 0) {
        r.port_chain = 0;
        r.out_chain = s.output_value;
      } else {
        const auto& iv = s.values[static_cast<std::size_t>(in_value)];
        const long l_in = iv.last_read - r.s_first;
        r.port_chain = add_chain(r.s_first, (l_in + I - 1) / I, 0, true, iv.length);
        const auto& ov = s.values[static_cast<std::size_t>(out_value)];
        const long l_out = r.t_out - ov.q;
        r.out_chain = add_chain(ov.q, (l_out + I - 1) / I, 0, false, ov.length);
      }
      r.out_tap = read_tap(r.t_out, chains_[static_cast<std::size_t>(r.out_chain)].q, I);
      std::vector<char> active(chains_.size(), 0);
      active[static_cast<std::size_t>(r.port_chain)] = 1;
      active[static_cast<std::size_t>(r.out_chain)] = 1;
      for (int o = ns.first_op; o <= ns.last_op; ++o) {
        const Op& op = s.ops[static_cast<std::size_t>(o)];
        SimOp so{op.kind, op.time, {}, {op.output}};
        for (int in : op.inputs) {
          const int ch = (m != 0 && in == in_value) ? r.port_chain : in;
          so.in.push_back({ch, read_tap(op.time, chains_[static_cast<std::size_t>(ch)].q, I)});
        }
        if (m != 0 && op.output == out_value) so.out.push_back(r.out_chain);
        for (int c : so.out) active[static_cast<std::size_t>(c)] = 1;
        r.ops.push_back(std::move(so));
      }
      for (std::size_t c = 0; c < active.size(); ++c)
        if (active[c]) r.chains.push_back(static_cast<int>(c));
      for (const auto& so : r.ops)
        for (const auto& src : so.in) check_tap(src);
      check_tap({r.out_chain, r.out_tap});
      routes_.push_back(std::move(r));
    }
    select_mode(0);
  }

  const ModeTable& modes() const { return table_; }
  const PipelinePlan& plan() const { return plan_; }
  std::size_t mode() const { return mode_; }
  long interval() const { return plan_.interval; }
  long cycle() const { return cycle_; }
  long hazards() const { return hazards_; }
  bool drained() const { return in_flight_ == 0; }

  /// Phase counter value for the current cycle.
  long phase() const { return vt() % plan_.interval; }
  /// True when a frame may be injected in the current cycle.
  bool injection_slot() const { return (cycle_ - c0_) % plan_.interval == 0; }

  /// Switches the routing multiplexers. The pipeline must be drained; the
  /// phase counter restarts so the next cycle is an injection slot.
  void select_mode(std::size_t m) {
    if (m >= routes_.size()) throw std::out_of_range("mode " + std::to_string(m) + " does not exist");
    if (!drained()) throw std::logic_error("cannot switch modes with frames in flight");
    mode_ = m;
    c0_ = cycle_;
    for (auto& ch : chains_) {
      ch.wire.tag = -1;
      for (auto& sl : ch.slots) sl.tag = -1;
    }
  }

  /// Advances one clock cycle. `input` (the mode's span of LLRs) is only
  /// accepted in an injection slot.
  StepOutput step(const std::span<const T>* input = nullptr, int tag = -1) {
    const Route& r = routes_[mode_];
    const long I = plan_.interval;
    const long ph = phase();
    auto& port = chains_[static_cast<std::size_t>(r.port_chain)];
    if (injection_slot()) {
      if (input) {
        if (input->size() != port.len)
          throw std::invalid_argument("frame has " + std::to_string(input->size()) + " LLRs, mode expects " +
                                      std::to_string(port.len));
        std::copy(input->begin(), input->end(), port.wire.llr.begin());
        port.wire.tag = tag;
        ++in_flight_;
      } else {
        port.wire.tag = -1;
      }
    } else if (input) {
      throw std::logic_error("injection outside the initiation-interval slot");
    }
    for (const auto& so : r.ops)
      if (so.time % I == ph) eval(so);
    StepOutput out;
    if (r.t_out % I == ph) {
      const Slot& sl = read(r.out_chain, r.out_tap);
      out.sampled = true;
      out.tag = sl.tag;
      out.bits = sl.bits;
      if (sl.tag >= 0) --in_flight_;
    }
    for (int c : r.chains) {
      auto& ch = chains_[static_cast<std::size_t>(c)];
      if (ch.q % I == ph) latch(ch);
    }
    ++cycle_;
    return out;
  }

 private:
  struct Slot {
    int tag = -1;
    LlrVec<T> llr;
    BitVec bits;
  };

  // Register chain or head register + SRAM. For SRAM chains slots holds
  // r0, mem[0..depth), dout.
  struct Chain {
    long q;
    long regs;
    long sram_depth;
    bool is_llr;
    std::size_t len;
    Slot wire;
    std::vector<Slot> slots;
    long raddr = 0;
  };

  struct Source {
    int chain;
    long tap;  // -1 = wire
  };

  struct SimOp {
    OpKind kind;
    long time;
    std::vector<Source> in;
    std::vector<int> out;
  };

  struct Route {
    std::vector<SimOp> ops;
    std::vector<int> chains;
    int port_chain = 0;
    int out_chain = 0;
    long out_tap = 0;
    long t_out = 0;
    long s_first = 0;
    long latency = 0;
  };

  long vt() const { return cycle_ - c0_ + routes_[mode_].s_first; }

  Slot make_slot(bool is_llr, std::size_t len) const {
    Slot s;
    if (is_llr)
      s.llr.assign(len, T{});
    else
      s.bits.assign(len, 0);
    return s;
  }

  int add_chain(long q, long regs, long sram_depth, bool is_llr, std::size_t len) {
    Chain ch{q, regs, sram_depth, is_llr, len, make_slot(is_llr, len), {}, 0};
    const long n_slots = sram_depth > 0 ? sram_depth + 2 : regs;
    ch.slots.assign(static_cast<std::size_t>(n_slots), make_slot(is_llr, len));
    chains_.push_back(std::move(ch));
    return static_cast<int>(chains_.size()) - 1;
  }

  void check_tap(const Source& s) const {
    const auto& ch = chains_[static_cast<std::size_t>(s.chain)];
    if (s.tap >= ch.regs) throw std::logic_error("schedule reads beyond the end of a register chain");
    if (ch.sram_depth > 0 && s.tap > 0 && s.tap != ch.regs - 1)
      throw std::logic_error("SRAM chain read at an intermediate tap");
  }

  const Slot& read(int chain, long tap) const {
    const auto& ch = chains_[static_cast<std::size_t>(chain)];
    if (tap < 0) return ch.wire;
    if (ch.sram_depth > 0) return tap == 0 ? ch.slots.front() : ch.slots.back();
    return ch.slots[static_cast<std::size_t>(tap)];
  }

  void latch(Chain& ch) {
    if (ch.slots.empty()) return;
    if (ch.sram_depth > 0) {
      // Write-first dual port, addresses count down, write = read + 1.
      const long dpt = ch.sram_depth;
      const long waddr = (ch.raddr + 1) % dpt;
      ch.slots[static_cast<std::size_t>(1 + waddr)] = ch.slots[0];
      ch.slots.back() = ch.slots[static_cast<std::size_t>(1 + ch.raddr)];
      ch.slots[0] = ch.wire;
      ch.raddr = (ch.raddr + dpt - 1) % dpt;
      return;
    }
    std::rotate(ch.slots.rbegin(), ch.slots.rbegin() + 1, ch.slots.rend());
    ch.slots[0] = ch.wire;
  }

  void eval(const SimOp& so) {
    const Slot& a = read(so.in[0].chain, so.in[0].tap);
    int tag = a.tag;
    for (std::size_t i = 1; i < so.in.size(); ++i)
      if (read(so.in[i].chain, so.in[i].tap).tag != tag) ++hazards_;
    Slot& o = chains_[static_cast<std::size_t>(so.out[0])].wire;
    o.tag = tag;
    const std::size_t n = a.llr.size();
    switch (so.kind) {
      case OpKind::f: f_op<D>(d_, a.llr, o.llr); break;
      case OpKind::g: g_op<D>(d_, a.llr, read(so.in[1].chain, so.in[1].tap).bits, o.llr); break;
      case OpKind::g0r:
        for (std::size_t i = 0; i < n / 2; ++i) o.llr[i] = d_.g(a.llr[i], a.llr[i + n / 2], 0);
        break;
      case OpKind::combine:
        if (so.in.size() == 2) {
          combine_op(std::span<const std::uint8_t>(a.bits), read(so.in[1].chain, so.in[1].tap).bits, o.bits);
        } else {
          std::copy(a.bits.begin(), a.bits.end(), o.bits.begin());
          std::fill(o.bits.begin() + static_cast<std::ptrdiff_t>(a.bits.size()), o.bits.end(), std::uint8_t{0});
        }
        break;
      case OpKind::c0r:
        std::copy(a.bits.begin(), a.bits.end(), o.bits.begin());
        std::copy(a.bits.begin(), a.bits.end(), o.bits.begin() + static_cast<std::ptrdiff_t>(a.bits.size()));
        break;
      case OpKind::rate1: decode_rate1<D>(d_, a.llr, o.bits); break;
      case OpKind::rep: decode_rep<D>(d_, a.llr, o.bits, scratch_); break;
      case OpKind::spc: decode_spc<D>(d_, a.llr, o.bits, scratch_); break;
      case OpKind::repspc: decode_repspc<D>(d_, a.llr, o.bits, scratch_); break;
    }
    for (std::size_t i = 1; i < so.out.size(); ++i) chains_[static_cast<std::size_t>(so.out[i])].wire = o;
  }

  PipelinePlan plan_;
  ModeTable table_;
  D d_;
  std::vector<Chain> chains_;
  std::vector<Route> routes_;
  LlrVec<T> scratch_;
  std::size_t mode_ = 0;
  long cycle_ = 0;
  long c0_ = 0;
  long hazards_ = 0;
  long in_flight_ = 0;
};

template <typename D>
Pipeline<D> build_pipeline(const PipelinePlan& plan, const std::vector<int>& mode_roots, D domain) {
  return Pipeline<D>(plan, mode_roots, std::move(domain));
}

struct StreamOutput {
  int frame;
  long inject_cycle;
  long emit_cycle;
  BitVec bits;
};

struct StreamResult {
  std::vector<StreamOutput> outputs;  // in emission order
  long hazards = 0;
  long cycles = 0;
  long late_or_early = 0;  // emissions not exactly `latency` after injection
  std::vector<TraceRow> trace;
};

/// Streams `frames` through `mode`, injecting one every I cycles, and runs
/// until every frame has been emitted.
template <typename D>
StreamResult run_stream(Pipeline<D>& pipe, std::size_t mode, const std::vector<LlrVec<typename D::value_type>>& frames,
                        bool trace = false) {
  using T = typename D::value_type;
  pipe.select_mode(mode);
  const long latency = pipe.modes().modes[mode].latency;
  StreamResult res;
  const long hazards0 = pipe.hazards();
  std::vector<long> injected_at(frames.size(), -1);
  std::size_t next = 0;
  std::size_t done = 0;
  const long start = pipe.cycle();
  const long limit = start + static_cast<long>(frames.size() + 2) * pipe.interval() + latency + 16;
  while (done < frames.size()) {
    if (pipe.cycle() > limit) throw std::logic_error("pipeline failed to emit every frame");
    int inj = -1;
    typename Pipeline<D>::StepOutput o;
    const long c = pipe.cycle();
    const long ph = pipe.phase();
    if (next < frames.size() && pipe.injection_slot()) {
      std::span<const T> in(frames[next]);
      inj = static_cast<int>(next);
      injected_at[next] = c;
      ++next;
      o = pipe.step(&in, inj);
    } else {
      o = pipe.step();
    }
    int emitted = -1;
    if (o.sampled && o.tag >= 0) {
      emitted = o.tag;
      const long at = injected_at[static_cast<std::size_t>(o.tag)];
      if (c - at != latency) ++res.late_or_early;
      res.outputs.push_back({o.tag, at, c, std::move(o.bits)});
      ++done;
    }
    if (trace) res.trace.push_back({c, ph, inj, emitted});
  }
  res.hazards = pipe.hazards() - hazards0;
  res.cycles = pipe.cycle() - start;
  return res;
}

}  // namespace polar
