// Unrolled decoder compilation: in-order op schedule with stage indices,
// value lifetimes, register chains under an initiation interval, SRAM
// conversion and the throughput / latency / area report.
//
// Time model. An op at stage s evaluates combinationally in cycle
// load + s of its frame (virtual time, injection at 0). Its output is
// latched into the head of the value's register chain at the end of that
// cycle. A consumer at time t reads the wire when t equals the production
// time q, otherwise tap floor((t - q - 1) / I). A chain therefore needs
// L = last_read - q registers at I = 1 and ceil(L / I) in general.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polar/codespec.hpp"
#include "polar/fastssc.hpp"
#include "polar/quant.hpp"

namespace polar {

enum class OpKind { f, g, g0r, combine, c0r, rep, spc, rate1, repspc };

std::string to_string(OpKind k);

struct CostModel {
  long f = 1;
  long g = 1;
  long g0r = 1;
  long combine = 1;
  long c0r = 1;
  long rep = 1;
  long spc = 1;
  long rate1 = 0;
  long repspc = 2;
  long load = 1;
  long offload = 1;

  long cost(OpKind k) const;
  void validate() const;
};

enum class ValueKind { channel, llr, bits };

struct Value {
  ValueKind kind;
  std::size_t offset;
  std::size_t length;
  int producer = -1;  // op id; -1 for the channel port
  long q = 0;         // production time
  long last_read = 0;
  std::vector<int> consumers;
};

struct Op {
  OpKind kind;
  int node;  // tree node the op belongs to
  std::size_t offset;
  std::size_t length;  // span of the node
  std::vector<int> inputs;
  int output;
  long stage;
  long cost;
  long time;  // load + stage
};

/// Per tree-node bookkeeping; RATE0 leaves have no ops and out_value -1.
struct NodeSchedule {
  int first_op = -1;
  int last_op = -1;
  long s_first = 0;
  long s_end = 0;
  int in_value = -1;
  int out_value = -1;
};

struct Schedule {
  DecoderTree tree;
  CostModel cost;
  std::vector<Op> ops;
  std::vector<Value> values;  // value 0 is the channel port
  std::vector<NodeSchedule> nodes;
  long depth = 0;
  int output_value = -1;

  /// Cycle at which the offload stage reads the root estimate.
  long time_out() const { return cost.load + depth + cost.offload; }
  long latency() const { return time_out(); }
  /// Read time of `op` (its evaluation time).
  long read_time(int op) const { return ops[static_cast<std::size_t>(op)].time; }
};

Schedule unroll(const DecoderTree& tree, const CostModel& cm = {});

/// Largest valid initiation interval: channel LLRs must stay in the load
/// register until the root-level G (or G0R) consumes them.
long compute_imax(const Schedule& s);

enum class Storage { registers, sram };

struct RegisterChain {
  int value;
  long length;     // L at I = 1
  long effective;  // ceil(L / I)
  std::size_t width;
  std::vector<long> taps;  // register taps read by consumers, ascending
  bool wire_read = false;  // some consumer reads the value combinationally
  Storage storage = Storage::registers;
  long sram_depth = 0;

  std::size_t register_bits() const;
  std::size_t sram_bits() const;
};

struct PipelinePlan {
  Schedule schedule;
  long interval = 1;
  QuantSpec quant;
  std::vector<RegisterChain> chains;  // indexed by value id

  std::size_t register_bits() const;
  std::size_t sram_bits() const;
  std::size_t value_width(int value) const;
};

std::size_t value_width(const Value& v, const QuantSpec& q);

/// Tap a consumer at time t reads for a value produced at q; -1 means wire.
inline long read_tap(long t, long q, long interval) { return t == q ? -1 : (t - q - 1) / interval; }

PipelinePlan apply_interval(const Schedule& s, long interval, const QuantSpec& q = {});

/// Replaces long chains by one head register plus an SRAM of depth E - 1.
/// Chains read at a tap other than the head or the tail stay registers.
PipelinePlan sram_convert(const PipelinePlan& p, long min_chain);

struct AreaModel {
  double logic_c = 1.0 / 17000.0;
  double mem_a = 0.249;
  double mem_b = 2.466e-3;
  double mem_c = 8.912e-6;

  double logic_mm2(std::size_t n) const;
  double memory_mm2(std::size_t n) const;
};

struct CostReport {
  std::size_t n = 0;
  std::size_t k = 0;
  long interval = 1;
  double f_hz = 0.0;
  double coded_throughput_bps = 0.0;
  double info_throughput_bps = 0.0;
  long latency_cycles = 0;
  long decode_cycles = 0;
  double latency_s = 0.0;
  std::size_t bus_width = 0;
  double logic_area_mm2 = 0.0;
  double memory_area_mm2 = 0.0;
  std::size_t register_bits = 0;
  std::size_t sram_bits = 0;
  long imax = 0;
};

CostReport estimate_cost(const PipelinePlan& p, double f_hz, const AreaModel& area = {});

/// Closed-form latency of a chain of SPC-pattern nodes down to size n_spc.
long spc_chain_latency(std::size_t nv, std::size_t n_spc);

std::string schedule_to_json(const Schedule& s);
std::string plan_to_json(const PipelinePlan& p);
std::string report_to_json(const CostReport& r);
/// Dataflow graph: ops as boxes, values as edges labelled with chain lengths.
std::string plan_to_dot(const PipelinePlan& p);

}  // namespace polar
