#include "polar/unroll.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace polar {

std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::f: return "F";
    case OpKind::g: return "G";
    case OpKind::g0r: return "G0R";
    case OpKind::combine: return "Combine";
    case OpKind::c0r: return "C0R";
    case OpKind::rep: return "Rep";
    case OpKind::spc: return "SPC";
    case OpKind::rate1: return "Rate1";
    case OpKind::repspc: return "RepSPC";
  }
  return "?";
}

long CostModel::cost(OpKind k) const {
  switch (k) {
    case OpKind::f: return f;
    case OpKind::g: return g;
    case OpKind::g0r: return g0r;
    case OpKind::combine: return combine;
    case OpKind::c0r: return c0r;
    case OpKind::rep: return rep;
    case OpKind::spc: return spc;
    case OpKind::rate1: return rate1;
    case OpKind::repspc: return repspc;
  }
  return 0;
}

void CostModel::validate() const {
  for (long v : {f, g, g0r, combine, c0r, rep, spc, rate1, repspc, load, offload})
    if (v < 0) throw std::invalid_argument("cost model entries must be non-negative");
  if (load < 1) throw std::invalid_argument("load must take at least one cycle");
}

namespace {

class Unroller {
 public:
  Unroller(const DecoderTree& tree, const CostModel& cm)
      : s_{tree, cm, {}, {}, std::vector<NodeSchedule>(tree.nodes().size()), 0, -1} {}

  Schedule run() {
    const std::size_t n = s_.tree.spec().n();
    s_.values.push_back({ValueKind::channel, 0, n, -1, 0, 0, {}});
    s_.output_value = emit(s_.tree.root(), 0);
    s_.depth = stage_;
    if (s_.output_value >= 0) {
      auto& out = s_.values[static_cast<std::size_t>(s_.output_value)];
      out.last_read = std::max(out.last_read, s_.time_out());
    }
    return std::move(s_);
  }

 private:
  int new_value(ValueKind kind, std::size_t offset, std::size_t length) {
    s_.values.push_back({kind, offset, length, -1, 0, 0, {}});
    return static_cast<int>(s_.values.size()) - 1;
  }

  // Appends an op and returns its output value.
  int op(OpKind kind, int node, std::vector<int> inputs, ValueKind out_kind, std::size_t out_off,
         std::size_t out_len) {
    const TreeNode& nd = s_.tree.node(node);
    const int id = static_cast<int>(s_.ops.size());
    const long cost = s_.cost.cost(kind);
    const long time = s_.cost.load + stage_;
    const int out = new_value(out_kind, out_off, out_len);
    for (int in : inputs) {
      auto& v = s_.values[static_cast<std::size_t>(in)];
      if (time < v.q) throw std::logic_error("op reads a value before it is produced");
      v.consumers.push_back(id);
      v.last_read = std::max(v.last_read, time);
    }
    auto& ov = s_.values[static_cast<std::size_t>(out)];
    ov.producer = id;
    ov.q = time;
    ov.last_read = time;
    s_.ops.push_back({kind, node, nd.offset, nd.length, std::move(inputs), out, stage_, cost, time});
    stage_ += cost;
    return out;
  }

  int emit(int id, int in_value) {
    const TreeNode& nd = s_.tree.node(id);
    auto& ns = s_.nodes[static_cast<std::size_t>(id)];
    ns.in_value = in_value;
    ns.s_first = stage_;
    const std::size_t first_op = s_.ops.size();
    int out = -1;
    switch (nd.kind) {
      case NodeKind::rate0: break;
      case NodeKind::rate1: out = op(OpKind::rate1, id, {in_value}, ValueKind::bits, nd.offset, nd.length); break;
      case NodeKind::rep: out = op(OpKind::rep, id, {in_value}, ValueKind::bits, nd.offset, nd.length); break;
      case NodeKind::spc: out = op(OpKind::spc, id, {in_value}, ValueKind::bits, nd.offset, nd.length); break;
      case NodeKind::repspc: out = op(OpKind::repspc, id, {in_value}, ValueKind::bits, nd.offset, nd.length); break;
      case NodeKind::rate_r: {
        const std::size_t h = nd.length / 2;
        const TreeNode& l = s_.tree.node(nd.left);
        const TreeNode& r = s_.tree.node(nd.right);
        if (l.kind == NodeKind::rate0) {
          const int ar = op(OpKind::g0r, id, {in_value}, ValueKind::llr, nd.offset + h, h);
          const int br = emit(nd.right, ar);
          out = op(OpKind::c0r, id, {br}, ValueKind::bits, nd.offset, nd.length);
        } else {
          const int al = op(OpKind::f, id, {in_value}, ValueKind::llr, nd.offset, h);
          const int bl = emit(nd.left, al);
          if (r.kind == NodeKind::rate0) {
            out = op(OpKind::combine, id, {bl}, ValueKind::bits, nd.offset, nd.length);
          } else {
            const int ar = op(OpKind::g, id, {in_value, bl}, ValueKind::llr, nd.offset + h, h);
            const int br = emit(nd.right, ar);
            out = op(OpKind::combine, id, {bl, br}, ValueKind::bits, nd.offset, nd.length);
          }
        }
        break;
      }
    }
    ns.s_end = stage_;
    ns.out_value = out;
    if (s_.ops.size() > first_op) {
      ns.first_op = static_cast<int>(first_op);
      ns.last_op = static_cast<int>(s_.ops.size()) - 1;
    }
    return out;
  }

  Schedule s_;
  long stage_ = 0;
};

}  // namespace

Schedule unroll(const DecoderTree& tree, const CostModel& cm) {
  cm.validate();
  return Unroller(tree, cm).run();
}

long compute_imax(const Schedule& s) {
  const auto& ch = s.values[0];
  long last_stage = -1;
  for (int c : ch.consumers) last_stage = std::max(last_stage, s.ops[static_cast<std::size_t>(c)].stage);
  if (s.tree.node(s.tree.root()).kind != NodeKind::rate_r) return std::max(1L, s.depth);
  return std::max(1L, last_stage + 1);
}

std::size_t value_width(const Value& v, const QuantSpec& q) {
  switch (v.kind) {
    case ValueKind::channel: return v.length * static_cast<std::size_t>(q.qc);
    case ValueKind::llr: return v.length * static_cast<std::size_t>(q.qi);
    case ValueKind::bits: return v.length;
  }
  return 0;
}

std::size_t RegisterChain::register_bits() const {
  if (storage == Storage::sram) return width;
  return static_cast<std::size_t>(effective) * width;
}

std::size_t RegisterChain::sram_bits() const {
  return storage == Storage::sram ? static_cast<std::size_t>(sram_depth) * width : 0;
}

std::size_t PipelinePlan::register_bits() const {
  std::size_t b = 0;
  for (const auto& c : chains) b += c.register_bits();
  return b;
}

std::size_t PipelinePlan::sram_bits() const {
  std::size_t b = 0;
  for (const auto& c : chains) b += c.sram_bits();
  return b;
}

std::size_t PipelinePlan::value_width(int value) const {
  return polar::value_width(schedule.values.at(static_cast<std::size_t>(value)), quant);
}

PipelinePlan apply_interval(const Schedule& s, long interval, const QuantSpec& q) {
  q.validate();
  const long imax = compute_imax(s);
  if (interval < 1 || interval > imax)
    throw std::invalid_argument("initiation interval " + std::to_string(interval) + " outside [1, " +
                                std::to_string(imax) + "]");
  PipelinePlan p{s, interval, q, {}};
  p.chains.reserve(s.values.size());
  for (std::size_t v = 0; v < s.values.size(); ++v) {
    const auto& val = s.values[v];
    RegisterChain c{static_cast<int>(v), val.last_read - val.q, 0, value_width(val, q), {}, false, Storage::registers, 0};
    c.effective = (c.length + interval - 1) / interval;
    std::set<long> taps;
    for (int op : val.consumers) {
      const long tap = read_tap(s.read_time(op), val.q, interval);
      if (tap < 0)
        c.wire_read = true;
      else
        taps.insert(tap);
    }
    if (static_cast<int>(v) == s.output_value) {
      const long tap = read_tap(s.time_out(), val.q, interval);
      if (tap < 0)
        c.wire_read = true;
      else
        taps.insert(tap);
    }
    c.taps.assign(taps.begin(), taps.end());
    p.chains.push_back(std::move(c));
  }
  return p;
}

PipelinePlan sram_convert(const PipelinePlan& p, long min_chain) {
  if (min_chain < 2) throw std::invalid_argument("SRAM conversion needs min_chain >= 2");
  PipelinePlan out = p;
  for (auto& c : out.chains) {
    if (c.storage != Storage::registers || c.effective < min_chain) continue;
    const bool simple = std::all_of(c.taps.begin(), c.taps.end(), [&](long t) { return t == 0 || t == c.effective - 1; });
    if (!simple) continue;
    c.storage = Storage::sram;
    c.sram_depth = c.effective - 1;
  }
  return out;
}

double AreaModel::logic_mm2(std::size_t n) const {
  const double nn = static_cast<double>(n);
  return logic_c * nn * std::log2(nn);
}

double AreaModel::memory_mm2(std::size_t n) const {
  const double nn = static_cast<double>(n);
  return mem_a + mem_b * nn + mem_c * nn * nn;
}

CostReport estimate_cost(const PipelinePlan& p, double f_hz, const AreaModel& area) {
  if (!(f_hz > 0.0)) throw std::invalid_argument("clock frequency must be positive");
  const auto& spec = p.schedule.tree.spec();
  CostReport r;
  r.n = spec.n();
  r.k = spec.k();
  r.interval = p.interval;
  r.f_hz = f_hz;
  r.coded_throughput_bps = static_cast<double>(spec.n()) * f_hz / static_cast<double>(p.interval);
  r.info_throughput_bps = spec.rate() * r.coded_throughput_bps;
  r.latency_cycles = p.schedule.latency();
  r.decode_cycles = p.schedule.depth;
  r.latency_s = static_cast<double>(r.latency_cycles) / f_hz;
  r.bus_width = spec.n();
  r.logic_area_mm2 = area.logic_mm2(spec.n());
  r.memory_area_mm2 = area.memory_mm2(spec.n());
  r.register_bits = p.register_bits();
  r.sram_bits = p.sram_bits();
  r.imax = compute_imax(p.schedule);
  return r;
}

long spc_chain_latency(std::size_t nv, std::size_t n_spc) {
  const unsigned a = log2_exact(nv);
  const unsigned b = log2_exact(n_spc);
  if (nv < n_spc) throw std::invalid_argument("node length below SPC size");
  return 3L * static_cast<long>(a - b) + 1;
}

namespace {

using json = nlohmann::json;

json schedule_json(const Schedule& s) {
  json j;
  j["code"] = s.tree.spec().id();
  j["depth"] = s.depth;
  j["latency"] = s.latency();
  j["imax"] = compute_imax(s);
  j["load"] = s.cost.load;
  j["offload"] = s.cost.offload;
  json ops = json::array();
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    const auto& o = s.ops[i];
    ops.push_back({{"id", i},
                   {"kind", to_string(o.kind)},
                   {"span", {o.offset, o.length}},
                   {"stage", o.stage},
                   {"time", o.time},
                   {"inputs", o.inputs},
                   {"output", o.output}});
  }
  j["ops"] = std::move(ops);
  json vals = json::array();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const auto& v = s.values[i];
    const char* kind = v.kind == ValueKind::channel ? "channel" : v.kind == ValueKind::llr ? "llr" : "bits";
    vals.push_back({{"id", i},
                    {"kind", kind},
                    {"span", {v.offset, v.length}},
                    {"producer", v.producer},
                    {"q", v.q},
                    {"last_read", v.last_read}});
  }
  j["values"] = std::move(vals);
  return j;
}

}  // namespace

std::string schedule_to_json(const Schedule& s) { return schedule_json(s).dump(2); }

std::string plan_to_json(const PipelinePlan& p) {
  json j = schedule_json(p.schedule);
  j["interval"] = p.interval;
  j["quant"] = p.quant.str();
  j["register_bits"] = p.register_bits();
  j["sram_bits"] = p.sram_bits();
  json chains = json::array();
  for (const auto& c : p.chains) {
    if (c.length == 0) continue;
    json e{{"value", c.value},
           {"length", c.length},
           {"effective", c.effective},
           {"width", c.width},
           {"taps", c.taps},
           {"storage", c.storage == Storage::sram ? "sram" : "registers"}};
    if (c.storage == Storage::sram) e["sram_depth"] = c.sram_depth;
    chains.push_back(std::move(e));
  }
  j["chains"] = std::move(chains);
  return j.dump(2);
}

std::string report_to_json(const CostReport& r) {
  json j{{"n", r.n},
         {"k", r.k},
         {"interval", r.interval},
         {"f_hz", r.f_hz},
         {"coded_throughput_bps", r.coded_throughput_bps},
         {"info_throughput_bps", r.info_throughput_bps},
         {"latency_cycles", r.latency_cycles},
         {"decode_cycles", r.decode_cycles},
         {"latency_s", r.latency_s},
         {"bus_width", r.bus_width},
         {"logic_area_mm2", r.logic_area_mm2},
         {"memory_area_mm2", r.memory_area_mm2},
         {"register_bits", r.register_bits},
         {"sram_bits", r.sram_bits},
         {"imax", r.imax}};
  return j.dump(2);
}

std::string plan_to_dot(const PipelinePlan& p) {
  const auto& s = p.schedule;
  std::ostringstream os;
  os << "digraph unrolled {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  os << "  in [label=\"alpha_c\", shape=ellipse];\n  out [label=\"beta\", shape=ellipse];\n";
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    const auto& o = s.ops[i];
    os << "  op" << i << " [label=\"" << to_string(o.kind) << " N=" << o.length << "\\nstage " << o.stage << "\"];\n";
  }
  auto src = [&](int v) {
    const int prod = s.values[static_cast<std::size_t>(v)].producer;
    return prod < 0 ? std::string("in") : "op" + std::to_string(prod);
  };
  auto label = [&](int v) {
    const auto& c = p.chains[static_cast<std::size_t>(v)];
    std::string l = std::to_string(c.effective);
    if (c.storage == Storage::sram) l = "1+sram" + std::to_string(c.sram_depth);
    return l;
  };
  for (std::size_t i = 0; i < s.ops.size(); ++i)
    for (int v : s.ops[i].inputs) os << "  " << src(v) << " -> op" << i << " [label=\"" << label(v) << "\"];\n";
  if (s.output_value >= 0) os << "  " << src(s.output_value) << " -> out [label=\"" << label(s.output_value) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace polar
