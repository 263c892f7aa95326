// polarkit: command-line front end.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "polar/catalog.hpp"
#include "polar/codespec.hpp"
#include "polar/encoder.hpp"
#include "polar/fastssc.hpp"
#include "polar/harness.hpp"
#include "polar/pipesim.hpp"
#include "polar/sc_ref.hpp"
#include "polar/unroll.hpp"

namespace fs = std::filesystem;
using namespace polar;

namespace {

// Relative output paths land in $POLARKIT_OUT_DIR when it is set.
fs::path out_path(const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("POLARKIT_OUT_DIR"); dir && *dir) {
      fs::create_directories(dir);
      return fs::path(dir) / path;
    }
  }
  return path;
}

void write_file(const std::string& p, const std::string& text) {
  const auto path = out_path(p);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  std::cerr << "wrote " << path.string() << '\n';
}

CodeSpec load_code(const std::string& arg) {
  if (fs::exists(arg)) return load_spec(arg);
  try {
    return catalog::preset(arg);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("'" + arg + "' is neither a code-spec file nor a preset (" + [] {
      std::string s;
      for (const auto& n : catalog::preset_names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    }() + ")");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  const std::uint64_t s = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  std::cerr << "seed: " << s << '\n';
  return s;
}

struct TreeFlags {
  std::size_t max_rep = 8;
  std::size_t max_spc = 4;
  bool repspc = false;

  void add(CLI::App* app) {
    app->add_option("--max-rep", max_rep, "largest repetition node")->capture_default_str();
    app->add_option("--max-spc", max_spc, "largest SPC node")->capture_default_str();
    app->add_flag("--repspc", repspc, "enable the RepSPC node");
  }
  NodeConstraints get() const { return {max_rep, max_spc, repspc}; }
};

std::vector<std::pair<std::size_t, std::size_t>> parse_spans(const std::vector<std::string>& items) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& s : items) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("mode '" + s + "' must be OFFSET:LENGTH");
    out.emplace_back(std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1)));
  }
  return out;
}

std::vector<double> read_llrs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    for (auto& c : tok)
      if (c == ',') c = ' ';
    std::istringstream ts(tok);
    double x;
    while (ts >> x) v.push_back(x);
  }
  return v;
}

void print_report(const CostReport& r, std::ostream& os) {
  os << std::fixed << std::setprecision(3);
  os << "code                 (" << r.n << "," << r.k << ")\n"
     << "interval             " << r.interval << "  (I_max " << r.imax << ")\n"
     << "clock                " << r.f_hz / 1e6 << " MHz\n"
     << "coded throughput     " << r.coded_throughput_bps / 1e9 << " Gbps\n"
     << "info throughput      " << r.info_throughput_bps / 1e9 << " Gbps\n"
     << "latency              " << r.latency_cycles << " cycles (" << r.decode_cycles << " decode), "
     << r.latency_s * 1e9 << " ns\n"
     << "output bus           " << r.bus_width << " bits\n"
     << "logic area (fit)     " << r.logic_area_mm2 << " mm^2\n"
     << "memory area (fit)    " << r.memory_area_mm2 << " mm^2\n"
     << "register bits        " << r.register_bits << "\n"
     << "sram bits            " << r.sram_bits << "\n";
  os << std::defaultfloat;
}

int run_report(const std::string& which) {
  std::cout << std::fixed << std::setprecision(2);
  const QuantSpec q;
  for (const auto& cfg : {catalog::multimode_1024(), catalog::multimode_2048()}) {
    if (which != "all" && which != cfg.name) continue;
    const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
    const auto s = unroll(tree);
    const auto plan = apply_interval(s, cfg.interval, q);
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t i = 1; i < cfg.codes.size(); ++i) spans.emplace_back(cfg.codes[i].offset, cfg.codes[i].length);
    const auto table = build_mode_table(plan, resolve_modes(tree, spans));
    std::cout << "\n" << cfg.name << ": master " << cfg.master.id() << ", max_rep " << cfg.constraints.max_rep
              << ", max_spc " << cfg.constraints.max_spc << (cfg.constraints.enable_repspc ? ", RepSPC" : "")
              << ", I " << cfg.interval << ", " << cfg.f_hz / 1e6 << " MHz\n";
    std::cout << "  code          T_I Gbps (ref)     latency (ref, delta)   decode  N/2  i_start\n";
    for (std::size_t m = 0; m < table.modes.size(); ++m) {
      const auto& me = table.modes[m];
      const auto r = throughput_report(plan, table, m, cfg.f_hz);
      const auto& ref = cfg.codes[m];
      std::cout << "  " << std::left << std::setw(12) << me.code_id << std::right << std::setw(8)
                << r.info_throughput_bps / 1e9 << " (" << std::setw(5) << ref.ref_info_gbps << ")   " << std::setw(5)
                << me.latency << " (" << std::setw(4) << ref.ref_latency << ", " << std::showpos << std::setw(4)
                << me.latency - ref.ref_latency << std::noshowpos << ")   " << std::setw(6) << r.decode_cycles
                << std::setw(5) << me.length / 2 << std::setw(6) << me.i_start << '\n';
    }
  }
  if (which == "all" || which == "dedicated") {
    const auto c = catalog::dedicated_constraints();
    std::cout << "\ndedicated decoders (max_rep " << c.max_rep << ", max_spc " << c.max_spc << ")\n";
    std::cout << "  code          latency (ref, delta)   I_max (ref, delta)\n";
    auto row = [&](const catalog::DedicatedRef& r) {
      const auto spec = construct(r.n, r.k, r.design_db, ConstructionMethod::bhattacharyya);
      const auto s = unroll(DecoderTree::build(spec, c));
      std::cout << "  " << std::left << std::setw(12) << spec.id() << std::right << std::setw(6) << s.latency() << " ("
                << std::setw(4) << r.ref_latency << ", " << std::showpos << std::setw(4) << s.latency() - r.ref_latency
                << std::noshowpos << ")   " << std::setw(5) << compute_imax(s);
      if (r.ref_imax > 0)
        std::cout << " (" << std::setw(4) << r.ref_imax << ", " << std::showpos << compute_imax(s) - r.ref_imax
                  << std::noshowpos << ")";
      std::cout << '\n';
    };
    for (const auto& r : catalog::length_series()) row(r);
    for (const auto& r : catalog::imax_series()) row(r);
    for (const auto& r : catalog::rate_series()) row(r);
    std::cout << "\narea fits vs reference\n  N      logic (ref)        memory (ref)\n";
    const AreaModel area;
    for (const auto& a : catalog::area_series())
      std::cout << "  " << std::setw(5) << a.n << std::setprecision(3) << std::setw(8) << area.logic_mm2(a.n) << " ("
                << a.logic_mm2 << ")  " << std::setw(8) << area.memory_mm2(a.n) << " (" << a.memory_mm2 << ")\n";
  }
  std::cout << std::defaultfloat;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarkit: polar-code construction, Fast-SSC decoding and unrolled-pipeline modeling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "polarkit 1.0");

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "build a code from a reliability order");
  std::size_t c_n = 0, c_k = 0;
  std::string c_method = "ga", c_out;
  double c_snr = 0.0;
  construct_cmd->add_option("-n", c_n, "code length")->required();
  construct_cmd->add_option("-k", c_k, "information bits")->required();
  construct_cmd->add_option("--method", c_method, "bhattacharyya | ga")->capture_default_str();
  construct_cmd->add_option("--design-snr", c_snr, "design Es/N0 in dB")->capture_default_str();
  construct_cmd->add_option("-o,--output", c_out, "output file (stdout if omitted)");

  // assemble
  auto* assemble_cmd = app.add_subcommand("assemble", "concatenate two codes into a master code");
  std::string a_left, a_right, a_out;
  assemble_cmd->add_option("left", a_left, "left (lower-rate) code")->required();
  assemble_cmd->add_option("right", a_right, "right code")->required();
  assemble_cmd->add_option("-o,--output", a_out, "output file (stdout if omitted)");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "encode information bits");
  std::string e_code, e_info;
  bool e_nonsys = false, e_hex = false;
  std::optional<std::uint64_t> e_seed;
  encode_cmd->add_option("code", e_code, "code-spec file or preset")->required();
  encode_cmd->add_option("--info", e_info, "information bits as 0/1 text (random if omitted)");
  encode_cmd->add_flag("--nonsystematic", e_nonsys, "use the non-systematic encoder");
  encode_cmd->add_flag("--hex", e_hex, "print the codeword as hex");
  encode_cmd->add_option("--seed", e_seed, "seed for random information bits");

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "decode one frame of channel LLRs");
  std::string d_code, d_llr, d_decoder = "fastssc_fixed", d_quant = "5.4.0";
  TreeFlags d_tree;
  bool d_hex = false;
  decode_cmd->add_option("code", d_code, "code-spec file or preset")->required();
  decode_cmd->add_option("--llr", d_llr, "text file of channel LLRs")->required();
  decode_cmd->add_option("--decoder", d_decoder, "sc_float | sc_fixed | fastssc_float | fastssc_fixed")
      ->capture_default_str();
  decode_cmd->add_option("--quant", d_quant, "Qi.Qc.Qf")->capture_default_str();
  decode_cmd->add_flag("--hex", d_hex, "print the estimate as hex");
  d_tree.add(decode_cmd);

  // tree
  auto* tree_cmd = app.add_subcommand("tree", "show the pruned decoder tree");
  std::string t_code, t_dot;
  TreeFlags t_tree;
  tree_cmd->add_option("code", t_code, "code-spec file or preset")->required();
  tree_cmd->add_option("--dot", t_dot, "write a DOT graph");
  t_tree.add(tree_cmd);

  // unroll
  auto* unroll_cmd = app.add_subcommand("unroll", "compile the unrolled pipeline and report its cost");
  std::string u_code, u_json, u_dot, u_quant = "5.4.0";
  TreeFlags u_tree;
  long u_interval = 1, u_sram = 0;
  double u_freq = 500.0;
  bool u_report = false;
  unroll_cmd->add_option("code", u_code, "code-spec file or preset")->required();
  unroll_cmd->add_option("--interval", u_interval, "initiation interval I")->capture_default_str();
  unroll_cmd->add_option("--sram-min-chain", u_sram, "convert chains at least this long to SRAM (0 = off)");
  unroll_cmd->add_option("--freq-mhz", u_freq, "clock frequency")->capture_default_str();
  unroll_cmd->add_option("--quant", u_quant, "Qi.Qc.Qf (register widths)")->capture_default_str();
  unroll_cmd->add_flag("--report", u_report, "print the cost report");
  unroll_cmd->add_option("--json", u_json, "write the plan as JSON");
  unroll_cmd->add_option("--dot", u_dot, "write the dataflow graph as DOT");
  u_tree.add(unroll_cmd);

  // pipesim
  auto* pipe_cmd = app.add_subcommand("pipesim", "stream random frames through the cycle-accurate pipeline");
  std::string p_code, p_trace, p_quant = "5.4.0";
  std::vector<std::string> p_modes;
  std::size_t p_select = 0;
  TreeFlags p_tree;
  long p_interval = 1, p_sram = 0;
  std::size_t p_frames = 100;
  double p_ebn0 = 3.0, p_freq = 500.0;
  std::optional<std::uint64_t> p_seed;
  pipe_cmd->add_option("code", p_code, "code-spec file or preset")->required();
  pipe_cmd->add_option("--modes", p_modes, "extra mode roots as OFFSET:LENGTH");
  pipe_cmd->add_option("--mode", p_select, "mode to stream (0 = master)")->capture_default_str();
  pipe_cmd->add_option("--interval", p_interval, "initiation interval I")->capture_default_str();
  pipe_cmd->add_option("--sram-min-chain", p_sram, "convert chains at least this long to SRAM (0 = off)");
  pipe_cmd->add_option("--frames", p_frames, "number of frames")->capture_default_str();
  pipe_cmd->add_option("--ebn0", p_ebn0, "Eb/N0 of the random frames (dB)")->capture_default_str();
  pipe_cmd->add_option("--freq-mhz", p_freq, "clock frequency")->capture_default_str();
  pipe_cmd->add_option("--quant", p_quant, "Qi.Qc.Qf")->capture_default_str();
  pipe_cmd->add_option("--seed", p_seed, "RNG seed");
  pipe_cmd->add_option("--trace", p_trace, "write a per-cycle CSV trace");
  p_tree.add(pipe_cmd);

  // montecarlo
  auto* mc_cmd = app.add_subcommand("montecarlo", "FER/BER sweep over Eb/N0");
  std::string m_code, m_decoder = "fastssc_fixed", m_quant = "5.4.0", m_out;
  std::vector<double> m_ebn0{1.0, 1.5, 2.0, 2.5};
  TreeFlags m_tree;
  std::uint64_t m_min_err = 100, m_max_frames = 100000;
  long m_interval = 1;
  int m_workers = 0;
  double m_scale = 1.0;
  bool m_serial = false;
  std::optional<std::uint64_t> m_seed;
  mc_cmd->add_option("code", m_code, "code-spec file or preset")->required();
  mc_cmd->add_option("--decoder", m_decoder, "sc_float | sc_fixed | fastssc_float | fastssc_fixed | pipesim")
      ->capture_default_str();
  mc_cmd->add_option("--ebn0", m_ebn0, "Eb/N0 points (dB)")->capture_default_str();
  mc_cmd->add_option("--quant", m_quant, "Qi.Qc.Qf")->capture_default_str();
  mc_cmd->add_option("--llr-scale", m_scale, "channel LLR scale before quantization")->capture_default_str();
  mc_cmd->add_option("--min-errors", m_min_err, "stop a point after this many frame errors")->capture_default_str();
  mc_cmd->add_option("--max-frames", m_max_frames, "frame cap per point")->capture_default_str();
  mc_cmd->add_option("--interval", m_interval, "initiation interval (pipesim decoder)")->capture_default_str();
  mc_cmd->add_option("--workers", m_workers, "worker threads (0 = all)")->capture_default_str();
  mc_cmd->add_flag("--serial", m_serial, "use the single-threaded reference loop");
  mc_cmd->add_option("--seed", m_seed, "RNG seed");
  mc_cmd->add_option("-o,--output", m_out, "CSV output (stdout if omitted)");
  m_tree.add(mc_cmd);

  // equivalence
  auto* eq_cmd = app.add_subcommand("equivalence", "compare SC and Fast-SSC on identical LLR streams");
  std::string q_code, q_quant = "5.4.0";
  TreeFlags q_tree;
  std::uint64_t q_trials = 10000;
  double q_ebn0 = 2.5;
  int q_workers = 0;
  bool q_float = false;
  std::optional<std::uint64_t> q_seed;
  eq_cmd->add_option("code", q_code, "code-spec file or preset")->required();
  eq_cmd->add_option("--quant", q_quant, "Qi.Qc.Qf")->capture_default_str();
  eq_cmd->add_option("--trials", q_trials, "number of frames")->capture_default_str();
  eq_cmd->add_option("--ebn0", q_ebn0, "Eb/N0 (dB)")->capture_default_str();
  eq_cmd->add_option("--workers", q_workers, "worker threads (0 = all)")->capture_default_str();
  eq_cmd->add_flag("--float", q_float, "compare floating-point decoders instead");
  eq_cmd->add_option("--seed", q_seed, "RNG seed");
  q_tree.add(eq_cmd);

  // report
  auto* report_cmd = app.add_subcommand("report", "computed figures next to the reference calibration targets");
  std::string r_which = "all";
  report_cmd->add_option("--set", r_which, "all | nmax1024 | nmax2048 | dedicated")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct_cmd) {
      const auto spec = construct(c_n, c_k, c_snr, parse_method(c_method));
      if (c_out.empty())
        std::cout << to_json(spec) << '\n';
      else
        write_file(c_out, to_json(spec) + "\n");
    } else if (*assemble_cmd) {
      const auto l = load_code(a_left);
      const auto r = load_code(a_right);
      if (!assembly_order_ok(l, r))
        std::cerr << "warning: left code " << l.id() << " has a higher rate than right code " << r.id() << '\n';
      const auto m = assemble_master(l, r);
      if (a_out.empty())
        std::cout << to_json(m) << '\n';
      else
        write_file(a_out, to_json(m) + "\n");
    } else if (*encode_cmd) {
      const auto spec = load_code(e_code);
      BitVec info;
      if (e_info.empty()) {
        SplitMix64 rng(resolve_seed(e_seed));
        info.resize(spec.k());
        for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
      } else {
        info = parse_bit_string(e_info);
      }
      const auto x = e_nonsys ? encode_nonsystematic(spec, info) : encode_systematic(spec, info);
      std::cout << (e_hex ? to_hex(x) : to_bit_string(x)) << '\n';
    } else if (*decode_cmd) {
      const auto spec = load_code(d_code);
      const auto llr = read_llrs(d_llr);
      if (llr.size() != spec.n())
        throw std::invalid_argument("read " + std::to_string(llr.size()) + " LLRs, code length is " +
                                    std::to_string(spec.n()));
      const auto kind = parse_decoder(d_decoder);
      const auto q = QuantSpec::parse(d_quant);
      BitVec x;
      if (kind == DecoderKind::sc_float) {
        x = sc_decode(spec, llr);
      } else if (kind == DecoderKind::sc_fixed) {
        x = sc_decode(spec, quantize_frame(llr, q), q);
      } else {
        const auto tree = DecoderTree::build(spec, d_tree.get());
        if (kind == DecoderKind::fastssc_float)
          x = fastssc_decode(tree, llr);
        else if (kind == DecoderKind::fastssc_fixed)
          x = fastssc_decode(tree, quantize_frame(llr, q), q);
        else
          throw std::invalid_argument("use the pipesim subcommand for the pipeline simulator");
      }
      std::cout << (d_hex ? to_hex(x) : to_bit_string(x)) << '\n';
    } else if (*tree_cmd) {
      const auto spec = load_code(t_code);
      const auto tree = DecoderTree::build(spec, t_tree.get());
      std::cout << spec.id() << ": " << tree.nodes().size() << " nodes, " << tree.leaves().size() << " leaves\n";
      for (auto k : {NodeKind::rate0, NodeKind::rate1, NodeKind::rep, NodeKind::spc, NodeKind::repspc, NodeKind::rate_r})
        std::cout << "  " << std::left << std::setw(7) << to_string(k) << std::right << tree.count(k) << '\n';
      if (spec.n() <= 64) {
        std::cout << "leaves:";
        for (int id : tree.leaves()) {
          const auto& nd = tree.node(id);
          std::cout << ' ' << to_string(nd.kind) << '[' << nd.offset << ',' << nd.offset + nd.length << ')';
        }
        std::cout << '\n';
      }
      for (const auto& v : check_sibling_rates(spec))
        std::cerr << "warning: node [" << v.offset << ", +" << v.length << ") has k_left " << v.k_left
                  << " > k_right " << v.k_right << '\n';
      if (!t_dot.empty()) write_file(t_dot, tree.to_dot());
    } else if (*unroll_cmd) {
      const auto spec = load_code(u_code);
      const auto tree = DecoderTree::build(spec, u_tree.get());
      const auto s = unroll(tree);
      auto plan = apply_interval(s, u_interval, QuantSpec::parse(u_quant));
      if (u_sram > 0) plan = sram_convert(plan, u_sram);
      const auto r = estimate_cost(plan, u_freq * 1e6);
      if (u_report || (u_json.empty() && u_dot.empty())) print_report(r, std::cout);
      if (!u_json.empty()) write_file(u_json, plan_to_json(plan) + "\n");
      if (!u_dot.empty()) write_file(u_dot, plan_to_dot(plan));
    } else if (*pipe_cmd) {
      const auto spec = load_code(p_code);
      const auto q = QuantSpec::parse(p_quant);
      const auto tree = DecoderTree::build(spec, p_tree.get());
      auto plan = apply_interval(unroll(tree), p_interval, q);
      if (p_sram > 0) plan = sram_convert(plan, p_sram);
      Pipeline<FixedDomain> pipe(plan, resolve_modes(tree, parse_spans(p_modes)), FixedDomain{q});
      const auto& table = pipe.modes();
      if (p_select >= table.modes.size()) throw std::invalid_argument("mode index out of range");
      const auto& me = table.modes[p_select];
      const auto sub = spec.sub_code(me.offset, me.length);
      const std::uint64_t seed = resolve_seed(p_seed);
      ChannelConfig cfg{p_ebn0, sub.k() ? sub.rate() : 1.0, seed, 1.0, false};
      std::vector<LlrVec<QLlr>> frames;
      std::vector<BitVec> sent;
      for (std::size_t f = 0; f < p_frames; ++f) {
        auto rng = frame_rng(seed, 0, f);
        BitVec info(sub.k());
        for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
        sent.push_back(encode_systematic(sub, info));
        frames.push_back(quantize_frame(transmit(sent.back(), cfg, rng), q));
      }
      const auto res = run_stream(pipe, p_select, frames, !p_trace.empty());
      FastSscDecoder<FixedDomain> ref(tree, FixedDomain{q});
      std::size_t mismatches = 0, frame_errors = 0;
      for (const auto& o : res.outputs) {
        mismatches += o.bits != ref.decode_node(me.node, frames[static_cast<std::size_t>(o.frame)]) ? 1 : 0;
        frame_errors += o.bits != sent[static_cast<std::size_t>(o.frame)] ? 1 : 0;
      }
      std::cout << "mode " << p_select << " " << me.code_id << " at [" << me.offset << ", +" << me.length
                << "), I = " << plan.interval << "\n"
                << "latency " << me.latency << " cycles, i_start " << me.i_start << "\n"
                << "frames " << res.outputs.size() << ", cycles " << res.cycles << ", hazards " << res.hazards
                << ", off-schedule emissions " << res.late_or_early << "\n"
                << "mismatches vs one-shot decode: " << mismatches << "\n"
                << "frame errors vs transmitted: " << frame_errors << "\n";
      print_report(throughput_report(plan, table, p_select, p_freq * 1e6), std::cout);
      if (!p_trace.empty()) {
        std::ostringstream os;
        write_trace_csv(os, res.trace);
        write_file(p_trace, os.str());
      }
      return mismatches == 0 && res.hazards == 0 && res.late_or_early == 0 ? 0 : 2;
    } else if (*mc_cmd) {
      const auto spec = load_code(m_code);
      SimOptions opt;
      opt.decoder = parse_decoder(m_decoder);
      opt.quant = QuantSpec::parse(m_quant);
      opt.constraints = m_tree.get();
      opt.interval = m_interval;
      opt.stop = {m_min_err, m_max_frames};
      opt.seed = resolve_seed(m_seed);
      opt.llr_scale = m_scale;
      opt.workers = m_workers;
      const auto rows = m_serial ? montecarlo_serial(spec, m_ebn0, opt) : montecarlo(spec, m_ebn0, opt);
      std::ostringstream os;
      write_results_csv(os, rows);
      if (m_out.empty())
        std::cout << os.str();
      else
        write_file(m_out, os.str());
    } else if (*eq_cmd) {
      const auto spec = load_code(q_code);
      const auto r = equivalence_run(spec, QuantSpec::parse(q_quant), q_tree.get(), q_trials, q_ebn0,
                                     resolve_seed(q_seed), q_workers, !q_float);
      std::cout << spec.id() << ": " << r.trials << " trials, " << r.mismatches << " mismatches\n";
      for (auto f : r.first_mismatches) std::cout << "  mismatch at frame " << f << '\n';
      return r.mismatches == 0 ? 0 : 2;
    } else if (*report_cmd) {
      return run_report(r_which);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
