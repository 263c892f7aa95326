// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Calibration tables (reference figure, computed value, delta) are printed
// alongside and never decide a verdict.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "polar/catalog.hpp"
#include "polar/harness.hpp"
#include "polar/pipesim.hpp"
#include "polar/sc_ref.hpp"

using namespace polar;

namespace {

// pinned
constexpr std::uint64_t kEquivTrials = 10000;
constexpr double kEquivEbN0 = 2.0;
constexpr std::size_t kModeFrames = 1000;
constexpr double kLogicTol = 0.03;
constexpr double kMemoryTol = 0.05;
constexpr double kRegRatioLo = 0.50;
constexpr double kRegRatioHi = 0.60;
constexpr long kStreamMargin = 10;
constexpr std::uint64_t kMinErrors = 100;
constexpr std::uint64_t kMaxFrames = 2'000'000;
constexpr double kFixedFerRatio = 2.0;
constexpr double kAssembledEbN0 = 3.0;

const QuantSpec q540 = QuantSpec::parse("5.4.0");

int failures = 0;

void verdict(int id, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << ": " << what << std::endl;
  failures += pass ? 0 : 1;
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

std::string sig3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<LlrVec<QLlr>> noisy_frames(const CodeSpec& spec, std::size_t count, double ebn0, std::uint64_t seed) {
  ChannelConfig cfg{ebn0, spec.k() ? spec.rate() : 1.0, seed, 1.0, false};
  std::vector<LlrVec<QLlr>> out;
  out.reserve(count);
  for (std::size_t f = 0; f < count; ++f) {
    auto rng = frame_rng(seed, 0, f);
    BitVec info(spec.k());
    for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
    out.push_back(quantize_frame(transmit(encode_systematic(spec, info), cfg, rng), q540));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> mode_spans(const catalog::MultiModeConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t i = 1; i < cfg.codes.size(); ++i) s.emplace_back(cfg.codes[i].offset, cfg.codes[i].length);
  return s;
}

void criterion1() {
  const auto cfg = catalog::multimode_2048();
  const auto small = catalog::multimode_1024();
  std::uint64_t mism = 0, trials = 0;
  std::cout << "  code         constraints   trials  mismatches\n";
  for (std::size_t i = 0; i < cfg.codes.size(); ++i) {
    const auto& mc = cfg.codes[i];
    const auto spec = cfg.master.sub_code(mc.offset, mc.length);
    std::vector<NodeConstraints> sets{cfg.constraints};
    if (mc.length <= 1024) sets.push_back(small.constraints);
    for (const auto& c : sets) {
      const auto r = equivalence_run(spec, q540, c, kEquivTrials, kEquivEbN0, 1000 + i, 0);
      std::cout << "  " << std::left << std::setw(12) << mc.id << std::right << "  " << std::setw(2) << c.max_rep << "/"
                << std::setw(1) << c.max_spc << (c.enable_repspc ? "+RepSPC" : "       ") << std::setw(8) << r.trials
                << std::setw(12) << r.mismatches << '\n';
      mism += r.mismatches;
      trials += r.trials;
    }
  }
  verdict(1, mism == 0,
          "SC and Fast-SSC bit-identical on the ten codes, 5.4.0, " + std::to_string(trials) + " frames, " +
              std::to_string(mism) + " mismatches");
}

void criterion2() {
  const auto cfg = catalog::multimode_1024();
  const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
  const auto s = unroll(tree);
  const auto roots = resolve_modes(tree, mode_spans(cfg));
  bool ok = true;
  std::size_t compared = 0;
  std::cout << "  I   code          latency(master) latency(standalone)  bad  hazards\n";
  for (long I : {1L, 20L}) {
    Pipeline<FixedDomain> master(apply_interval(s, I, q540), roots, FixedDomain{q540});
    for (std::size_t m = 0; m < cfg.codes.size(); ++m) {
      const auto& me = master.modes().modes[m];
      const auto sub = cfg.master.sub_code(me.offset, me.length);
      const auto st = DecoderTree::build(sub, cfg.constraints);
      const auto ss = unroll(st);
      Pipeline<FixedDomain> alone(apply_interval(ss, std::min(I, compute_imax(ss)), q540), {}, FixedDomain{q540});
      const auto frames = noisy_frames(sub, kModeFrames, 2.5, 500 + m);
      const auto a = run_stream(master, m, frames);
      const auto b = run_stream(alone, 0, frames);
      std::size_t bad = a.outputs.size() == frames.size() && b.outputs.size() == frames.size() ? 0 : frames.size();
      for (std::size_t i = 0; bad == 0 && i < frames.size(); ++i) {
        bad += a.outputs[i].frame != b.outputs[i].frame || a.outputs[i].bits != b.outputs[i].bits;
      }
      compared += frames.size();
      const long lat_a = me.latency;
      const long lat_b = alone.modes().modes[0].latency;
      std::cout << "  " << std::setw(2) << I << "  " << std::left << std::setw(12) << me.code_id << std::right
                << std::setw(10) << lat_a << std::setw(20) << lat_b << std::setw(9) << bad << std::setw(9)
                << a.hazards + b.hazards << '\n';
      ok = ok && bad == 0 && a.hazards == 0 && b.hazards == 0 && a.late_or_early == 0 && b.late_or_early == 0;
    }
  }
  verdict(2, ok,
          "eight modes through the N_max=1024 master equal standalone pipelines at I in {1, 20}, " +
              std::to_string(compared) + " frames");
}

void criterion3() {
  const auto s = unroll(DecoderTree::build(catalog::code_8_4(), catalog::dedicated_constraints()));
  const long imax = compute_imax(s);
  verdict(3, imax == 3, "I_max of the (8,4) decoder = " + std::to_string(imax) + " (expected 3)");
}

void criterion4() {
  const auto s1024 = unroll(DecoderTree::build(catalog::code_1024_512(), catalog::dedicated_constraints()));
  const double tc = estimate_cost(apply_interval(s1024, 1, q540), 500e6).coded_throughput_bps;

  const auto c1 = catalog::multimode_1024();
  const auto p1 = apply_interval(unroll(DecoderTree::build(c1.master, c1.constraints)), 20, q540);
  const double ti1 = estimate_cost(p1, 500e6).info_throughput_bps;

  const auto c2 = catalog::multimode_2048();
  const auto p2 = apply_interval(unroll(DecoderTree::build(c2.master, c2.constraints)), 20, q540);
  const double ti2 = estimate_cost(p2, 250e6).info_throughput_bps;

  const bool ok = tc == 512e9 && sig3(ti1 / 1e9) == "21.3" && sig3(ti2 / 1e9) == "17.1";
  verdict(4, ok,
          "T_C(1024, 500 MHz, I=1) = " + sig3(tc / 1e9) + " Gbps, T_I(1024,853, 500 MHz, I=20) = " + sig3(ti1 / 1e9) +
              " Gbps, T_I(2048,1365, 250 MHz, I=20) = " + sig3(ti2 / 1e9) + " Gbps");
}

void criterion5() {
  bool ok = true;
  std::string detail;
  for (std::size_t nv = 8; nv <= 4096; nv *= 2) {
    const auto spec = CodeSpec::from_frozen_indices(nv, {0}, Imported{"spc-pattern"});
    const auto s = unroll(DecoderTree::build(spec, {8, 4, false}));
    long lg = 0;
    while ((std::size_t{1} << lg) < nv) ++lg;
    const long expect = 3 * (lg - 2) + 1;
    ok = ok && s.depth == expect;
    detail += " " + std::to_string(nv) + ":" + std::to_string(s.depth) + (s.depth == expect ? "" : "!");
  }
  verdict(5, ok, "SPC-pattern chain decode cycles = 3(log2 N_v - 2) + 1 for N_v = 8..4096 [" + detail.substr(1) + "]");
}

void criterion6() {
  bool ok = true;
  for (const auto& cfg : {catalog::multimode_1024(), catalog::multimode_2048()}) {
    const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
    const auto plan = apply_interval(unroll(tree), cfg.interval, q540);
    const auto table = build_mode_table(plan, resolve_modes(tree, mode_spans(cfg)));
    std::cout << "  " << cfg.name << " (max_rep " << cfg.constraints.max_rep << ", max_spc " << cfg.constraints.max_spc
              << (cfg.constraints.enable_repspc ? ", RepSPC" : "") << ", I " << cfg.interval << ")\n"
              << "    code          decode  N/2   latency  ref  delta   T_I Gbps  ref\n";
    const bool bound_applies = cfg.name == "nmax2048";
    for (std::size_t m = 0; m < table.modes.size(); ++m) {
      const auto& me = table.modes[m];
      const auto r = throughput_report(plan, table, m, cfg.f_hz);
      const long half = static_cast<long>(me.length / 2);
      const bool within = r.decode_cycles <= half;
      if (bound_applies) ok = ok && within;
      std::cout << "    " << std::left << std::setw(12) << me.code_id << std::right << std::setw(7) << r.decode_cycles
                << std::setw(5) << half << (within ? " " : "*") << std::setw(8) << me.latency << std::setw(5)
                << cfg.codes[m].ref_latency << std::setw(7) << std::showpos << me.latency - cfg.codes[m].ref_latency
                << std::noshowpos << std::setw(10) << fmt(r.info_throughput_bps / 1e9, 2) << std::setw(6)
                << cfg.codes[m].ref_info_gbps << '\n';
    }
  }
  const auto c = catalog::dedicated_constraints();
  std::cout << "  dedicated decoders (max_rep " << c.max_rep << ", max_spc " << c.max_spc << ")\n"
            << "    code          latency  ref  delta   I_max  ref  delta\n";
  auto row = [&](const catalog::DedicatedRef& d) {
    const auto spec = construct(d.n, d.k, d.design_db, ConstructionMethod::bhattacharyya);
    const auto s = unroll(DecoderTree::build(spec, c));
    std::cout << "    " << std::left << std::setw(12) << spec.id() << std::right << std::setw(9) << s.latency()
              << std::setw(5) << d.ref_latency << std::setw(7) << std::showpos << s.latency() - d.ref_latency
              << std::noshowpos << std::setw(8) << compute_imax(s);
    if (d.ref_imax > 0)
      std::cout << std::setw(5) << d.ref_imax << std::setw(7) << std::showpos << compute_imax(s) - d.ref_imax
                << std::noshowpos;
    std::cout << '\n';
  };
  for (const auto& d : catalog::length_series()) row(d);
  for (const auto& d : catalog::imax_series()) row(d);
  for (const auto& d : catalog::rate_series()) row(d);
  verdict(6, ok, "decode cycles <= N/2 for the ten codes under max_rep 16, max_spc 8, RepSPC (calibration above)");
}

void criterion7() {
  bool logic_exact = true, logic_ok = true, mem_ok = true;
  std::cout << "    N     logic   C*N*log2N  table  rel      memory  table  rel\n";
  for (const auto& a : catalog::area_series()) {
    const auto spec = construct(a.n, a.n / 2, catalog::kHalfRateDesignDb, ConstructionMethod::bhattacharyya);
    const auto r = estimate_cost(apply_interval(unroll(DecoderTree::build(spec, catalog::dedicated_constraints())), 1,
                                                q540),
                                 500e6);
    double lg = 0;
    for (std::size_t v = a.n; v > 1; v /= 2) lg += 1;
    const double formula = static_cast<double>(a.n) * lg / 17000.0;
    const double rl = (r.logic_area_mm2 - a.logic_mm2) / a.logic_mm2;
    const double rm = (r.memory_area_mm2 - a.memory_mm2) / a.memory_mm2;
    logic_exact = logic_exact && std::abs(r.logic_area_mm2 - formula) <= 1e-12 * formula;
    logic_ok = logic_ok && std::abs(rl) <= kLogicTol;
    mem_ok = mem_ok && std::abs(rm) <= kMemoryTol;
    std::cout << "  " << std::setw(5) << a.n << std::setw(9) << fmt(r.logic_area_mm2, 4) << std::setw(10)
              << fmt(formula, 4) << std::setw(7) << a.logic_mm2 << std::setw(8) << fmt(100 * rl, 1) << "%"
              << std::setw(9) << fmt(r.memory_area_mm2, 2) << std::setw(7) << a.memory_mm2 << std::setw(8)
              << fmt(100 * rm, 1) << "%\n";
  }
  verdict(7, logic_exact && logic_ok && mem_ok,
          std::string("area fits: logic = C*N*log2N ") + (logic_exact ? "exact" : "MISMATCH") + ", logic within 3% " +
              (logic_ok ? "yes" : "no") + ", memory within 5% " + (mem_ok ? "yes" : "no"));
}

void criterion8() {
  const auto s = unroll(DecoderTree::build(catalog::code_1024_512(), catalog::dedicated_constraints()));
  const long imax = compute_imax(s);
  const double b1 = static_cast<double>(apply_interval(s, 1, q540).register_bits());
  const double b2 = static_cast<double>(apply_interval(s, 2, q540).register_bits());
  bool mono = true;
  std::size_t prev = static_cast<std::size_t>(b1);
  for (long i = 2; i <= imax; ++i) {
    const auto b = apply_interval(s, i, q540).register_bits();
    mono = mono && b <= prev;
    prev = b;
  }
  const double ratio = b2 / b1;
  verdict(8, ratio >= kRegRatioLo && ratio <= kRegRatioHi && mono,
          "(1024,512) register bits I=2 / I=1 = " + fmt(ratio, 4) + ", non-increasing up to I_max " +
              std::to_string(imax) + (mono ? "" : " VIOLATED"));
}

void criterion9() {
  const auto spec = catalog::code_1024_512();
  const auto tree = DecoderTree::build(spec, catalog::dedicated_constraints());
  const auto s = unroll(tree);
  const long imax = compute_imax(s);
  const auto frames = noisy_frames(spec, static_cast<std::size_t>(s.depth + kStreamMargin), 2.0, 99);
  FastSscDecoder<FixedDomain> ref(tree, FixedDomain{q540});
  std::vector<BitVec> batch;
  for (const auto& f : frames) batch.push_back(ref.decode(f));
  bool ok = true;
  std::string detail;
  for (long I : {1L, 2L, imax}) {
    const auto plan = apply_interval(s, I, q540);
    for (bool sram : {false, true}) {
      Pipeline<FixedDomain> pipe(sram ? sram_convert(plan, 2) : plan, {}, FixedDomain{q540});
      const auto res = run_stream(pipe, 0, frames);
      std::size_t bad = res.outputs.size() == frames.size() ? 0 : frames.size();
      for (const auto& o : res.outputs) bad += o.bits != batch[static_cast<std::size_t>(o.frame)];
      ok = ok && bad == 0 && res.hazards == 0 && res.late_or_early == 0;
      detail += " I=" + std::to_string(I) + (sram ? "/sram" : "") + ":" + std::to_string(bad);
    }
  }
  verdict(9, ok,
          "(1024,512) streaming " + std::to_string(frames.size()) + " frames equals batch decoding, mismatches [" +
              detail.substr(1) + "]");
}

void criterion10() {
  const auto spec = catalog::code_1024_512();
  SimOptions opt;
  opt.stop = {kMinErrors, kMaxFrames};
  opt.seed = 20240601;
  opt.decoder = DecoderKind::sc_float;
  const std::vector<double> pts{1.0, 1.5, 2.0, 2.5};
  const auto fl = montecarlo(spec, pts, opt);
  bool decreasing = true, enough = true;
  std::size_t near = 0;
  std::cout << "    Eb/N0  frames   errors  FER (float SC)\n";
  for (std::size_t i = 0; i < fl.size(); ++i) {
    std::cout << "    " << fmt(fl[i].ebn0_db, 1) << std::setw(10) << fl[i].frames << std::setw(8) << fl[i].frame_errors
              << "  " << fl[i].fer << '\n';
    enough = enough && fl[i].frame_errors >= kMinErrors;
    if (i > 0) decreasing = decreasing && fl[i].fer < fl[i - 1].fer;
    if (std::abs(std::log10(fl[i].fer) + 2) < std::abs(std::log10(fl[near].fer) + 2)) near = i;
  }
  opt.decoder = DecoderKind::fastssc_fixed;
  opt.quant = q540;
  const auto fx = montecarlo(spec, {pts[near]}, opt);
  const double ratio = fx[0].fer / fl[near].fer;
  std::cout << "    fixed 5.4.0 at " << fmt(pts[near], 1) << " dB: " << fx[0].frame_errors << "/" << fx[0].frames
            << " FER " << fx[0].fer << ", ratio to float " << fmt(ratio, 3) << '\n';

  const auto master = catalog::code_2048_1365();
  SimOptions mo;
  mo.stop = {kMinErrors, kMaxFrames};
  mo.seed = 777;
  mo.decoder = DecoderKind::fastssc_fixed;
  mo.constraints = catalog::multimode_2048().constraints;
  mo.segments = {{0, 1024}, {1024, 1024}};
  const auto mr = montecarlo(master, {kAssembledEbN0}, mo)[0];
  const auto segl = mr.segment_frame_errors[0], segr = mr.segment_frame_errors[1];
  const bool assembled_ok =
      mr.frame_errors >= kMinErrors && mr.frame_errors >= std::max(segl, segr) && mr.frame_errors <= segl + segr;
  std::cout << "    (2048,1365) at " << fmt(kAssembledEbN0, 1) << " dB: " << mr.frame_errors << "/" << mr.frames
            << " FER " << mr.fer << ", left-half errors " << segl << ", right-half errors " << segr << '\n';

  const bool ok = decreasing && enough && ratio <= kFixedFerRatio && assembled_ok;
  verdict(10, ok,
          std::string("float SC FER strictly decreasing ") + (decreasing ? "yes" : "no") + ", >=100 errors/point " +
              (enough ? "yes" : "no") + ", fixed/float FER ratio " + fmt(ratio, 2) + " at " + fmt(pts[near], 1) +
              " dB, assembled FER >= max per-half FER " + (assembled_ok ? "yes" : "no"));
}

void criterion11() {
  const std::vector<NodeConstraints> sets{{8, 4, false}, {16, 8, true}, {2, 2, false}};
  std::uint64_t specs = 0, decodes = 0, bad = 0;
  auto check = [&](const CodeSpec& spec, const std::vector<LlrVec<QLlr>>& frames) {
    ++specs;
    for (const auto& c : sets) {
      const auto tree = DecoderTree::build(spec, c);
      FastSscDecoder<FixedDomain> fast(tree, FixedDomain{q540});
      ScDecoder<FixedDomain> sc(spec, FixedDomain{q540});
      for (const auto& f : frames) {
        const auto a = fast.decode(f);
        bad += a != sc.decode(f) || a != oracle::sc_fixed(f, spec.frozen(), 15);
        ++decodes;
      }
    }
  };
  auto mask_spec = [](std::size_t n, std::uint32_t m) {
    std::vector<std::size_t> fz;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1u) fz.push_back(i);
    return CodeSpec::from_frozen_indices(n, fz, Imported{});
  };
  // full 7-level grids for n <= 4
  for (std::size_t n : {2u, 4u}) {
    std::vector<LlrVec<QLlr>> grid;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 7;
    for (std::size_t t = 0; t < total; ++t) {
      LlrVec<QLlr> f(n);
      std::size_t c = t;
      for (std::size_t i = 0; i < n; ++i, c /= 7) f[i] = QLlr{static_cast<int>(c % 7) * 2 - 6};
      grid.push_back(f);
    }
    for (std::uint32_t m = 0; m < (1u << n); ++m) check(mask_spec(n, m), grid);
  }
  // every mask for n = 8 and n = 16 on sampled grid frames
  std::mt19937 rng(2024);
  auto sample = [&](std::size_t n, std::size_t count) {
    std::vector<LlrVec<QLlr>> out(count, LlrVec<QLlr>(n));
    for (auto& f : out)
      for (auto& v : f) v = QLlr{static_cast<int>(rng() % 15) - 7};
    return out;
  };
  for (std::uint32_t m = 0; m < 256; ++m) check(mask_spec(8, m), sample(8, 300));
  for (std::uint32_t m = 0; m < 65536; ++m) check(mask_spec(16, m), sample(16, 8));

  // kernels against brute-force ML
  std::uint64_t kernel_bad = 0, kernel_cases = 0;
  const FixedDomain d{q540};
  for (std::size_t n : {2u, 4u, 8u}) {
    for (int t = 0; t < 20000; ++t) {
      LlrVec<QLlr> a(n);
      for (auto& v : a) v = QLlr{static_cast<int>(rng() % 15) - 7};
      const auto b = decode_spc(d, a);
      kernel_bad += !oracle::even(b) || oracle::corr(b, a) != oracle::best_spc(a);
      ++kernel_cases;
    }
  }
  const FloatDomain fd;
  std::uniform_real_distribution<double> u(-4, 4);
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    for (int t = 0; t < 20000; ++t) {
      std::vector<double> a(n);
      for (auto& v : a) v = u(rng);
      const auto b = decode_rep(fd, a);
      kernel_bad += oracle::corr(b, a) != oracle::best_rep(a);
      ++kernel_cases;
      // fixed point without internal saturation: |sum| <= 3 * n / 2 <= 15 only for short spans
      if (n <= 4) {
        LlrVec<QLlr> qa(n);
        for (auto& v : qa) v = QLlr{static_cast<int>(rng() % 7) - 3};
        const auto qb = decode_rep(d, qa);
        kernel_bad += oracle::corr(qb, qa) != oracle::best_rep(qa);
        ++kernel_cases;
      }
    }
  }
  verdict(11, bad == 0 && kernel_bad == 0,
          "exhaustive small codes: " + std::to_string(specs) + " specs, " + std::to_string(decodes) +
              " decodes, " + std::to_string(bad) + " mismatches; SPC/REP vs brute-force ML " +
              std::to_string(kernel_cases) + " cases, " + std::to_string(kernel_bad) + " failures");
}

}  // namespace

int main() {
  std::cout << "threads: " << omp_get_max_threads() << std::endl;
  const std::vector<void (*)()> all{criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
                                    criterion7, criterion8, criterion9, criterion10, criterion11};
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[i]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "      (" << fmt(secs, 1) << " s)" << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
