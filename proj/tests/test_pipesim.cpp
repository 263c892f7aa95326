#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "polar/catalog.hpp"
#include "polar/pipesim.hpp"

using namespace polar;

namespace {

const QuantSpec q540 = QuantSpec::parse("5.4.0");

std::vector<LlrVec<QLlr>> random_frames(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LlrVec<QLlr>> out(count, LlrVec<QLlr>(n));
  for (auto& f : out)
    for (auto& v : f) v = QLlr{static_cast<int>(rng() % 15) - 7};
  return out;
}

// Streams frames through `mode` and checks them against the oracle.
void check_stream(Pipeline<FixedDomain>& pipe, std::size_t mode, const CodeSpec& sub, std::size_t count,
                  std::uint64_t seed) {
  const auto frames = random_frames(sub.n(), count, seed);
  const auto res = run_stream(pipe, mode, frames);
  CHECK(res.hazards == 0);
  CHECK(res.late_or_early == 0);
  REQUIRE(res.outputs.size() == frames.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < res.outputs.size(); ++i) {
    const auto& o = res.outputs[i];
    CHECK(o.frame == static_cast<int>(i));  // in order
    if (i > 0) CHECK(o.emit_cycle - res.outputs[i - 1].emit_cycle == pipe.interval());
    bad += o.bits != oracle::sc_fixed(frames[static_cast<std::size_t>(o.frame)], sub.frozen(), 15);
  }
  CHECK(bad == 0);
  CHECK(pipe.drained());
}

}  // namespace

TEST_CASE("enable phases on the (8,4) plan") {
  const auto tree = DecoderTree::build(catalog::code_8_4(), {8, 4, false});
  const auto plan = apply_interval(unroll(tree), 2, q540);
  const auto& s = plan.schedule;
  // alpha_c is produced at time 0, the F output at time 1
  CHECK(s.values[0].q % 2 == 0);
  CHECK(s.ops[0].kind == OpKind::f);
  CHECK(s.values[static_cast<std::size_t>(s.ops[0].output)].q % 2 == 1);

  Pipeline<FixedDomain> pipe(plan, {}, FixedDomain{q540});
  for (int c = 0; c < 6; ++c) {
    CHECK(pipe.phase() == c % 2);
    CHECK(pipe.injection_slot() == (c % 2 == 0));
    pipe.step();
  }
  check_stream(pipe, 0, catalog::code_8_4(), 200, 1);
}

TEST_CASE("drained pipeline with zero inputs") {
  const auto tree = DecoderTree::build(catalog::code_16_12(), {});
  Pipeline<FixedDomain> pipe(apply_interval(unroll(tree), 1, q540), {}, FixedDomain{q540});
  const std::vector<LlrVec<QLlr>> zeros(20, LlrVec<QLlr>(16));
  const auto res = run_stream(pipe, 0, zeros);
  for (const auto& o : res.outputs) CHECK(o.bits == BitVec(16, 0));
  for (int c = 0; c < 20; ++c) {
    const auto o = pipe.step();
    CHECK(o.tag == -1);
  }
  CHECK(pipe.hazards() == 0);
}

TEST_CASE("streaming equals one-shot decoding") {
  const auto spec = construct(256, 128, 1.0, ConstructionMethod::gaussian_approximation);
  for (const auto& c : {NodeConstraints{8, 4, false}, NodeConstraints{16, 8, true}}) {
    const auto tree = DecoderTree::build(spec, c);
    const auto s = unroll(tree);
    const long imax = compute_imax(s);
    for (long I : {1L, 2L, 3L, imax}) {
      const auto plan = apply_interval(s, I, q540);
      Pipeline<FixedDomain> regs(plan, {}, FixedDomain{q540});
      check_stream(regs, 0, spec, 1000, static_cast<std::uint64_t>(I));
      Pipeline<FixedDomain> sram(sram_convert(plan, 2), {}, FixedDomain{q540});
      check_stream(sram, 0, spec, 1000, static_cast<std::uint64_t>(I));
    }
  }
}

TEST_CASE("SRAM and register plans are cycle-identical") {
  const auto spec = catalog::code_16_12();
  const auto tree = DecoderTree::build(spec, {});
  const auto plan = apply_interval(unroll(tree), 2, q540);
  const auto conv = sram_convert(plan, 2);
  REQUIRE(conv.sram_bits() > 0);
  Pipeline<FixedDomain> a(plan, {}, FixedDomain{q540});
  Pipeline<FixedDomain> b(conv, {}, FixedDomain{q540});
  const auto frames = random_frames(16, 300, 3);
  const auto ra = run_stream(a, 0, frames, true);
  const auto rb = run_stream(b, 0, frames, true);
  REQUIRE(ra.outputs.size() == rb.outputs.size());
  for (std::size_t i = 0; i < ra.outputs.size(); ++i) {
    CHECK(ra.outputs[i].emit_cycle == rb.outputs[i].emit_cycle);
    CHECK(ra.outputs[i].bits == rb.outputs[i].bits);
  }
  REQUIRE(ra.trace.size() == rb.trace.size());
  for (std::size_t i = 0; i < ra.trace.size(); ++i) CHECK(ra.trace[i].emitted == rb.trace[i].emitted);
}

TEST_CASE("modes of the (16,12) plan") {
  const auto spec = catalog::code_16_12();
  const auto tree = DecoderTree::build(spec, {8, 4, false});
  const auto plan = apply_interval(unroll(tree), 2, q540);
  const auto roots = resolve_modes(tree, {{0, 8}, {0, 4}, {4, 4}});
  Pipeline<FixedDomain> pipe(plan, roots, FixedDomain{q540});
  const auto& t = pipe.modes();
  REQUIRE(t.modes.size() == 4);
  CHECK(t.modes[0].entry_stage == 0);
  CHECK(t.modes[0].latency == plan.schedule.latency());
  CHECK(t.modes[1].code_id == "(8,4)");
  CHECK(t.modes[2].code_id == "(4,1)");
  CHECK(t.modes[3].code_id == "(4,3)");
  const auto& cm = plan.schedule.cost;
  for (const auto& m : t.modes) {
    CHECK(m.i_start == (cm.load + m.entry_stage) % 2);
    CHECK(m.latency == cm.load + (m.exit_stage - m.entry_stage) + cm.offload);
  }
  for (std::size_t m = 0; m < t.modes.size(); ++m)
    check_stream(pipe, m, spec.sub_code(t.modes[m].offset, t.modes[m].length), 100, 40 + m);
  // back to the master after the constituents
  check_stream(pipe, 0, spec, 50, 99);

  CHECK_THROWS_AS(resolve_modes(tree, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS(pipe.select_mode(9));
}

TEST_CASE("multi-mode equals standalone pipelines") {
  const auto cfg = catalog::multimode_1024();
  const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
  const auto s = unroll(tree);
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = 1; i < cfg.codes.size(); ++i) spans.emplace_back(cfg.codes[i].offset, cfg.codes[i].length);
  Pipeline<FixedDomain> master(apply_interval(s, 20, q540), resolve_modes(tree, spans), FixedDomain{q540});
  for (std::size_t m = 1; m < cfg.codes.size(); ++m) {
    const auto& mc = cfg.codes[m];
    const auto sub = cfg.master.sub_code(mc.offset, mc.length);
    const auto st = DecoderTree::build(sub, cfg.constraints);
    const auto ss = unroll(st);
    Pipeline<FixedDomain> alone(apply_interval(ss, std::min(20L, compute_imax(ss)), q540), {}, FixedDomain{q540});
    CHECK(master.modes().modes[m].latency == ss.latency());
    const auto frames = random_frames(mc.length, 50, m);
    const auto a = run_stream(master, m, frames);
    const auto b = run_stream(alone, 0, frames);
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) CHECK(a.outputs[i].bits == b.outputs[i].bits);
  }
}

TEST_CASE("hazards are caught") {
  const auto tree = DecoderTree::build(catalog::code_1024_512(), {});
  auto plan = apply_interval(unroll(tree), 2, q540);
  plan.interval = 1;  // chains sized for I = 2 cannot hold frames arriving every cycle
  CHECK_THROWS_AS(Pipeline<FixedDomain>(plan, {}, FixedDomain{q540}), std::logic_error);

  const auto small = DecoderTree::build(catalog::code_8_4(), {});
  Pipeline<FixedDomain> pipe(apply_interval(unroll(small), 2, q540), {}, FixedDomain{q540});
  const LlrVec<QLlr> f(8, QLlr{1});
  const std::span<const QLlr> in(f);
  pipe.step(&in, 0);
  CHECK_THROWS_AS(pipe.step(&in, 1), std::logic_error);  // off-slot injection
  CHECK_THROWS_AS(pipe.select_mode(0), std::logic_error);  // frame in flight
  const LlrVec<QLlr> short_frame(4);
  const std::span<const QLlr> bad(short_frame);
  pipe.step();
  CHECK_THROWS_AS(pipe.step(&bad, 2), std::invalid_argument);
}

TEST_CASE("mode table errors") {
  std::vector<std::size_t> fz{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const auto spec = CodeSpec::from_frozen_indices(16, fz, Imported{});
  const auto tree = DecoderTree::build(spec, {8, 8, false});
  const auto plan = apply_interval(unroll(tree), 1, q540);
  CHECK_THROWS_AS(build_mode_table(plan, {tree.find_node(0, 8)}), std::invalid_argument);  // rate-0 root
  CHECK_THROWS(build_mode_table(plan, {99}));
}

TEST_CASE("throughput per mode") {
  {
    const auto cfg = catalog::multimode_2048();
    const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
    const auto plan = apply_interval(unroll(tree), 20, q540);
    const auto table = build_mode_table(plan, {});
    CHECK(throughput_report(plan, table, 0, 250e6).info_throughput_bps == doctest::Approx(17.0625e9));
  }
  {
    const auto cfg = catalog::multimode_1024();
    const auto tree = DecoderTree::build(cfg.master, cfg.constraints);
    const auto plan = apply_interval(unroll(tree), 20, q540);
    const auto table = build_mode_table(plan, resolve_modes(tree, {{512, 512}, {512, 256}}));
    const auto r = throughput_report(plan, table, 1, 500e6);
    CHECK(r.info_throughput_bps == doctest::Approx(12.25e9));
    CHECK(r.latency_cycles == table.modes[1].latency);
    // half the span, half the coded throughput
    CHECK(throughput_report(plan, table, 2, 500e6).coded_throughput_bps * 2 == doctest::Approx(r.coded_throughput_bps));
  }
}

TEST_CASE("trace CSV") {
  const auto tree = DecoderTree::build(catalog::code_8_4(), {});
  Pipeline<FixedDomain> pipe(apply_interval(unroll(tree), 3, q540), {}, FixedDomain{q540});
  const auto res = run_stream(pipe, 0, random_frames(8, 3, 5), true);
  std::ostringstream os;
  write_trace_csv(os, res.trace);
  const auto text = os.str();
  CHECK(text.rfind("cycle,phase,injected_frame,emitted_frame\n", 0) == 0);
  CHECK(static_cast<long>(std::count(text.begin(), text.end(), '\n')) == res.cycles + 1);
}
