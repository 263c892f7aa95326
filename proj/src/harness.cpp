#include "polar/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>

#include "polar/llr_domain.hpp"
#include "polar/pipesim.hpp"
#include "polar/sc_ref.hpp"
#include "polar/unroll.hpp"

namespace polar {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SplitMix64 frame_rng(std::uint64_t seed, std::uint64_t point, std::uint64_t frame) {
  return SplitMix64(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(point + 0x3c6ef372fe94f82bULL)) ^
                    (frame * 0x9e3779b97f4a7c15ULL));
}

double ChannelConfig::sigma2() const { return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)); }

void ChannelConfig::validate() const {
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("code rate must lie in (0, 1]");
  if (!std::isfinite(ebn0_db)) throw std::invalid_argument("Eb/N0 must be finite");
}

std::vector<double> transmit(const BitVec& codeword, const ChannelConfig& cfg, SplitMix64& rng) {
  const double s2 = cfg.sigma2();
  const double sigma = std::sqrt(s2);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> llr(codeword.size());
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    double y = codeword[i] ? -1.0 : 1.0;
    if (!cfg.noiseless) y += sigma * noise(rng);
    llr[i] = 2.0 * y / s2;
  }
  return llr;
}

std::string to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::sc_float: return "sc_float";
    case DecoderKind::sc_fixed: return "sc_fixed";
    case DecoderKind::fastssc_float: return "fastssc_float";
    case DecoderKind::fastssc_fixed: return "fastssc_fixed";
    case DecoderKind::pipesim: return "pipesim";
  }
  return "?";
}

DecoderKind parse_decoder(const std::string& name) {
  for (auto k : {DecoderKind::sc_float, DecoderKind::sc_fixed, DecoderKind::fastssc_float, DecoderKind::fastssc_fixed,
                 DecoderKind::pipesim})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown decoder '" + name + "'");
}

bool is_fixed_point(DecoderKind k) { return k != DecoderKind::sc_float && k != DecoderKind::fastssc_float; }

namespace {

struct Frame {
  BitVec codeword;
  std::vector<double> llr;
};

struct Outcome {
  std::uint32_t bit_errors = 0;
  bool frame_error = false;
  std::uint64_t segment_mask = 0;
};

// Shared, read-only context for one sweep.
struct Context {
  const CodeSpec& spec;
  const SimOptions& opt;
  std::vector<std::size_t> info_idx;
  std::unique_ptr<DecoderTree> tree;
  std::unique_ptr<PipelinePlan> plan;

  Context(const CodeSpec& s, const SimOptions& o) : spec(s), opt(o), info_idx(s.info_indices()) {
    if (opt.segments.size() > 64) throw std::invalid_argument("at most 64 segments are supported");
    for (const auto& [off, len] : opt.segments)
      if (off + len > spec.n()) throw std::invalid_argument("segment outside the code");
    if (is_fixed_point(opt.decoder)) opt.quant.validate();
    if (opt.decoder != DecoderKind::sc_float && opt.decoder != DecoderKind::sc_fixed)
      tree = std::make_unique<DecoderTree>(DecoderTree::build(spec, opt.constraints));
    if (opt.decoder == DecoderKind::pipesim)
      plan = std::make_unique<PipelinePlan>(apply_interval(unroll(*tree), opt.interval, opt.quant));
  }

  Frame make_frame(const ChannelConfig& cfg, std::uint64_t point, std::uint64_t frame) const {
    auto rng = frame_rng(opt.seed, point, frame);
    BitVec info(spec.k());
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < info.size(); ++i) {
      if (i % 64 == 0) word = rng();
      info[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    Frame f;
    f.codeword = encode_systematic(spec, info);
    f.llr = transmit(f.codeword, cfg, rng);
    return f;
  }

  Outcome score(const Frame& f, const BitVec& est) const {
    Outcome o;
    for (std::size_t i : info_idx) {
      if (est[i] != f.codeword[i]) {
        ++o.bit_errors;
        for (std::size_t s = 0; s < opt.segments.size(); ++s)
          if (i >= opt.segments[s].first && i < opt.segments[s].first + opt.segments[s].second)
            o.segment_mask |= std::uint64_t{1} << s;
      }
    }
    o.frame_error = o.bit_errors > 0;
    return o;
  }
};

// Per-thread decoder state.
class Worker {
 public:
  explicit Worker(const Context& ctx) : ctx_(ctx), fixed_(ctx.opt.quant) {
    switch (ctx.opt.decoder) {
      case DecoderKind::sc_float: scf_ = std::make_unique<ScDecoder<FloatDomain>>(ctx.spec, FloatDomain{}); break;
      case DecoderKind::sc_fixed: scq_ = std::make_unique<ScDecoder<FixedDomain>>(ctx.spec, fixed_); break;
      case DecoderKind::fastssc_float:
        fsf_ = std::make_unique<FastSscDecoder<FloatDomain>>(*ctx.tree, FloatDomain{});
        break;
      case DecoderKind::fastssc_fixed: fsq_ = std::make_unique<FastSscDecoder<FixedDomain>>(*ctx.tree, fixed_); break;
      case DecoderKind::pipesim: pipe_ = std::make_unique<Pipeline<FixedDomain>>(*ctx.plan, std::vector<int>{}, fixed_); break;
    }
  }

  /// Decodes frames[first, last) and writes their outcomes.
  void run(const std::vector<Frame>& frames, std::size_t first, std::size_t last, std::vector<Outcome>& out) {
    if (pipe_) {
      std::vector<LlrVec<QLlr>> q;
      for (std::size_t i = first; i < last; ++i) q.push_back(quantize(frames[i].llr));
      auto res = run_stream(*pipe_, 0, q);
      if (res.hazards != 0 || res.late_or_early != 0) throw std::logic_error("pipeline hazard during simulation");
      for (auto& o : res.outputs)
        out[first + static_cast<std::size_t>(o.frame)] = ctx_.score(frames[first + static_cast<std::size_t>(o.frame)], o.bits);
      return;
    }
    for (std::size_t i = first; i < last; ++i) out[i] = ctx_.score(frames[i], decode(frames[i].llr));
  }

  BitVec decode(const std::vector<double>& llr) {
    if (scf_) return scf_->decode(llr);
    if (fsf_) return fsf_->decode(llr);
    const auto q = quantize(llr);
    if (scq_) return scq_->decode(q);
    return fsq_->decode(q);
  }

 private:
  LlrVec<QLlr> quantize(const std::vector<double>& llr) const {
    return quantize_frame(llr, ctx_.opt.quant, ctx_.opt.llr_scale);
  }

  const Context& ctx_;
  FixedDomain fixed_;
  std::unique_ptr<ScDecoder<FloatDomain>> scf_;
  std::unique_ptr<ScDecoder<FixedDomain>> scq_;
  std::unique_ptr<FastSscDecoder<FloatDomain>> fsf_;
  std::unique_ptr<FastSscDecoder<FixedDomain>> fsq_;
  std::unique_ptr<Pipeline<FixedDomain>> pipe_;
};

ChannelConfig point_config(const CodeSpec& spec, const SimOptions& opt, double ebn0) {
  ChannelConfig cfg{ebn0, spec.rate(), opt.seed, opt.llr_scale, opt.noiseless};
  cfg.validate();
  return cfg;
}

ResultRow make_row(const CodeSpec& spec, const SimOptions& opt, double ebn0) {
  ResultRow r;
  r.ebn0_db = ebn0;
  r.decoder = to_string(opt.decoder);
  r.quant = is_fixed_point(opt.decoder) ? opt.quant.str() : "float";
  r.code = spec.id();
  r.segment_frame_errors.assign(opt.segments.size(), 0);
  return r;
}

// Adds one outcome; returns true when the stop rule fires.
bool accumulate(ResultRow& r, const Outcome& o, const StopRule& stop) {
  ++r.frames;
  r.bit_errors += o.bit_errors;
  r.frame_errors += o.frame_error ? 1 : 0;
  for (std::size_t s = 0; s < r.segment_frame_errors.size(); ++s)
    r.segment_frame_errors[s] += (o.segment_mask >> s) & 1u;
  return r.frame_errors >= stop.min_frame_errors || r.frames >= stop.max_frames;
}

void finish(ResultRow& r, std::size_t k) {
  r.fer = r.frames ? static_cast<double>(r.frame_errors) / static_cast<double>(r.frames) : 0.0;
  r.ber = r.frames && k ? static_cast<double>(r.bit_errors) / (static_cast<double>(r.frames) * static_cast<double>(k))
                        : 0.0;
}

void check_stop(const StopRule& s) {
  if (s.max_frames == 0) throw std::invalid_argument("max_frames must be positive");
}

}  // namespace

std::vector<ResultRow> montecarlo_serial(const CodeSpec& spec, const std::vector<double>& ebn0_db,
                                         const SimOptions& opt) {
  check_stop(opt.stop);
  Context ctx(spec, opt);
  Worker w(ctx);
  std::vector<ResultRow> rows;
  for (std::size_t p = 0; p < ebn0_db.size(); ++p) {
    const auto cfg = point_config(spec, opt, ebn0_db[p]);
    ResultRow row = make_row(spec, opt, ebn0_db[p]);
    for (std::uint64_t f = 0;; ++f) {
      std::vector<Frame> one{ctx.make_frame(cfg, p, f)};
      std::vector<Outcome> out(1);
      w.run(one, 0, 1, out);
      if (accumulate(row, out[0], opt.stop)) break;
    }
    finish(row, spec.k());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> montecarlo(const CodeSpec& spec, const std::vector<double>& ebn0_db, const SimOptions& opt) {
  check_stop(opt.stop);
  Context ctx(spec, opt);
  const int workers = opt.workers > 0 ? opt.workers : omp_get_max_threads();
  constexpr std::size_t chunk = 16;
  const std::size_t batch = chunk * static_cast<std::size_t>(std::max(4 * workers, 8));
  std::vector<ResultRow> rows;
  std::vector<Frame> frames(batch);
  std::vector<Outcome> outcomes(batch);
  for (std::size_t p = 0; p < ebn0_db.size(); ++p) {
    const auto cfg = point_config(spec, opt, ebn0_db[p]);
    ResultRow row = make_row(spec, opt, ebn0_db[p]);
    bool stop = false;
    for (std::uint64_t base = 0; !stop; base += batch) {
      const std::size_t count =
          static_cast<std::size_t>(std::min<std::uint64_t>(batch, opt.stop.max_frames - base));
      const long n_chunks = static_cast<long>((count + chunk - 1) / chunk);
      std::exception_ptr err;
#pragma omp parallel num_threads(workers)
      {
        try {
          Worker w(ctx);
#pragma omp for schedule(dynamic, 1)
          for (long c = 0; c < n_chunks; ++c) {
            const std::size_t first = static_cast<std::size_t>(c) * chunk;
            const std::size_t last = std::min(count, first + chunk);
            for (std::size_t i = first; i < last; ++i) frames[i] = ctx.make_frame(cfg, p, base + i);
            w.run(frames, first, last, outcomes);
          }
        } catch (...) {
#pragma omp critical
          err = std::current_exception();
        }
      }
      if (err) std::rethrow_exception(err);
      for (std::size_t i = 0; i < count && !stop; ++i) stop = accumulate(row, outcomes[i], opt.stop);
    }
    finish(row, spec.k());
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "ebn0_db,frames,bit_errors,frame_errors,ber,fer,decoder,quant,code\n";
  for (const auto& r : rows) {
    os << r.ebn0_db << ',' << r.frames << ',' << r.bit_errors << ',' << r.frame_errors << ','
       << std::setprecision(6) << std::scientific << r.ber << ',' << r.fer << std::defaultfloat << ','
       << r.decoder << ',' << r.quant << ",\"" << r.code << "\"\n";
  }
}

namespace {

struct EqContext {
  const CodeSpec& spec;
  QuantSpec q;
  DecoderTree tree;
  ChannelConfig cfg;
  std::uint64_t seed;
  bool fixed;

  BitVec frame_codeword(SplitMix64& rng) const {
    BitVec info(spec.k());
    for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
    return encode_systematic(spec, info);
  }
};

class EqWorker {
 public:
  explicit EqWorker(const EqContext& c)
      : c_(c),
        scf_(c.spec, FloatDomain{}),
        scq_(c.spec, FixedDomain{c.q}),
        fsf_(c.tree, FloatDomain{}),
        fsq_(c.tree, FixedDomain{c.q}) {}

  bool mismatch(std::uint64_t frame) {
    auto rng = frame_rng(c_.seed, 0, frame);
    const auto cw = c_.frame_codeword(rng);
    const auto llr = transmit(cw, c_.cfg, rng);
    if (!c_.fixed) return scf_.decode(llr) != fsf_.decode(llr);
    const auto q = quantize_frame(llr, c_.q);
    return scq_.decode(q) != fsq_.decode(q);
  }

 private:
  const EqContext& c_;
  ScDecoder<FloatDomain> scf_;
  ScDecoder<FixedDomain> scq_;
  FastSscDecoder<FloatDomain> fsf_;
  FastSscDecoder<FixedDomain> fsq_;
};

EqContext make_eq_context(const CodeSpec& spec, const QuantSpec& q, const NodeConstraints& c, double ebn0,
                          std::uint64_t seed, bool fixed) {
  q.validate();
  ChannelConfig cfg{ebn0, spec.k() ? spec.rate() : 1.0, seed, 1.0, false};
  cfg.validate();
  return EqContext{spec, q, DecoderTree::build(spec, c), cfg, seed, fixed};
}

}  // namespace

EquivalenceReport equivalence_run_serial(const CodeSpec& spec, const QuantSpec& q, const NodeConstraints& c,
                                         std::uint64_t trials, double ebn0_db, std::uint64_t seed, bool fixed) {
  const auto ctx = make_eq_context(spec, q, c, ebn0_db, seed, fixed);
  EqWorker w(ctx);
  EquivalenceReport r;
  r.trials = trials;
  for (std::uint64_t f = 0; f < trials; ++f) {
    if (w.mismatch(f)) {
      ++r.mismatches;
      if (r.first_mismatches.size() < 10) r.first_mismatches.push_back(f);
    }
  }
  return r;
}

EquivalenceReport equivalence_run(const CodeSpec& spec, const QuantSpec& q, const NodeConstraints& c,
                                  std::uint64_t trials, double ebn0_db, std::uint64_t seed, int workers, bool fixed) {
  const auto ctx = make_eq_context(spec, q, c, ebn0_db, seed, fixed);
  const int nt = workers > 0 ? workers : omp_get_max_threads();
  std::vector<std::uint8_t> bad(trials, 0);
  std::exception_ptr err;
#pragma omp parallel num_threads(nt)
  {
    try {
      EqWorker w(ctx);
#pragma omp for schedule(dynamic, 64)
      for (long long f = 0; f < static_cast<long long>(trials); ++f)
        bad[static_cast<std::size_t>(f)] = w.mismatch(static_cast<std::uint64_t>(f)) ? 1 : 0;
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  EquivalenceReport r;
  r.trials = trials;
  for (std::uint64_t f = 0; f < trials; ++f) {
    if (bad[f]) {
      ++r.mismatches;
      if (r.first_mismatches.size() < 10) r.first_mismatches.push_back(f);
    }
  }
  return r;
}

}  // namespace polar
