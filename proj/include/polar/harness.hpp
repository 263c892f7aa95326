// BPSK-AWGN channel and Monte-Carlo error-rate estimation.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "polar/codespec.hpp"
#include "polar/encoder.hpp"
#include "polar/fastssc.hpp"
#include "polar/quant.hpp"

namespace polar {

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t s_;
};

/// Independent stream for one frame of one sweep point.
SplitMix64 frame_rng(std::uint64_t seed, std::uint64_t point, std::uint64_t frame);

struct ChannelConfig {
  double ebn0_db = 0.0;
  double rate = 1.0;
  std::uint64_t seed = 0;
  double llr_scale = 1.0;  // applied before channel quantization
  bool noiseless = false;

  double sigma2() const;
  void validate() const;
};

/// BPSK (0 -> +1), AWGN, LLR = 2y / sigma^2.
std::vector<double> transmit(const BitVec& codeword, const ChannelConfig& cfg, SplitMix64& rng);

enum class DecoderKind { sc_float, sc_fixed, fastssc_float, fastssc_fixed, pipesim };

std::string to_string(DecoderKind k);
DecoderKind parse_decoder(const std::string& name);
bool is_fixed_point(DecoderKind k);

struct ResultRow {
  double ebn0_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  double ber = 0.0;
  double fer = 0.0;
  std::string decoder;
  std::string quant;
  std::string code;
  std::vector<std::uint64_t> segment_frame_errors;  // one per requested segment

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct StopRule {
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 1'000'000;
};

struct SimOptions {
  DecoderKind decoder = DecoderKind::fastssc_fixed;
  QuantSpec quant{};
  NodeConstraints constraints{};
  long interval = 1;  // pipesim only
  StopRule stop{};
  std::uint64_t seed = 1;
  double llr_scale = 1.0;
  bool noiseless = false;
  int workers = 0;  // 0 = OpenMP default
  /// Info-bit frame errors are also counted per (offset, length) segment.
  std::vector<std::pair<std::size_t, std::size_t>> segments;
};

/// Parallel sweep. Rows depend only on the options, never on worker count.
std::vector<ResultRow> montecarlo(const CodeSpec& spec, const std::vector<double>& ebn0_db, const SimOptions& opt);

/// Frame-by-frame reference for the parallel sweep.
std::vector<ResultRow> montecarlo_serial(const CodeSpec& spec, const std::vector<double>& ebn0_db,
                                         const SimOptions& opt);

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

struct EquivalenceReport {
  std::uint64_t trials = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::uint64_t> first_mismatches;  // up to 10 frame ids
};

/// SC and Fast-SSC on identical quantized LLR streams (or float LLRs when
/// `fixed` is false).
EquivalenceReport equivalence_run(const CodeSpec& spec, const QuantSpec& q, const NodeConstraints& c,
                                  std::uint64_t trials, double ebn0_db, std::uint64_t seed, int workers = 0,
                                  bool fixed = true);

EquivalenceReport equivalence_run_serial(const CodeSpec& spec, const QuantSpec& q, const NodeConstraints& c,
                                         std::uint64_t trials, double ebn0_db, std::uint64_t seed, bool fixed = true);

}  // namespace polar
