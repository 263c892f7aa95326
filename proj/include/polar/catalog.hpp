// Named code presets, the two multi-mode decoder configurations and the
// reference figures used as calibration targets by `report` and the
// acceptance run.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polar/codespec.hpp"
#include "polar/fastssc.hpp"

namespace polar::catalog {

/// Design Es/N0 (dB) of the Bhattacharyya presets.
inline constexpr double kHighRateDesignDb = 5.0;
inline constexpr double kHalfRateDesignDb = -0.5;

CodeSpec code_1024_853();
CodeSpec code_1024_512();
/// (1024,512) || (1024,853).
CodeSpec code_2048_1365();

/// The (8,4) code with frozen {0,1,2,4} and the (16,12) code with frozen {0,1,2,4}.
CodeSpec code_8_4();
CodeSpec code_16_12();

/// Looks up "1024-853", "(1024,853)", "8-4", ...
CodeSpec preset(const std::string& name);
std::vector<std::string> preset_names();

struct ModeCode {
  std::string id;
  std::size_t offset;  // span in the master code
  std::size_t length;
  std::size_t k;
  long ref_latency;     // cycles, load/decode/offload included
  double ref_info_gbps;
};

struct MultiModeConfig {
  std::string name;
  CodeSpec master;
  NodeConstraints constraints;
  double f_hz;
  long interval;
  std::vector<ModeCode> codes;  // codes[0] is the master
};

MultiModeConfig multimode_1024();
MultiModeConfig multimode_2048();

/// The ten distinct codes served by the two multi-mode decoders, with the
/// constraints of the larger decoder.
std::vector<ModeCode> ten_codes();

struct DedicatedRef {
  std::size_t n;
  std::size_t k;
  double design_db;
  long ref_latency = -1;  // cycles
  long ref_imax = -1;
};

/// Rate-1/2 deep pipelines of increasing length.
std::vector<DedicatedRef> length_series();
/// Rate-5/6 partial pipelines at I = I_max.
std::vector<DedicatedRef> imax_series();
/// N = 1024 at several rates.
std::vector<DedicatedRef> rate_series();

NodeConstraints dedicated_constraints();

struct AreaRef {
  std::size_t n;
  double logic_mm2;
  double memory_mm2;
};

std::vector<AreaRef> area_series();

}  // namespace polar::catalog
