#include "polar/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace polar::catalog {

CodeSpec code_1024_853() { return construct(1024, 853, kHighRateDesignDb, ConstructionMethod::bhattacharyya); }

CodeSpec code_1024_512() { return construct(1024, 512, kHalfRateDesignDb, ConstructionMethod::bhattacharyya); }

CodeSpec code_2048_1365() { return assemble_master(code_1024_512(), code_1024_853()); }

CodeSpec code_8_4() { return CodeSpec::from_frozen_indices(8, {0, 1, 2, 4}, Imported{"builtin:8-4"}); }

CodeSpec code_16_12() { return CodeSpec::from_frozen_indices(16, {0, 1, 2, 4}, Imported{"builtin:16-12"}); }

namespace {

std::string normalize(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }), s.end());
  std::replace(s.begin(), s.end(), ',', '-');
  return s;
}

}  // namespace

std::vector<std::string> preset_names() { return {"8-4", "16-12", "1024-512", "1024-853", "2048-1365"}; }

CodeSpec preset(const std::string& name) {
  const auto n = normalize(name);
  if (n == "8-4") return code_8_4();
  if (n == "16-12") return code_16_12();
  if (n == "1024-512") return code_1024_512();
  if (n == "1024-853") return code_1024_853();
  if (n == "2048-1365") return code_2048_1365();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

MultiModeConfig multimode_1024() {
  return {"nmax1024",
          code_1024_853(),
          NodeConstraints{8, 4, false},
          500e6,
          20,
          {
              {"(1024,853)", 0, 1024, 853, 323, 21.3},
              {"(512,490)", 512, 512, 490, 95, 12.3},
              {"(512,363)", 0, 512, 363, 226, 9.1},
              {"(256,228)", 256, 256, 228, 86, 5.7},
              {"(256,135)", 0, 256, 135, 138, 3.4},
              {"(128,108)", 512, 128, 108, 54, 2.7},
              {"(128,96)", 128, 128, 96, 82, 2.4},
              {"(128,39)", 0, 128, 39, 54, 0.98},
          }};
}

MultiModeConfig multimode_2048() {
  return {"nmax2048",
          code_2048_1365(),
          NodeConstraints{16, 8, true},
          250e6,
          20,
          {
              {"(2048,1365)", 0, 2048, 1365, 503, 17.1},
              {"(1024,853)", 1024, 1024, 853, 236, 10.7},
              {"(1024,512)", 0, 1024, 512, 265, 6.4},
              {"(512,490)", 1536, 512, 490, 75, 6.2},
              {"(512,363)", 1024, 512, 363, 159, 4.5},
              {"(256,228)", 1280, 256, 228, 61, 2.6},
              {"(256,135)", 1024, 256, 135, 96, 1.7},
              {"(128,108)", 1536, 128, 108, 40, 1.4},
              {"(128,96)", 1152, 128, 96, 52, 1.2},
              {"(128,39)", 1024, 128, 39, 42, 0.49},
          }};
}

std::vector<ModeCode> ten_codes() { return multimode_2048().codes; }

NodeConstraints dedicated_constraints() { return NodeConstraints{8, 4, false}; }

std::vector<DedicatedRef> length_series() {
  return {{128, 64, kHalfRateDesignDb, 76, -1},
          {256, 128, kHalfRateDesignDb, 134, -1},
          {512, 256, kHalfRateDesignDb, 204, -1},
          {1024, 512, kHalfRateDesignDb, 364, 167},
          {2048, 1024, kHalfRateDesignDb, 652, -1}};
}

std::vector<DedicatedRef> imax_series() {
  return {{1024, 853, kHighRateDesignDb, 323, 206},
          {2048, 1707, kHighRateDesignDb, 444, 338},
          {4096, 3413, kHighRateDesignDb, 866, 665}};
}

std::vector<DedicatedRef> rate_series() {
  return {{1024, 512, kHalfRateDesignDb, 364, -1},
          {1024, 683, kHighRateDesignDb, 326, -1},
          {1024, 768, kHighRateDesignDb, 373, -1},
          {1024, 853, kHighRateDesignDb, 323, -1}};
}

std::vector<AreaRef> area_series() {
  return {{128, 0.05, 0.29}, {256, 0.12, 0.99}, {512, 0.27, 3.14}, {1024, 0.60, 11.75}, {2048, 1.32, 42.16}};
}

}  // namespace polar::catalog
