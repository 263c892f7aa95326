#include "polar/codespec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace polar {

namespace {

using json = nlohmann::json;

// ln phi(x) for Chung's approximation of the GA phi function.
double ln_phi(double x) {
  if (x <= 0.0) return 0.0;
  double v;
  if (x < 10.0)
    v = -0.4527 * std::pow(x, 0.86) + 0.0218;
  else
    v = 0.5 * std::log(M_PI / x) - x / 4.0 + std::log1p(-10.0 / (7.0 * x));
  return std::min(v, 0.0);
}

double inverse_ln_phi(double target) {
  if (target >= 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(20.0, -8.0 * target + 100.0);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ln_phi(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Expands a per-channel metric down the natural-order tree. `bad` maps a
// parent value to the left (F) child, `good` to the right (G) child.
template <typename Bad, typename Good>
std::vector<double> polarize(std::size_t n, double root, Bad bad, Good good) {
  std::vector<double> level{root};
  while (level.size() < n) {
    std::vector<double> next;
    next.reserve(level.size() * 2);
    for (double v : level) {
      next.push_back(bad(v));
      next.push_back(good(v));
    }
    level = std::move(next);
  }
  return level;
}

std::vector<std::size_t> sort_least_reliable_first(const std::vector<double>& unreliability) {
  std::vector<std::size_t> order(unreliability.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return unreliability[a] > unreliability[b]; });
  return order;
}

void check_length(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("code length " + std::to_string(n) + " is not a power of two");
}

}  // namespace

std::string to_string(ConstructionMethod m) {
  return m == ConstructionMethod::bhattacharyya ? "bhattacharyya" : "ga";
}

ConstructionMethod parse_method(const std::string& name) {
  if (name == "bhattacharyya" || name == "bhat") return ConstructionMethod::bhattacharyya;
  if (name == "ga" || name == "gaussian_approximation") return ConstructionMethod::gaussian_approximation;
  throw std::invalid_argument("unknown construction method '" + name + "'");
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::size_t n) {
  check_length(n);
  unsigned m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  return m;
}

CodeSpec::CodeSpec(std::size_t n, std::size_t k, std::vector<bool> frozen, Provenance provenance)
    : n_(n), k_(k), frozen_(std::move(frozen)), provenance_(std::move(provenance)) {
  check_length(n_);
  if (frozen_.size() != n_)
    throw std::invalid_argument("frozen mask has " + std::to_string(frozen_.size()) + " entries, expected " +
                                std::to_string(n_));
  if (k_ > n_) throw std::invalid_argument("k = " + std::to_string(k_) + " exceeds n = " + std::to_string(n_));
  const auto info = static_cast<std::size_t>(std::count(frozen_.begin(), frozen_.end(), false));
  if (info != k_)
    throw std::invalid_argument("mask has " + std::to_string(info) + " information positions but k = " +
                                std::to_string(k_));
}

CodeSpec CodeSpec::from_frozen_indices(std::size_t n, const std::vector<std::size_t>& frozen_indices,
                                       Provenance provenance) {
  check_length(n);
  std::vector<bool> mask(n, false);
  for (auto i : frozen_indices) {
    if (i >= n) throw std::invalid_argument("frozen index " + std::to_string(i) + " out of range");
    if (mask[i]) throw std::invalid_argument("duplicate frozen index " + std::to_string(i));
    mask[i] = true;
  }
  return CodeSpec(n, n - frozen_indices.size(), std::move(mask), std::move(provenance));
}

std::vector<std::size_t> CodeSpec::frozen_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (frozen_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> CodeSpec::info_indices() const {
  std::vector<std::size_t> out;
  out.reserve(k_);
  for (std::size_t i = 0; i < n_; ++i)
    if (!frozen_[i]) out.push_back(i);
  return out;
}

std::size_t CodeSpec::info_count(std::size_t offset, std::size_t length) const {
  std::size_t c = 0;
  for (std::size_t i = offset; i < offset + length; ++i) c += frozen_[i] ? 0 : 1;
  return c;
}

CodeSpec CodeSpec::sub_code(std::size_t offset, std::size_t length) const {
  if (!is_power_of_two(length) || offset % length != 0 || offset + length > n_)
    throw std::invalid_argument("span [" + std::to_string(offset) + ", +" + std::to_string(length) +
                                ") is not a node of the code tree");
  std::vector<bool> mask(frozen_.begin() + static_cast<std::ptrdiff_t>(offset),
                         frozen_.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return CodeSpec(length, info_count(offset, length), std::move(mask), Imported{id() + "@" + std::to_string(offset)});
}

std::string CodeSpec::id() const { return "(" + std::to_string(n_) + "," + std::to_string(k_) + ")"; }

ReliabilityOrder reliability_bhattacharyya(std::size_t n, double z0) {
  check_length(n);
  if (!(z0 > 0.0 && z0 < 1.0)) throw std::invalid_argument("Bhattacharyya parameter must lie in (0, 1)");
  // ln z; bad child 2z - z^2 = z(2 - z), good child z^2.
  auto lnz = polarize(
      n, std::log(z0), [](double l) { return l + std::log(2.0 - std::exp(l)); }, [](double l) { return 2.0 * l; });
  return {sort_least_reliable_first(lnz), ConstructionMethod::bhattacharyya};
}

ReliabilityOrder reliability_order(std::size_t n, ConstructionMethod method, double design_snr_db) {
  check_length(n);
  const double es_n0 = std::pow(10.0, design_snr_db / 10.0);
  if (method == ConstructionMethod::bhattacharyya) return reliability_bhattacharyya(n, std::exp(-es_n0));

  // Mean LLR of BPSK-AWGN: 2/sigma^2 with sigma^2 = 1/(2 Es/N0).
  auto means = polarize(
      n, 4.0 * es_n0,
      [](double m) {
        const double lp = ln_phi(m);
        return inverse_ln_phi(lp + std::log(2.0 - std::exp(lp)));
      },
      [](double m) { return 2.0 * m; });
  for (auto& m : means) m = -m;
  return {sort_least_reliable_first(means), ConstructionMethod::gaussian_approximation};
}

CodeSpec construct_from_order(std::size_t n, std::size_t k, const ReliabilityOrder& order, Provenance provenance) {
  check_length(n);
  if (k > n) throw std::invalid_argument("k = " + std::to_string(k) + " out of range for n = " + std::to_string(n));
  if (order.order.size() != n) throw std::invalid_argument("reliability order length mismatch");
  std::vector<bool> mask(n, false);
  for (std::size_t i = 0; i < n - k; ++i) mask[order.order[i]] = true;
  return CodeSpec(n, k, std::move(mask), std::move(provenance));
}

CodeSpec construct(std::size_t n, std::size_t k, double design_snr_db, ConstructionMethod method) {
  check_length(n);
  if (k > n) throw std::invalid_argument("k = " + std::to_string(k) + " out of range for n = " + std::to_string(n));
  return construct_from_order(n, k, reliability_order(n, method, design_snr_db), Constructed{method, design_snr_db});
}

CodeSpec assemble_master(const CodeSpec& left, const CodeSpec& right) {
  if (left.n() != right.n())
    throw std::invalid_argument("cannot assemble " + left.id() + " with " + right.id() + ": length mismatch");
  std::vector<bool> mask = left.frozen();
  mask.insert(mask.end(), right.frozen().begin(), right.frozen().end());
  return CodeSpec(2 * left.n(), left.k() + right.k(), std::move(mask), Assembled{left.id(), right.id()});
}

bool assembly_order_ok(const CodeSpec& left, const CodeSpec& right) { return left.k() * right.n() <= right.k() * left.n(); }

std::vector<SiblingViolation> check_sibling_rates(const CodeSpec& spec) {
  std::vector<SiblingViolation> out;
  for (std::size_t len = spec.n(); len >= 2; len /= 2) {
    for (std::size_t off = 0; off < spec.n(); off += len) {
      const std::size_t kl = spec.info_count(off, len / 2);
      const std::size_t kr = spec.info_count(off + len / 2, len / 2);
      if (kl > kr) out.push_back({off, len, kl, kr});
    }
  }
  return out;
}

std::string to_json(const CodeSpec& spec) {
  json j;
  j["n"] = spec.n();
  j["k"] = spec.k();
  j["frozen"] = spec.frozen_indices();
  json prov;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Constructed>) {
          prov["kind"] = "constructed";
          prov["method"] = to_string(p.method);
          prov["design_snr_db"] = p.design_snr_db;
        } else if constexpr (std::is_same_v<T, Assembled>) {
          prov["kind"] = "assembled";
          prov["left"] = p.left_id;
          prov["right"] = p.right_id;
        } else {
          prov["kind"] = "imported";
          prov["path"] = p.path;
        }
      },
      spec.provenance());
  j["provenance"] = prov;
  return j.dump(2);
}

CodeSpec from_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed code spec " + origin + ": " + e.what());
  }
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto k = j.at("k").get<std::size_t>();
    const auto frozen = j.at("frozen").get<std::vector<std::size_t>>();
    if (!std::is_sorted(frozen.begin(), frozen.end()))
      throw std::invalid_argument("frozen indices must be ascending");
    Provenance prov = Imported{origin};
    if (j.contains("provenance")) {
      const auto& p = j["provenance"];
      const auto kind = p.at("kind").get<std::string>();
      if (kind == "constructed")
        prov = Constructed{parse_method(p.at("method").get<std::string>()), p.at("design_snr_db").get<double>()};
      else if (kind == "assembled")
        prov = Assembled{p.at("left").get<std::string>(), p.at("right").get<std::string>()};
      else if (kind == "imported")
        prov = Imported{p.value("path", origin)};
      else
        throw std::invalid_argument("unknown provenance kind '" + kind + "'");
    }
    auto spec = CodeSpec::from_frozen_indices(n, frozen, prov);
    if (spec.k() != k)
      throw std::invalid_argument("k = " + std::to_string(k) + " but frozen list leaves " + std::to_string(spec.k()) +
                                  " information bits");
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed code spec " + origin + ": " + e.what());
  }
}

void save_spec(const CodeSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(spec) << '\n';
}

CodeSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str(), path.string());
}

}  // namespace polar
