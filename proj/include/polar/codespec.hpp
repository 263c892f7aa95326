// Polar code definitions: frozen sets, construction, master-code assembly
// and the JSON code-spec file format.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace polar {

enum class ConstructionMethod { bhattacharyya, gaussian_approximation };

std::string to_string(ConstructionMethod m);
ConstructionMethod parse_method(const std::string& name);

struct Constructed {
  ConstructionMethod method = ConstructionMethod::gaussian_approximation;
  double design_snr_db = 0.0;  // Es/N0 of the BPSK-AWGN design channel
  friend bool operator==(const Constructed&, const Constructed&) = default;
};

struct Assembled {
  std::string left_id;
  std::string right_id;
  friend bool operator==(const Assembled&, const Assembled&) = default;
};

struct Imported {
  std::string path;
  friend bool operator==(const Imported&, const Imported&) = default;
};

using Provenance = std::variant<Constructed, Assembled, Imported>;

/// An (n, k) polar code. frozen[i] is true for frozen positions, natural
/// (non bit-reversed) index order.
class CodeSpec {
 public:
  CodeSpec(std::size_t n, std::size_t k, std::vector<bool> frozen, Provenance provenance);

  /// Builds from a list of frozen indices; k is derived.
  static CodeSpec from_frozen_indices(std::size_t n, const std::vector<std::size_t>& frozen_indices,
                                      Provenance provenance = Imported{});

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  double rate() const { return static_cast<double>(k_) / static_cast<double>(n_); }
  const std::vector<bool>& frozen() const { return frozen_; }
  bool is_frozen(std::size_t i) const { return frozen_[i]; }
  const Provenance& provenance() const { return provenance_; }

  std::vector<std::size_t> frozen_indices() const;
  std::vector<std::size_t> info_indices() const;

  /// Number of information bits in [offset, offset + length).
  std::size_t info_count(std::size_t offset, std::size_t length) const;

  /// The constituent code spanning [offset, offset + length).
  CodeSpec sub_code(std::size_t offset, std::size_t length) const;

  /// "(n,k)"
  std::string id() const;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<bool> frozen_;
  Provenance provenance_;
};

bool is_power_of_two(std::size_t n);
unsigned log2_exact(std::size_t n);

struct ReliabilityOrder {
  std::vector<std::size_t> order;  // least to most reliable
  ConstructionMethod method;
};

/// Bhattacharyya-parameter recursion started from z0 (z0 = erasure
/// probability for a BEC). Computed in the log domain.
ReliabilityOrder reliability_bhattacharyya(std::size_t n, double z0);

/// Reliability order for BPSK-AWGN at the given design Es/N0 (dB).
ReliabilityOrder reliability_order(std::size_t n, ConstructionMethod method, double design_snr_db);

CodeSpec construct(std::size_t n, std::size_t k, double design_snr_db, ConstructionMethod method);
CodeSpec construct_from_order(std::size_t n, std::size_t k, const ReliabilityOrder& order, Provenance provenance);

/// Concatenates left || right into a code of twice the length.
CodeSpec assemble_master(const CodeSpec& left, const CodeSpec& right);

/// True when the left constituent's rate does not exceed the right one's.
bool assembly_order_ok(const CodeSpec& left, const CodeSpec& right);

struct SiblingViolation {
  std::size_t offset;
  std::size_t length;
  std::size_t k_left;
  std::size_t k_right;
};

/// Nodes of the full span tree whose left half carries more information
/// bits than its right half.
std::vector<SiblingViolation> check_sibling_rates(const CodeSpec& spec);

std::string to_json(const CodeSpec& spec);
CodeSpec from_json(const std::string& text, const std::string& origin = {});
void save_spec(const CodeSpec& spec, const std::filesystem::path& path);
CodeSpec load_spec(const std::filesystem::path& path);

}  // namespace polar
