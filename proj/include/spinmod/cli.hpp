#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinmod {

inline constexpr const char* kSchemaVersion = "spin-moduli/1";

struct VerifyBounds {
  std::size_t max_delta = 6;
  int max_genus = 3;
  std::vector<std::uint64_t> primes{5, 13};
  std::size_t random_graphs = 100;
  std::size_t torsor_max_delta = 4;
  std::size_t invariant_max_delta = 4;
  unsigned degree_bound = 6;
  std::size_t cross_oracle_max_delta = 3;
};

struct RunConfig {
  enum class Command { supports, local, strata, verify, all };
  enum class Format { json, text };

  Command command = Command::all;
  std::string input_path;
  int g1 = 1;
  int g2 = 1;
  std::size_t delta = 0;
  std::optional<std::uint64_t> q;
  Format format = Format::json;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  VerifyBounds bounds;
  /// Harness self-test: evaluates the degree identity with the multiplicity
  /// exponent raised by one.
  bool inject_multiplicity_fault = false;
};

/// One line of the aggregate verification stream.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string witness;
  std::string note;

  nlohmann::ordered_json to_json() const;
};

struct AggregateVerdict {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs every verification family within the configured bounds.
AggregateVerdict verify_all(const RunConfig& config);

/// Executes one command, writing the report to `out` and diagnostics to
/// `err`. Returns 0 when all verifications pass, 1 on a verification
/// failure, 2 on an input error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spinmod
