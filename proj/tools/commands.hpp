#pragma once

#include "sandpile/graphs.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sandpile::cli {

// Process exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsageError = 2;

// Environment variable holding the default brute-force ring-size cap.
inline constexpr const char* kBruteCapEnv = "SANDPILE_BRUTE_CAP";

struct CheckResult {
  std::string name;
  nlohmann::json expected;
  nlohmann::json actual;
  bool pass = false;
  double runtime_ms = 0;
};

struct VerificationReport {
  Family family = Family::DeBruijn;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

void to_json(nlohmann::json& j, const VerificationReport& r);

// Check names accepted by --checks.
const std::vector<std::string>& known_checks();

// Runs the enabled cross-checks for one instance.
VerificationReport verify_instance(Family family, std::int64_t n, std::int64_t d,
                                   const std::vector<std::string>& checks);

struct SweepOptions {
  std::vector<Family> families{Family::DeBruijn, Family::Kautz};
  std::int64_t n_max = 64;
  std::int64_t d_max = 9;
  std::vector<std::string> checks;  // empty = all
  unsigned workers = 1;
};

// All instances (family, 2 <= n <= n_max, 2 <= d <= d_max), in a fixed order
// regardless of the worker count.
std::vector<VerificationReport> run_sweep(const SweepOptions& options);

std::uint64_t default_brute_cap();

// Entry point shared by main() and the tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sandpile::cli
