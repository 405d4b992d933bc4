#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace obk {

struct CheckOptions {
  /// replay every permutation of certificates with at most 4 steps
  bool all_permutations = false;
  /// run the seeded built-in properties
  bool builtin = true;
  std::uint64_t seed = 0;
  int samples = 200;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string reason;
};

struct CheckReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;

  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

struct NamedDocument {
  std::string name;
  std::string text;
};

/// Never throws on bad input: failures become report entries.
CheckReport run_checks(const std::vector<NamedDocument>& documents, const CheckOptions& options);

/// "PASS name" / "FAIL name: reason" lines and a summary line.
std::string format_text(const CheckReport& report);
std::string format_json(const CheckReport& report);

}  // namespace obk
