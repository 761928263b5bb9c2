#ifndef FRCERT_SUITE_HPP
#define FRCERT_SUITE_HPP

#include "frcert/generator.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace frcert {

struct SuiteEntry {
  std::string stem;      // files <stem>.dat-s and <stem>.cert
  std::string category;  // e.g. "messy-weak-m20"
  std::uint64_t seed = 0;
  bool verified = false;           // bundle verifies against the generated instance
  bool reimport_verified = false;  // bundle verifies against the re-imported SDPA file
  std::string failure;
};

struct SuiteManifest {
  std::uint64_t master_seed = 0;
  Index per_category = 0;
  std::vector<SuiteEntry> entries;

  bool all_verified() const;
  std::string to_json() const;
};

/// The eight categories: {clean, messy} x {infeasible, weak} x {m=10, m=20}.
std::vector<std::string> suite_categories();

/// Generates, writes and self-verifies per_category instances of each
/// category into outdir (created if missing), plus manifest.json.
SuiteManifest run_suite(const std::filesystem::path& outdir, Index per_category, std::uint64_t master_seed);

}  // namespace frcert

#endif  // FRCERT_SUITE_HPP
