#pragma once

// Suite orchestration and the three command-line verbs.
//
// Exit codes: 0 all batteries passed, 1 some battery failed, 2 input or schema
// error, 3 numeric degeneracy (more than 10% of samples skipped, or no base
// point found).

#include "parasurf/scene_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace parasurf {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;

inline constexpr double kMaxSkippedFraction = 0.10;

struct RunOptions {
  bool diagnostic = false;
  bool timing = true;
};

struct RunResult {
  nlohmann::json report;
  std::string summary;
  int exit_code = kExitPass;
  SceneEvaluation evaluation;
  std::vector<TheoremReport> suites;
};

RunResult run_verify(const SceneFile& file, const RunOptions& options);

/// Scene file with a random QuadricSpec, base point, tangent basis and
/// default sampling; deterministic in (n, seed).
nlohmann::json make_quadric_scene_file(int n, std::uint64_t seed);

int cmd_verify(const std::string& path, const std::optional<std::string>& json_path, const RunOptions& options,
               std::ostream& out, std::ostream& err);
int cmd_gen_quadric(int n, std::uint64_t seed, const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& path, const std::string& param, const std::vector<double>& values,
              std::ostream& out, std::ostream& err);

/// Parses "a,b,c". Throws SchemaError on anything that is not a number.
std::vector<double> parse_value_list(const std::string& text);

} // namespace parasurf
