#pragma once

// Command-line surface. Each cmd_* writes its report (JSON plus a CSV
// sibling where tabular) and returns the process exit status:
// 0 = success, 1 = a check or certificate failed, 2 = usage or input error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace schauder::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable consulted for the default seed; --seed wins.
inline constexpr const char* kSeedEnv = "SCHAUDER_SEED";

struct GenConfig {
  std::string kind = "gaussian";  // gaussian | schauder_mangled | onb_union | d1_scalars
  long n = 4;
  long d = 2;
  double scale_lo = 1.0;
  double scale_hi = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

struct AnalyzeConfig {
  std::string in;
  std::string out;
  int phase_steps = 48;
};

struct RescaleConfig {
  std::string in;
  std::string out;
  int max_iters = 2000;
  double tol = 1e-7;
  double step = 1.0;
  int phase_steps = 48;
  std::uint64_t seed = 1;
};

struct VerifyConfig {
  std::string suite = "all";  // khintchine | trace | chain | ratio | dilation | all
  int instances = 200;
  int draws = 100;
  int max_m = 12;
  long n = 5;
  long d = 3;
  double scale_lo = 1e-3;
  double scale_hi = 1e3;
  int phase_steps = 48;
  std::uint64_t seed = 1;
  std::string out;
};

struct BenchConfig {
  std::vector<std::pair<long, long>> grid;  // (n, d)
  int reps = 1;
  double budget_ms = 60000.0;
  int phase_steps = 48;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenConfig& cfg, std::ostream& log);
int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& log);
int cmd_rescale(const RescaleConfig& cfg, std::ostream& log);
int cmd_verify(const VerifyConfig& cfg, std::ostream& log);
int cmd_bench(const BenchConfig& cfg, std::ostream& log);

/// Parses "3x2,5x3" into (n, d) pairs; throws std::invalid_argument.
std::vector<std::pair<long, long>> parse_grid(const std::string& spec);

/// Full argument parsing and dispatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schauder::cli
