#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "ghostlab/reasoning_dag.hpp"
#include "ghostlab/regularity_metrics.hpp"
#include "ghostlab/solver.hpp"
#include "ghostlab/threshold.hpp"

namespace ghostlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
};

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = "ghostlab_out";
  std::uint64_t seed = 0;
  int threads = 1;
};

// ---------------------------------------------------------------------------
// classify

struct ClassifyConfig {
  std::vector<GrowthParams> rows;
};

struct VerdictRow {
  GrowthParams params;
  RegularityVerdict verdict;
};

/// Exactly one of: tuples = "p q alpha n | ...", a p/q/alpha/n grid
/// (cartesian product), or random_samples = N (drawn from seed).
ClassifyConfig parse_classify(const IniFile& ini, std::uint64_t seed);
std::vector<VerdictRow> cmd_classify(const ClassifyConfig& config);
void write_verdicts_csv(std::ostream& out, const std::vector<VerdictRow>& rows);

// ---------------------------------------------------------------------------
// sweep

enum class BoundaryFixture {
  Affine,      // x2: constant gradient along the level lines of a(x), an exact minimizer
  TiltedWave,  // 3 x1 + cos(pi x2)
  Saddle,      // 3 ((x1 - 1/2)^2 - (x2 - 1/2)^2)
};

std::string_view to_string(BoundaryFixture b);
double boundary_value(BoundaryFixture b, Point x);

struct MetricsSettings {
  Point holder_center{0.5, 0.5};
  std::vector<double> holder_radii{0.25, 0.125, 0.0625, 0.03125};
  std::vector<LatticeOffset> caccioppoli_offsets{{1, 0}, {2, 0}, {4, 0}, {8, 0}};
};

struct SweepConfig {
  double p = 2.0;
  double alpha = 0.5;
  int n = 2;
  std::vector<double> q_values;
  int m = 64;
  BoundaryFixture boundary = BoundaryFixture::TiltedWave;
  // a(x) = amplitude |x1 - coefficient_offset|^alpha
  double coefficient_amplitude = 1.0;
  double coefficient_offset = 0.5;
  SolveConfig solver;
  MetricsSettings metrics;
  bool write_svg = true;
  bool write_fields = false;
};

struct SweepRow {
  double q = 0.0;
  bool converged = false;
  int iterations = 0;
  double energy = 0.0;
  double holder_exponent = 0.0;
  double holder_fit = 0.0;
  double s_order = 0.0;
  double C = 0.0;
  double residual = 0.0;
  std::string note;  // solver diagnostic or metric failure, for the log only
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::vector<DiscreteField> fields;  // one per row, same order
};

SweepConfig parse_sweep(const IniFile& ini);
/// Independent solves run on up to `threads` workers; rows come back in q order.
SweepOutcome cmd_sweep(const SweepConfig& config, int threads);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_svg(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// moser

struct MoserConfig {
  double t0 = 1.0;
  double sigma = 1.0;
  double p = 2.0;
  double gamma = 0.0;
  double q = 2.0;
  int max_iters = 10;
  std::optional<double> target;
};

MoserConfig parse_moser(const IniFile& ini);
MoserSequence cmd_moser(const MoserConfig& config);
void write_moser_csv(std::ostream& out, const MoserSequence& seq);

// ---------------------------------------------------------------------------
// metrics

struct MetricsConfig {
  std::filesystem::path field;
  GrowthParams params;
  MetricsSettings metrics;
};

struct MetricsRow {
  GrowthParams params;
  Regime regime = Regime::UniformSchauder;
  CaccioppoliFit caccioppoli;
  HolderEstimate holder;
};

MetricsConfig parse_metrics(const IniFile& ini);
/// Throws IoError when the field file cannot be read or parsed.
MetricsRow cmd_metrics(const MetricsConfig& config);
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

// ---------------------------------------------------------------------------
// colimit

struct ColimitConfig {
  std::filesystem::path dag;
};

ColimitConfig parse_colimit(const IniFile& ini);
/// Nodes named by `reject` directives fail the checker; all others pass.
ColimitResult cmd_colimit(const ColimitConfig& config);

// ---------------------------------------------------------------------------

/// Loads the config, runs `command`, and writes its outputs plus run.log into
/// options.out_dir.  Errors are reported on `err` and mapped to exit codes.
int run_command(const std::string& command, const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ghostlab::cli
