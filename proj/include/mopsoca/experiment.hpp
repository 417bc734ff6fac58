// Batch runner: seeds x algorithms x problems, per-run fronts and metric
// rows, aggregated mean/std tables and plot data.

#ifndef MOPSOCA_EXPERIMENT_HPP
#define MOPSOCA_EXPERIMENT_HPP

#include "mopsoca/mopso_ca.hpp"
#include "mopsoca/nsga2.hpp"
#include "mopsoca/problems.hpp"
#include "mopsoca/pso.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mopsoca {

enum class Algorithm { Nsga2, Omopso, MopsoCa };

/// Column order of the summary table.
inline constexpr std::array<Algorithm, 3> kAllAlgorithms = {Algorithm::Nsga2, Algorithm::Omopso,
                                                           Algorithm::MopsoCa};

std::string_view to_string(Algorithm algorithm);  // "nsga2", "omopso", "mopso-ca"
std::string_view display_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

enum class Metric { SP, IGD, HV };
inline constexpr std::array<Metric, 3> kAllMetrics = {Metric::SP, Metric::IGD, Metric::HV};
std::string_view to_string(Metric metric);

struct MetricValues {
  double sp = 0.0;
  double igd = 0.0;
  double hv = 0.0;

  double get(Metric m) const { return m == Metric::SP ? sp : (m == Metric::IGD ? igd : hv); }
};

/// True-front sample plus the hypervolume reference point (1.1 x nadir of the sample).
struct ReferenceFront {
  std::vector<VectorXd> points;
  VectorXd ref_point;
};

ReferenceFront make_reference(const Problem& problem, std::size_t sample_size = 0);

MetricValues compute_metrics(std::span<const VectorXd> front, const ReferenceFront& reference);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<ProblemId> problems{kAllProblems.begin(), kAllProblems.end()};
  std::size_t runs = 30;
  std::uint64_t base_seed = 1;
  std::filesystem::path output = "results";
  /// Cells executed concurrently.
  std::size_t threads = 1;
  std::size_t front_sample_2d = 1000;
  std::size_t front_sample_3d = 2500;
  CaParams mopso_ca;
  PsoParams omopso;
  GaParams nsga2;

  void validate() const;
};

/// Parses the JSON config document. Missing keys keep their defaults;
/// unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

struct RunRecord {
  Algorithm algorithm = Algorithm::MopsoCa;
  ProblemId problem = ProblemId::UF1;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  MetricValues metrics;
  std::filesystem::path front_file;
};

struct CellSummary {
  Algorithm algorithm = Algorithm::MopsoCa;
  ProblemId problem = ProblemId::UF1;
  std::size_t runs = 0;
  MetricValues mean;
  MetricValues stddev;
};

struct ExperimentReport {
  std::vector<Algorithm> algorithms;
  std::vector<ProblemId> problems;
  std::filesystem::path output;
  std::vector<RunRecord> records;
  std::vector<CellSummary> cells;

  const CellSummary& cell(Algorithm algorithm, ProblemId problem) const;
};

/// Runs one (algorithm, problem, seed) cell with the config's parameters.
RunResult run_algorithm(Algorithm algorithm, const Problem& problem,
                        const ExperimentConfig& config, std::uint64_t seed);

/// Executes every cell with seed = base_seed + run index, writes
/// fronts/<algorithm>_<problem>_<run>.dat, references/<problem>.dat,
/// runs.csv and summary.csv under config.output. Any failing cell aborts
/// the experiment with a std::runtime_error naming the cell.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Mean and sample standard deviation per (algorithm, problem).
std::vector<CellSummary> aggregate(std::span<const RunRecord> records,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const ProblemId> problems);

/// Rebuilds a report from the runs.csv of a report directory.
ExperimentReport load_report(const std::filesystem::path& directory);

enum class PlotKind { FrontScatter, HvBars };

/// front_scatter: plots/<problem>_<algorithm>.dat (first run) and
/// plots/<problem>_reference.dat. hv_bars: plots/hv_bars.csv with
/// problem,algorithm,mean_hv,std_hv. Returns the written files.
std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& report, PlotKind kind);

/// Problems x metrics rows, one column per algorithm, means only. The best
/// value of each row is flagged with '*' (maximum for HV, minimum
/// otherwise) when there is more than one algorithm.
std::string summarize(const ExperimentReport& report);

std::string runs_csv(std::span<const RunRecord> records);
std::string summary_csv(std::span<const CellSummary> cells);

}  // namespace mopsoca

#endif  // MOPSOCA_EXPERIMENT_HPP
