// Command-line front end: run an experiment, run a single cell, score a
// front file, or summarize a report directory.

#include "mopsoca/experiment.hpp"
#include "mopsoca/front_io.hpp"
#include "mopsoca/metrics.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace mopsoca;

namespace {

int cmd_run(const std::string& config_path, std::optional<std::size_t> threads,
            std::optional<std::string> output) {
  ExperimentConfig config = load_config(config_path);
  if (threads) config.threads = *threads;
  if (output) config.output = *output;
  const ExperimentReport report = run_experiment(config);
  emit_plot_data(report, PlotKind::FrontScatter);
  emit_plot_data(report, PlotKind::HvBars);
  std::cout << summarize(report);
  std::cout << "\nreport written to " << report.output.string() << "\n";
  return 0;
}

int cmd_single(const std::string& algo, const std::string& problem_name, std::uint64_t seed,
               const std::string& config_path, const std::string& out_path,
               std::optional<std::size_t> iterations, const std::string& trace_path) {
  ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
  if (iterations) {
    config.mopso_ca.iterations = *iterations;
    config.omopso.iterations = *iterations;
  }
  const Algorithm algorithm = parse_algorithm(algo);
  const Problem problem(parse_problem_id(problem_name));

  RunResult result;
  std::ofstream trace;
  if (algorithm == Algorithm::MopsoCa && !trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw std::runtime_error("cannot write trace file " + trace_path);
    trace << "iter,agent,offer_objectives,votes,accepted\n";
    CaRunOptions options;
    options.negotiation_trace = &trace;
    result = run_mopso_ca(problem, config.mopso_ca, seed, options);
  } else {
    result = run_algorithm(algorithm, problem, config, seed);
  }

  const auto front = result.objectives();
  const ReferenceFront reference = make_reference(
      problem, problem.objectives() == 2 ? config.front_sample_2d : config.front_sample_3d);
  const MetricValues m = compute_metrics(front, reference);
  RunRecord record{algorithm, problem.id(), seed, result.evaluations_used, m, {}};
  const std::string comment = std::string(to_string(algorithm)) + " " +
                              std::string(problem.name()) + " seed " + std::to_string(seed);
  if (out_path.empty()) {
    write_front(std::cout, front, comment);
    std::cerr << runs_csv({&record, 1});
  } else {
    write_front(out_path, front, comment);
    std::cout << runs_csv({&record, 1});
  }
  return 0;
}

int cmd_metrics(const std::string& approx_path, const std::string& reference_path,
                const std::string& ref_point_text, const std::string& problem,
                const std::string& algorithm, std::size_t run) {
  const auto approx = read_front(approx_path);
  const auto reference = read_front(reference_path);
  if (approx.empty()) throw std::runtime_error("approximation front is empty");
  if (reference.empty()) throw std::runtime_error("reference front is empty");
  ReferenceFront ref{reference, ref_point_text.empty()
                                    ? default_reference_point<double>(reference)
                                    : parse_csv_vector(ref_point_text)};
  if (ref.ref_point.size() != reference.front().size())
    throw std::runtime_error("reference point has the wrong number of objectives");
  const MetricValues m = compute_metrics(approx, ref);
  std::cout << "problem,algorithm,run,SP,IGD,HV\n"
            << problem << ',' << algorithm << ',' << run << ',' << format_double(m.sp) << ','
            << format_double(m.igd) << ',' << format_double(m.hv) << '\n';
  return 0;
}

int cmd_summarize(const std::string& dir) {
  const ExperimentReport report = load_report(dir);
  std::cout << summarize(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective PSO with cooperative agents: experiments and indicators"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a full experiment from a JSON config");
  std::string config_path;
  std::optional<std::size_t> threads;
  std::optional<std::string> output;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--threads", threads, "Cells executed in parallel");
  run->add_option("--output", output, "Override the output directory");

  auto* single = app.add_subcommand("single", "Run one algorithm on one problem");
  std::string algo, problem;
  std::uint64_t seed = 1;
  std::string single_config, out_path, trace_path;
  std::optional<std::size_t> iterations;
  single->add_option("--algo", algo, "nsga2 | omopso | mopso-ca")->required();
  single->add_option("--problem", problem, "UF1 | UF2 | UF3 | UF10 | DTLZ5 | DTLZ6")->required();
  single->add_option("--seed", seed, "Random seed");
  single->add_option("--config", single_config, "Parameter blocks (JSON)")->check(CLI::ExistingFile);
  single->add_option("--out", out_path, "Front file (default: stdout)");
  single->add_option("--iterations", iterations, "PSO iterations override");
  single->add_option("--trace", trace_path, "Negotiation trace file (mopso-ca only)");

  auto* metrics = app.add_subcommand("metrics", "Score a front file against a reference front");
  std::string approx_path, reference_path, ref_point;
  std::string label_problem = "-", label_algorithm = "-";
  std::size_t label_run = 0;
  metrics->add_option("--approx", approx_path, "Approximation front file")->required()->check(CLI::ExistingFile);
  metrics->add_option("--reference", reference_path, "Reference front file")->required()->check(CLI::ExistingFile);
  metrics->add_option("--ref-point", ref_point, "Hypervolume reference point, e.g. 1.1,1.1 (default: 1.1 x reference nadir)");
  metrics->add_option("--problem", label_problem, "Label for the problem column");
  metrics->add_option("--algorithm", label_algorithm, "Label for the algorithm column");
  metrics->add_option("--run", label_run, "Label for the run column");

  auto* summary = app.add_subcommand("summarize", "Print the mean table of a report directory");
  std::string report_dir;
  summary->add_option("--report", report_dir, "Report directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, threads, output);
    if (*single) return cmd_single(algo, problem, seed, single_config, out_path, iterations, trace_path);
    if (*metrics) return cmd_metrics(approx_path, reference_path, ref_point, label_problem, label_algorithm, label_run);
    if (*summary) return cmd_summarize(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
