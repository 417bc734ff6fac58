#include "mopsoca/experiment.hpp"
#include "mopsoca/front_io.hpp"
#include "mopsoca/metrics.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mopsoca;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mopsoca_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig tiny_config(const fs::path& out) {
  ExperimentConfig c;
  c.output = out;
  c.runs = 2;
  c.front_sample_2d = 100;
  c.front_sample_3d = 300;
  c.problems = {ProblemId::UF1, ProblemId::DTLZ5};
  c.mopso_ca.population = 12;
  c.mopso_ca.iterations = 4;
  c.omopso.population = 12;
  c.omopso.iterations = 4;
  c.nsga2.population = 12;
  c.nsga2.max_evaluations = 60;
  return c;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS(parse_algorithm("moead"));
  CHECK(display_name(Algorithm::Nsga2) == "NSGA-II");
}

TEST_CASE("config parsing") {
  SECTION("empty document keeps defaults") {
    const ExperimentConfig c = parse_config("{}");
    CHECK(c.runs == 30);
    CHECK(c.algorithms.size() == 3);
    CHECK(c.problems.size() == 6);
    CHECK(c.mopso_ca.population == 200);
    CHECK(c.omopso.archive_capacity == 100);
    CHECK(c.nsga2.max_evaluations == 25000);
    CHECK(c.nsga2.crossover_prob == 0.9);
    CHECK_FALSE(c.nsga2.mutation_prob.has_value());
  }
  SECTION("every block is read") {
    const ExperimentConfig c = parse_config(R"({
      "algorithms": ["mopso-ca", "nsga2"], "problems": ["UF3", "dtlz6"], "runs": 3,
      "base_seed": 100, "output": "out", "threads": 4,
      "front_sample": {"two_objective": 50, "three_objective": 60},
      "omopso": {"population": 10, "w": [0.2, 0.3], "turbulence": {"enabled": false}},
      "mopso_ca": {"c3": [0.5, 1.0], "max_agents": 3, "rerank_period": 2,
                   "local_archive_capacity": 7, "persistent_local_archives": false},
      "nsga2": {"population": 20, "mutation_prob": 0.05, "sbx_eta": 15}
    })");
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::MopsoCa, Algorithm::Nsga2});
    CHECK(c.problems == std::vector<ProblemId>{ProblemId::UF3, ProblemId::DTLZ6});
    CHECK(c.runs == 3);
    CHECK(c.base_seed == 100);
    CHECK(c.threads == 4);
    CHECK(c.front_sample_2d == 50);
    CHECK(c.omopso.population == 10);
    CHECK(c.omopso.w.lo == 0.2);
    CHECK_FALSE(c.omopso.mutation.enabled);
    CHECK(c.mopso_ca.c3.hi == 1.0);
    CHECK(c.mopso_ca.max_agents == 3);
    CHECK(c.mopso_ca.rerank_period == 2);
    CHECK(c.mopso_ca.local_archive_capacity == 7);
    CHECK_FALSE(c.mopso_ca.persistent_local_archives);
    CHECK(c.nsga2.mutation_prob == 0.05);
    CHECK(c.nsga2.sbx_eta == 15);
  }
  SECTION("unknown keys and invalid values are rejected") {
    CHECK_THROWS(parse_config(R"({"runz": 3})"));
    CHECK_THROWS(parse_config(R"({"mopso_ca": {"c4": 1}})"));
    CHECK_THROWS(parse_config(R"({"runs": 0})"));
    CHECK_THROWS(parse_config(R"({"nsga2": {"crossover_prob": 2}})"));
    CHECK_THROWS(parse_config(R"({"problems": ["ZDT1"]})"));
    CHECK_THROWS(parse_config("not json"));
  }
  SECTION("serialized config parses back to the same document") {
    ExperimentConfig c = parse_config(R"({"runs": 5, "nsga2": {"mutation_prob": 0.1}})");
    const std::string text = config_to_json(c);
    CHECK(config_to_json(parse_config(text)) == text);
  }
}

TEST_CASE("single-cell experiment") {
  const fs::path out = scratch("single");
  ExperimentConfig c = tiny_config(out);
  c.runs = 1;
  c.algorithms = {Algorithm::Omopso};
  c.problems = {ProblemId::UF1};
  const ExperimentReport report = run_experiment(c);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].runs == 1);
  CHECK(report.cells[0].stddev.sp == 0.0);
  CHECK(report.cells[0].stddev.igd == 0.0);
  CHECK(report.cells[0].stddev.hv == 0.0);
  CHECK(fs::exists(out / "fronts" / "omopso_UF1_0.dat"));
  CHECK(fs::exists(out / "references" / "UF1.dat"));
  CHECK(fs::exists(out / "config.json"));
  CHECK(line_count(slurp(out / "runs.csv")) == 2);
  CHECK(line_count(slurp(out / "summary.csv")) == 4);
  fs::remove_all(out);
}

TEST_CASE("experiment is deterministic and independent of parallelism") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ExperimentConfig ca = tiny_config(a);
  ExperimentConfig cb = tiny_config(b);
  cb.threads = 4;
  const ExperimentReport ra = run_experiment(ca);
  const ExperimentReport rb = run_experiment(cb);
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(slurp(a / "runs.csv") == slurp(b / "runs.csv"));
  CHECK(ra.records.size() == 3 * 2 * 2);
  for (const auto& r : ra.records) {
    CHECK(r.seed >= 1);
    CHECK(r.seed <= 2);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("summary means are the means of the run rows") {
  const fs::path out = scratch("means");
  const ExperimentReport report = run_experiment(tiny_config(out));
  const ExperimentReport reloaded = load_report(out);
  REQUIRE(reloaded.cells.size() == report.cells.size());
  for (const auto& cell : report.cells) {
    double hv = 0, igd = 0;
    std::size_t n = 0;
    for (const auto& r : reloaded.records) {
      if (r.algorithm != cell.algorithm || r.problem != cell.problem) continue;
      hv += r.metrics.hv;
      igd += r.metrics.igd;
      ++n;
    }
    CHECK(n == 2);
    CHECK(cell.mean.hv == Catch::Approx(hv / 2).margin(1e-15));
    CHECK(cell.mean.igd == Catch::Approx(igd / 2).margin(1e-15));
    CHECK(reloaded.cell(cell.algorithm, cell.problem).mean.hv == cell.mean.hv);
  }
  fs::remove_all(out);
}

TEST_CASE("stored fronts reproduce the reported indicators") {
  const fs::path out = scratch("roundtrip");
  const ExperimentConfig c = tiny_config(out);
  const ExperimentReport report = run_experiment(c);
  for (const auto& r : report.records) {
    const auto front = read_front(out / r.front_file);
    const auto reference = read_front(out / "references" / (std::string(to_string(r.problem)) + ".dat"));
    const MetricValues m = compute_metrics(front, {reference, default_reference_point<double>(reference)});
    CHECK(m.hv == r.metrics.hv);
    CHECK(m.igd == r.metrics.igd);
    CHECK(m.sp == r.metrics.sp);
  }
  fs::remove_all(out);
}

TEST_CASE("unwritable output fails before any run") {
  const fs::path blocker = scratch("blocker");
  { std::ofstream(blocker) << "file, not a directory"; }
  ExperimentConfig c = tiny_config(blocker / "inside");
  CHECK_THROWS_AS(run_experiment(c), std::runtime_error);
  fs::remove_all(blocker);
}

TEST_CASE("plot data") {
  const fs::path out = scratch("plots");
  ExperimentConfig c = tiny_config(out);
  c.problems = {ProblemId::DTLZ5};
  const ExperimentReport report = run_experiment(c);
  const auto scatter = emit_plot_data(report, PlotKind::FrontScatter);
  CHECK(scatter.size() == 4);
  for (const auto& p : scatter) CHECK(fs::exists(p));
  CHECK(fs::exists(out / "plots" / "DTLZ5_reference.dat"));
  CHECK(fs::exists(out / "plots" / "DTLZ5_mopso-ca.dat"));

  c.problems = {ProblemId::UF1, ProblemId::DTLZ5};
  const ExperimentReport both = run_experiment(c);
  const auto bars = emit_plot_data(both, PlotKind::HvBars);
  REQUIRE(bars.size() == 1);
  const std::string csv = slurp(bars[0]);
  CHECK(csv.rfind("problem,algorithm,mean_hv,std_hv\n", 0) == 0);
  CHECK(line_count(csv) == 1 + 3 * 2);
  fs::remove_all(out);
}

TEST_CASE("summary table layout and flags") {
  auto record = [](Algorithm a, ProblemId p, double sp, double igd, double hv) {
    RunRecord r;
    r.algorithm = a;
    r.problem = p;
    r.metrics = {sp, igd, hv};
    return r;
  };
  ExperimentReport report;
  report.algorithms = {Algorithm::Nsga2, Algorithm::Omopso, Algorithm::MopsoCa};
  report.problems = {ProblemId::UF1, ProblemId::DTLZ5};
  report.records = {record(Algorithm::Nsga2, ProblemId::UF1, 0.5, 0.1, 0.6),
                    record(Algorithm::Omopso, ProblemId::UF1, 0.4, 0.2, 0.7),
                    record(Algorithm::MopsoCa, ProblemId::UF1, 0.6, 0.05, 0.5),
                    record(Algorithm::Nsga2, ProblemId::DTLZ5, 0.3, 0.01, 0.1),
                    record(Algorithm::Omopso, ProblemId::DTLZ5, 0.3, 0.02, 0.2),
                    record(Algorithm::MopsoCa, ProblemId::DTLZ5, 0.2, 0.03, 0.3)};
  report.cells = aggregate(report.records, report.algorithms, report.problems);
  const std::string table = summarize(report);
  std::istringstream in(table);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 1 + 2 * 3);
  CHECK(lines[0].find("NSGA-II") < lines[0].find("OMOPSO"));
  CHECK(lines[0].find("OMOPSO") < lines[0].find("MOPSO-CA"));
  auto starred = [](const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream ss(line);
    for (std::string t; ss >> t;) cells.push_back(t);
    std::vector<int> out;
    for (std::size_t i = 2; i < cells.size(); ++i) out.push_back(cells[i].back() == '*');
    return out;
  };
  CHECK(lines[1].rfind("UF1", 0) == 0);
  CHECK(starred(lines[1]) == std::vector<int>{0, 1, 0});  // SP: minimum
  CHECK(starred(lines[2]) == std::vector<int>{0, 0, 1});  // IGD: minimum
  CHECK(starred(lines[3]) == std::vector<int>{0, 1, 0});  // HV: maximum
  CHECK(starred(lines[6]) == std::vector<int>{0, 0, 1});

  report.algorithms = {Algorithm::Omopso};
  report.cells = aggregate(report.records, report.algorithms, report.problems);
  CHECK(summarize(report).find('*') == std::string::npos);
}

TEST_CASE("front file format") {
  std::stringstream ss;
  const auto pts = testing::points({{0.1, 2.5}, {1e-20, -3}});
  write_front(ss, pts, "two points");
  CHECK(ss.str().rfind("# two points\n", 0) == 0);
  const auto back = read_front(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == pts[0]);
  CHECK(back[1] == pts[1]);

  std::stringstream bad("1 2\n3\n");
  CHECK_THROWS_AS(read_front(bad), FrontFormatError);
  std::stringstream junk("1 x\n");
  CHECK_THROWS_AS(read_front(junk), FrontFormatError);
  std::stringstream blank("# only\n\n0.5 0.5\n");
  CHECK(read_front(blank).size() == 1);
  CHECK(parse_csv_vector("1.1,2.2") == testing::vec({1.1, 2.2}));
  CHECK_THROWS(parse_csv_vector("1.1,,2"));
}
