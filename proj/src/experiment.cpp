#include "mopsoca/experiment.hpp"

#include "mopsoca/front_io.hpp"
#include "mopsoca/metrics.hpp"
#include "mopsoca/omopso.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mopsoca {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Nsga2: return "nsga2";
    case Algorithm::Omopso: return "omopso";
    case Algorithm::MopsoCa: return "mopso-ca";
  }
  return "?";
}

std::string_view display_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Nsga2: return "NSGA-II";
    case Algorithm::Omopso: return "OMOPSO";
    case Algorithm::MopsoCa: return "MOPSO-CA";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected nsga2, omopso or mopso-ca)");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::SP: return "SP";
    case Metric::IGD: return "IGD";
    case Metric::HV: return "HV";
  }
  return "?";
}

ReferenceFront make_reference(const Problem& problem, std::size_t sample_size) {
  ReferenceFront reference;
  reference.points = problem.true_front_sample(
      sample_size != 0 ? sample_size : problem.default_front_sample_size());
  reference.ref_point = default_reference_point<double>(reference.points);
  return reference;
}

MetricValues compute_metrics(std::span<const VectorXd> front, const ReferenceFront& reference) {
  MetricValues m;
  m.sp = spread<double>(front, reference.points);
  m.igd = igd<double>(front, reference.points);
  m.hv = hypervolume<double>(front, reference.ref_point);
  return m;
}

// ---------------------------------------------------------------------------
// Config

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
  }
}

CoefficientRange parse_range(const json& j, std::string_view name) {
  if (j.is_number()) return {j.get<double>(), j.get<double>()};
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(std::string(name) + ": expected [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void parse_pso_fields(const json& j, PsoParams& p) {
  if (j.contains("population")) p.population = j["population"].get<std::size_t>();
  if (j.contains("archive_capacity")) p.archive_capacity = j["archive_capacity"].get<std::size_t>();
  if (j.contains("iterations")) p.iterations = j["iterations"].get<std::size_t>();
  if (j.contains("w")) p.w = parse_range(j["w"], "w");
  if (j.contains("c1")) p.c1 = parse_range(j["c1"], "c1");
  if (j.contains("c2")) p.c2 = parse_range(j["c2"], "c2");
  if (j.contains("turbulence")) {
    const json& t = j["turbulence"];
    check_keys(t, {"enabled", "probability", "perturbation"}, "turbulence");
    if (t.contains("enabled")) p.mutation.enabled = t["enabled"].get<bool>();
    if (t.contains("probability")) p.mutation.gene_probability = t["probability"].get<double>();
    if (t.contains("perturbation")) p.mutation.perturbation = t["perturbation"].get<double>();
  }
}

json range_json(const CoefficientRange& r) { return json::array({r.lo, r.hi}); }

json pso_json(const PsoParams& p) {
  return {{"population", p.population},
          {"archive_capacity", p.archive_capacity},
          {"iterations", p.iterations},
          {"w", range_json(p.w)},
          {"c1", range_json(p.c1)},
          {"c2", range_json(p.c2)},
          {"turbulence",
           {{"enabled", p.mutation.enabled},
            {"probability", p.mutation.gene_probability},
            {"perturbation", p.mutation.perturbation}}}};
}

}  // namespace

void ExperimentConfig::validate() const {
  require(runs >= 1, "config: runs must be at least 1");
  require(!algorithms.empty(), "config: no algorithms");
  require(!problems.empty(), "config: no problems");
  require(front_sample_2d >= 2 && front_sample_3d >= 2, "config: front sample too small");
  mopso_ca.validate();
  omopso.validate();
  nsga2.validate();
}

ExperimentConfig parse_config(std::string_view json_text) {
  const json j = json::parse(json_text);
  check_keys(j,
             {"algorithms", "problems", "runs", "base_seed", "output", "threads", "front_sample",
              "mopso_ca", "omopso", "nsga2"},
             "config");
  ExperimentConfig c;
  if (j.contains("algorithms")) {
    c.algorithms.clear();
    for (const auto& a : j["algorithms"]) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
  }
  if (j.contains("problems")) {
    c.problems.clear();
    for (const auto& p : j["problems"]) c.problems.push_back(parse_problem_id(p.get<std::string>()));
  }
  if (j.contains("runs")) c.runs = j["runs"].get<std::size_t>();
  if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
  if (j.contains("output")) c.output = j["output"].get<std::string>();
  if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
  if (j.contains("front_sample")) {
    const json& s = j["front_sample"];
    check_keys(s, {"two_objective", "three_objective"}, "front_sample");
    if (s.contains("two_objective")) c.front_sample_2d = s["two_objective"].get<std::size_t>();
    if (s.contains("three_objective")) c.front_sample_3d = s["three_objective"].get<std::size_t>();
  }
  if (j.contains("omopso")) {
    const json& o = j["omopso"];
    check_keys(o, {"population", "archive_capacity", "iterations", "w", "c1", "c2", "turbulence"},
               "omopso");
    parse_pso_fields(o, c.omopso);
  }
  if (j.contains("mopso_ca")) {
    const json& o = j["mopso_ca"];
    check_keys(o,
               {"population", "archive_capacity", "iterations", "w", "c1", "c2", "c3",
                "turbulence", "max_agents", "rerank_period", "local_archive_capacity",
                "persistent_local_archives"},
               "mopso_ca");
    parse_pso_fields(o, c.mopso_ca);
    if (o.contains("c3")) c.mopso_ca.c3 = parse_range(o["c3"], "c3");
    if (o.contains("max_agents")) c.mopso_ca.max_agents = o["max_agents"].get<std::size_t>();
    if (o.contains("rerank_period")) c.mopso_ca.rerank_period = o["rerank_period"].get<std::size_t>();
    if (o.contains("local_archive_capacity"))
      c.mopso_ca.local_archive_capacity = o["local_archive_capacity"].get<std::size_t>();
    if (o.contains("persistent_local_archives"))
      c.mopso_ca.persistent_local_archives = o["persistent_local_archives"].get<bool>();
  }
  if (j.contains("nsga2")) {
    const json& g = j["nsga2"];
    check_keys(g,
               {"population", "max_evaluations", "crossover_prob", "mutation_prob", "sbx_eta",
                "pm_eta"},
               "nsga2");
    if (g.contains("population")) c.nsga2.population = g["population"].get<std::size_t>();
    if (g.contains("max_evaluations")) c.nsga2.max_evaluations = g["max_evaluations"].get<std::size_t>();
    if (g.contains("crossover_prob")) c.nsga2.crossover_prob = g["crossover_prob"].get<double>();
    if (g.contains("mutation_prob") && !g["mutation_prob"].is_null())
      c.nsga2.mutation_prob = g["mutation_prob"].get<double>();
    if (g.contains("sbx_eta")) c.nsga2.sbx_eta = g["sbx_eta"].get<double>();
    if (g.contains("pm_eta")) c.nsga2.pm_eta = g["pm_eta"].get<double>();
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["algorithms"] = json::array();
  for (Algorithm a : c.algorithms) j["algorithms"].push_back(std::string(to_string(a)));
  j["problems"] = json::array();
  for (ProblemId p : c.problems) j["problems"].push_back(std::string(to_string(p)));
  j["runs"] = c.runs;
  j["base_seed"] = c.base_seed;
  j["output"] = c.output.string();
  j["threads"] = c.threads;
  j["front_sample"] = {{"two_objective", c.front_sample_2d},
                       {"three_objective", c.front_sample_3d}};
  j["omopso"] = pso_json(c.omopso);
  json ca = pso_json(c.mopso_ca);
  ca["c3"] = range_json(c.mopso_ca.c3);
  ca["max_agents"] = c.mopso_ca.max_agents;
  ca["rerank_period"] = c.mopso_ca.rerank_period;
  ca["local_archive_capacity"] = c.mopso_ca.local_archive_capacity;
  ca["persistent_local_archives"] = c.mopso_ca.persistent_local_archives;
  j["mopso_ca"] = ca;
  j["nsga2"] = {{"population", c.nsga2.population},
                {"max_evaluations", c.nsga2.max_evaluations},
                {"crossover_prob", c.nsga2.crossover_prob},
                {"mutation_prob", c.nsga2.mutation_prob ? json(*c.nsga2.mutation_prob) : json()},
                {"sbx_eta", c.nsga2.sbx_eta},
                {"pm_eta", c.nsga2.pm_eta}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Running

RunResult run_algorithm(Algorithm algorithm, const Problem& problem,
                        const ExperimentConfig& config, std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::Nsga2: return run_nsga2(problem, config.nsga2, seed);
    case Algorithm::Omopso: return run_omopso(problem, config.omopso, seed);
    case Algorithm::MopsoCa: return run_mopso_ca(problem, config.mopso_ca, seed);
  }
  throw std::logic_error("unreachable");
}

const CellSummary& ExperimentReport::cell(Algorithm algorithm, ProblemId problem) const {
  for (const auto& c : cells)
    if (c.algorithm == algorithm && c.problem == problem) return c;
  throw std::out_of_range("no cell for " + std::string(to_string(algorithm)) + "/" +
                          std::string(to_string(problem)));
}

std::vector<CellSummary> aggregate(std::span<const RunRecord> records,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const ProblemId> problems) {
  std::vector<CellSummary> cells;
  for (ProblemId p : problems) {
    for (Algorithm a : algorithms) {
      CellSummary cell{a, p, 0, {}, {}};
      std::vector<const RunRecord*> rows;
      for (const auto& r : records)
        if (r.algorithm == a && r.problem == p) rows.push_back(&r);
      if (rows.empty()) continue;
      cell.runs = rows.size();
      const auto n = static_cast<double>(rows.size());
      for (const RunRecord* r : rows) {
        cell.mean.sp += r->metrics.sp;
        cell.mean.igd += r->metrics.igd;
        cell.mean.hv += r->metrics.hv;
      }
      cell.mean.sp /= n;
      cell.mean.igd /= n;
      cell.mean.hv /= n;
      if (rows.size() > 1) {
        for (const RunRecord* r : rows) {
          cell.stddev.sp += (r->metrics.sp - cell.mean.sp) * (r->metrics.sp - cell.mean.sp);
          cell.stddev.igd += (r->metrics.igd - cell.mean.igd) * (r->metrics.igd - cell.mean.igd);
          cell.stddev.hv += (r->metrics.hv - cell.mean.hv) * (r->metrics.hv - cell.mean.hv);
        }
        cell.stddev.sp = std::sqrt(cell.stddev.sp / (n - 1.0));
        cell.stddev.igd = std::sqrt(cell.stddev.igd / (n - 1.0));
        cell.stddev.hv = std::sqrt(cell.stddev.hv / (n - 1.0));
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string front_file_name(Algorithm a, ProblemId p, std::size_t run) {
  return std::string(to_string(a)) + "_" + std::string(to_string(p)) + "_" +
         std::to_string(run) + ".dat";
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path out = config.output;
  std::error_code ec;
  fs::create_directories(out / "fronts", ec);
  fs::create_directories(out / "references", ec);
  {
    const fs::path probe = out / ".write-probe";
    std::ofstream test(probe);
    if (!test) throw std::runtime_error("output directory not writable: " + out.string());
    test.close();
    fs::remove(probe, ec);
  }
  write_text(out / "config.json", config_to_json(config) + "\n");

  std::vector<Problem> problems;
  std::vector<ReferenceFront> references;
  for (ProblemId id : config.problems) {
    problems.emplace_back(id);
    const std::size_t m =
        problems.back().objectives() == 2 ? config.front_sample_2d : config.front_sample_3d;
    references.push_back(make_reference(problems.back(), m));
    write_front(out / "references" / (std::string(to_string(id)) + ".dat"),
                references.back().points, "true front sample, " + std::string(to_string(id)));
  }

  struct Cell {
    std::size_t problem_index;
    Algorithm algorithm;
    std::size_t run;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (Algorithm a : config.algorithms)
      for (std::size_t r = 0; r < config.runs; ++r) cells.push_back({p, a, r});

  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string error_message;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      const Problem& problem = problems[cell.problem_index];
      const std::uint64_t seed = config.base_seed + cell.run;
      try {
        const RunResult result = run_algorithm(cell.algorithm, problem, config, seed);
        const auto front = result.objectives();
        RunRecord& record = records[i];
        record.algorithm = cell.algorithm;
        record.problem = problem.id();
        record.seed = seed;
        record.evaluations = result.evaluations_used;
        record.metrics = compute_metrics(front, references[cell.problem_index]);
        record.front_file = fs::path("fronts") / front_file_name(cell.algorithm, problem.id(), cell.run);
        write_front(out / record.front_file, front,
                    std::string(to_string(cell.algorithm)) + " " + std::string(problem.name()) +
                        " seed " + std::to_string(seed));
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!failed.exchange(true)) {
          error_message = "cell " + std::string(to_string(cell.algorithm)) + "/" +
                          std::string(problem.name()) + "/run " + std::to_string(cell.run) +
                          " failed: " + e.what();
        }
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, cells.size());
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failed) throw std::runtime_error(error_message);

  ExperimentReport report;
  report.algorithms = config.algorithms;
  report.problems = config.problems;
  report.output = out;
  report.records = std::move(records);
  report.cells = aggregate(report.records, report.algorithms, report.problems);
  write_text(out / "runs.csv", runs_csv(report.records));
  write_text(out / "summary.csv", summary_csv(report.cells));
  return report;
}

std::string runs_csv(std::span<const RunRecord> records) {
  std::string s = "algorithm,problem,seed,evaluations,SP,IGD,HV\n";
  for (const auto& r : records) {
    s += std::string(to_string(r.algorithm)) + "," + std::string(to_string(r.problem)) + "," +
         std::to_string(r.seed) + "," + std::to_string(r.evaluations) + "," +
         format_double(r.metrics.sp) + "," + format_double(r.metrics.igd) + "," +
         format_double(r.metrics.hv) + "\n";
  }
  return s;
}

std::string summary_csv(std::span<const CellSummary> cells) {
  std::string s = "algorithm,problem,metric,mean,std\n";
  for (const auto& c : cells) {
    for (Metric m : kAllMetrics) {
      s += std::string(to_string(c.algorithm)) + "," + std::string(to_string(c.problem)) + "," +
           std::string(to_string(m)) + "," + format_double(c.mean.get(m)) + "," +
           format_double(c.stddev.get(m)) + "\n";
    }
  }
  return s;
}

ExperimentReport load_report(const fs::path& directory) {
  std::ifstream in(directory / "runs.csv");
  if (!in) throw std::runtime_error("no runs.csv in " + directory.string());
  ExperimentReport report;
  report.output = directory;
  std::string line;
  std::getline(in, line);
  if (line != "algorithm,problem,seed,evaluations,SP,IGD,HV")
    throw std::runtime_error("unexpected runs.csv header: " + line);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw std::runtime_error("malformed runs.csv row: " + line);
    RunRecord r;
    r.algorithm = parse_algorithm(fields[0]);
    r.problem = parse_problem_id(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.evaluations = std::stoull(fields[3]);
    r.metrics = {std::stod(fields[4]), std::stod(fields[5]), std::stod(fields[6])};
    if (std::find(report.algorithms.begin(), report.algorithms.end(), r.algorithm) ==
        report.algorithms.end())
      report.algorithms.push_back(r.algorithm);
    if (std::find(report.problems.begin(), report.problems.end(), r.problem) ==
        report.problems.end())
      report.problems.push_back(r.problem);
    report.records.push_back(r);
  }
  // Seeds are base + run; the smallest seed of a cell is run 0.
  for (auto& r : report.records) {
    std::uint64_t first = r.seed;
    for (const auto& o : report.records)
      if (o.algorithm == r.algorithm && o.problem == r.problem) first = std::min(first, o.seed);
    r.front_file = fs::path("fronts") / front_file_name(r.algorithm, r.problem, r.seed - first);
  }
  report.cells = aggregate(report.records, report.algorithms, report.problems);
  return report;
}

std::vector<fs::path> emit_plot_data(const ExperimentReport& report, PlotKind kind) {
  const fs::path dir = report.output / "plots";
  fs::create_directories(dir);
  std::vector<fs::path> written;
  if (kind == PlotKind::HvBars) {
    std::string s = "problem,algorithm,mean_hv,std_hv\n";
    for (ProblemId p : report.problems) {
      for (Algorithm a : report.algorithms) {
        const CellSummary& c = report.cell(a, p);
        s += std::string(to_string(p)) + "," + std::string(to_string(a)) + "," +
             format_double(c.mean.hv) + "," + format_double(c.stddev.hv) + "\n";
      }
    }
    written.push_back(dir / "hv_bars.csv");
    write_text(written.back(), s);
    return written;
  }

  for (ProblemId p : report.problems) {
    const std::string problem(to_string(p));
    for (Algorithm a : report.algorithms) {
      const RunRecord* first = nullptr;
      for (const auto& r : report.records)
        if (r.algorithm == a && r.problem == p && (!first || r.seed < first->seed)) first = &r;
      if (!first) continue;
      const auto front = read_front(report.output / first->front_file);
      written.push_back(dir / (problem + "_" + std::string(to_string(a)) + ".dat"));
      write_front(written.back(), front,
                  std::string(display_name(a)) + " " + problem + " seed " +
                      std::to_string(first->seed));
    }
    const Problem problem_def(p);
    written.push_back(dir / (problem + "_reference.dat"));
    const fs::path stored = report.output / "references" / (problem + ".dat");
    const auto reference = fs::exists(stored) ? read_front(stored)
                                              : make_reference(problem_def).points;
    write_front(written.back(), reference, "true front sample, " + problem);
  }
  return written;
}

std::string summarize(const ExperimentReport& report) {
  std::string out;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%-8s %-6s", "Problem", "Metric");
  out += buffer;
  for (Algorithm a : report.algorithms) {
    std::snprintf(buffer, sizeof(buffer), " %13s", std::string(display_name(a)).c_str());
    out += buffer;
  }
  out += "\n";

  const bool flag = report.algorithms.size() > 1;
  for (ProblemId p : report.problems) {
    for (Metric m : kAllMetrics) {
      std::vector<double> values;
      for (Algorithm a : report.algorithms) values.push_back(report.cell(a, p).mean.get(m));
      const auto best = m == Metric::HV ? std::max_element(values.begin(), values.end())
                                        : std::min_element(values.begin(), values.end());
      std::snprintf(buffer, sizeof(buffer), "%-8s %-6s", std::string(to_string(p)).c_str(),
                    std::string(to_string(m)).c_str());
      out += buffer;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const bool is_best = flag && values[i] == *best;
        std::snprintf(buffer, sizeof(buffer), " %12.4e%c", values[i], is_best ? '*' : ' ');
        out += buffer;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace mopsoca
