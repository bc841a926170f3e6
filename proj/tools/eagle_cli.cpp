// eagle: run seeded experiments, list benchmark functions, sweep a parameter.
//
//   eagle run --algorithm es,pso --function ackley --dim 2 --runs 100 --output table
//   eagle list-functions
//   eagle sweep --param es.fa.gamma --values 0.1,1,10 --algorithm es --function ackley
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <eagle/eagle.hpp>

namespace {

using eagle::AlgorithmSettings;
using eagle::ExperimentReport;

struct RunOptions
{
  std::vector<std::string> algorithms{"es"};
  std::vector<std::string> functions{"ackley"};
  std::size_t dim = 0; // 0: registry default
  double noise_sigma = 0.025;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::optional<std::size_t> pop;
  std::optional<std::uint64_t> max_evals;
  std::string stats_over = "all";
  std::string output = "table";
  std::string trace;
  std::string success = "value";
  double value_eps = 1e-2;
  std::optional<double> position_eps;
  AlgorithmSettings settings;
};

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

std::vector<std::string> list_or_string(const nlohmann::json& j)
{
  if (j.is_array()) {
    return j.get<std::vector<std::string>>();
  }
  return split_list(j.get<std::string>());
}

// Values from a config file; flags given on the command line are applied later
// and win.
void apply_config_file(RunOptions& o, const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw eagle::Error(eagle::ErrorKind::invalid_config, "cannot read config file '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw eagle::Error(eagle::ErrorKind::invalid_config, path + ": " + e.what());
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "algorithm") {
      o.algorithms = list_or_string(v);
    } else if (key == "function") {
      o.functions = list_or_string(v);
    } else if (key == "dim") {
      o.dim = v.get<std::size_t>();
    } else if (key == "noise_sigma") {
      o.noise_sigma = v.get<double>();
    } else if (key == "runs") {
      o.runs = v.get<std::size_t>();
    } else if (key == "seed") {
      o.seed = v.get<std::uint64_t>();
    } else if (key == "tol") {
      o.tol = v.get<double>();
    } else if (key == "pop") {
      o.pop = v.get<std::size_t>();
    } else if (key == "max_evals") {
      o.max_evals = v.get<std::uint64_t>();
    } else if (key == "stats_over") {
      o.stats_over = v.get<std::string>();
    } else if (key == "output") {
      o.output = v.get<std::string>();
    } else if (key == "trace") {
      o.trace = v.get<std::string>();
    } else if (key == "success") {
      o.success = v.get<std::string>();
    } else if (key == "value_eps") {
      o.value_eps = v.get<double>();
    } else if (key == "position_eps") {
      o.position_eps = v.get<double>();
    } else if (key == "settings") {
      eagle::apply_settings_json(o.settings, v);
    } else {
      throw eagle::Error(eagle::ErrorKind::invalid_config, path + ": unknown key '" + key + "'");
    }
  }
}

struct Flags
{
  std::string algorithm, function, config;
  RunOptions parsed;
  std::vector<std::string> set;
};

void add_run_flags(CLI::App& cmd, Flags& f)
{
  cmd.add_option("--algorithm", f.algorithm, "es, fa, pso or nm; comma-separated for several");
  cmd.add_option("--function", f.function, "registry name(s), comma-separated, or 'all'");
  cmd.add_option("--dim", f.parsed.dim, "dimension (default: the registry default)");
  cmd.add_option("--noise-sigma", f.parsed.noise_sigma, "additive Gaussian noise std")->check(CLI::NonNegativeNumber);
  cmd.add_option("--runs", f.parsed.runs, "trials per (algorithm, function)")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.parsed.seed, "first seed of the ladder");
  cmd.add_option("--tol", f.parsed.tol, "stopping tolerance for every algorithm");
  cmd.add_option("--pop", f.parsed.pop, "population size for FA and PSO");
  cmd.add_option("--max-evals", f.parsed.max_evals, "evaluation cap for every algorithm");
  cmd.add_option("--stats-over", f.parsed.stats_over, "evaluation statistics over all runs or successes only")
    ->check(CLI::IsMember({"all", "successes"}));
  cmd.add_option("--output", f.parsed.output, "json, csv or table");
  cmd.add_option("--trace", f.parsed.trace, "write per-stage convergence CSV here");
  cmd.add_option("--success", f.parsed.success, "value or position")->check(CLI::IsMember({"value", "position"}));
  cmd.add_option("--value-eps", f.parsed.value_eps, "value-gap threshold");
  cmd.add_option("--position-eps", f.parsed.position_eps, "position-gap threshold (default: 1% of domain width)");
  cmd.add_option("--set", f.set, "override a setting, e.g. --set es.fa.gamma=0.5 (repeatable)");
  cmd.add_option("--config", f.config, "JSON config file; command-line flags override it")->check(CLI::ExistingFile);
}

// Config file first, then every flag that was actually given.
RunOptions resolve(const CLI::App& cmd, const Flags& f)
{
  RunOptions o;
  if (!f.config.empty()) {
    apply_config_file(o, f.config);
  }
  auto given = [&](const char* name) { return cmd.get_option(name)->count() > 0; };
  if (given("--algorithm")) {
    o.algorithms = split_list(f.algorithm);
  }
  if (given("--function")) {
    o.functions = split_list(f.function);
  }
  if (given("--dim")) {
    o.dim = f.parsed.dim;
  }
  if (given("--noise-sigma")) {
    o.noise_sigma = f.parsed.noise_sigma;
  }
  if (given("--runs")) {
    o.runs = f.parsed.runs;
  }
  if (given("--seed")) {
    o.seed = f.parsed.seed;
  }
  if (given("--tol")) {
    o.tol = f.parsed.tol;
  }
  if (given("--pop")) {
    o.pop = f.parsed.pop;
  }
  if (given("--max-evals")) {
    o.max_evals = f.parsed.max_evals;
  }
  if (given("--stats-over")) {
    o.stats_over = f.parsed.stats_over;
  }
  if (given("--output")) {
    o.output = f.parsed.output;
  }
  if (given("--trace")) {
    o.trace = f.parsed.trace;
  }
  if (given("--success")) {
    o.success = f.parsed.success;
  }
  if (given("--value-eps")) {
    o.value_eps = f.parsed.value_eps;
  }
  if (given("--position-eps")) {
    o.position_eps = f.parsed.position_eps;
  }
  for (const auto& kv : f.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw eagle::Error(eagle::ErrorKind::invalid_config, "--set expects name=value, got '" + kv + "'");
    }
    nlohmann::json leaf;
    const std::string name = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (name == "es.local" || name == "es.termination") {
      leaf = value;
    } else {
      try {
        leaf = std::stod(value);
      } catch (const std::exception&) {
        throw eagle::Error(eagle::ErrorKind::invalid_config, "--set " + name + ": not a number: '" + value + "'");
      }
    }
    nlohmann::json nested = leaf;
    std::string path = name;
    for (auto dot = path.rfind('.'); dot != std::string::npos; dot = path.rfind('.')) {
      nested = nlohmann::json{{path.substr(dot + 1), nested}};
      path = path.substr(0, dot);
    }
    eagle::apply_settings_json(o.settings, nlohmann::json{{path, nested}});
  }

  if (o.tol) {
    o.settings.set_tolerance(*o.tol);
  }
  if (o.pop) {
    o.settings.set_population(*o.pop);
  }
  if (o.max_evals) {
    o.settings.es.max_evals = *o.max_evals;
    o.settings.fa_max_evals = *o.max_evals;
    o.settings.pso.max_evals = *o.max_evals;
    o.settings.nm.max_evals = *o.max_evals;
  }
  if (o.functions.size() == 1 && o.functions.front() == "all") {
    o.functions = eagle::problem_names();
  }
  eagle::parse_format(o.output);
  eagle::parse_stats_over(o.stats_over);
  return o;
}

struct RunOutput
{
  std::vector<ExperimentReport> reports;
  std::vector<eagle::TrialRecord> trials;
};

RunOutput execute(const RunOptions& o)
{
  eagle::SuccessCriteria criteria;
  criteria.mode = o.success == "value" ? eagle::SuccessMode::value_gap : eagle::SuccessMode::position_gap;
  criteria.value_eps = o.value_eps;
  criteria.position_eps = o.position_eps;
  const auto noise = eagle::NoiseModel::additive(o.noise_sigma);
  const auto over = eagle::parse_stats_over(o.stats_over);

  RunOutput out;
  for (const auto& fname : o.functions) {
    const auto problem = eagle::make_problem(fname, o.dim);
    for (const auto& aname : o.algorithms) {
      const auto algorithm = eagle::parse_algorithm(aname);
      auto trials = eagle::run_trials(algorithm, problem, noise, o.runs, o.seed, criteria, o.settings);
      out.reports.push_back(eagle::summarize(trials, over));
      if (!o.trace.empty()) {
        out.trials.insert(out.trials.end(), std::make_move_iterator(trials.begin()),
                          std::make_move_iterator(trials.end()));
      }
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw eagle::Error(eagle::ErrorKind::invalid_config, "cannot write '" + path + "'");
  }
  f << text;
}

std::string list_functions_text()
{
  std::ostringstream os;
  os << "name         dim      domain                 f*\n";
  for (const auto& f : eagle::function_registry()) {
    const eagle::BenchmarkProblem p(f.id, f.default_dim);
    char domain[64];
    std::snprintf(domain, sizeof domain, "[%g, %g]", f.domain.lo, f.domain.hi);
    const std::string dim = std::to_string(f.default_dim) + (f.fixed_dim ? " fixed" : "");
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %-8s %-22s %.10g\n", std::string(f.name).c_str(), dim.c_str(), domain,
                  p.f_star());
    os << line;
  }
  return os.str();
}

std::vector<double> parse_values(const std::string& s)
{
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw eagle::Error(eagle::ErrorKind::invalid_config, "--values: not a number: '" + item + "'");
    }
  }
  if (out.empty()) {
    throw eagle::Error(eagle::ErrorKind::invalid_config, "--values is empty");
  }
  return out;
}

// Sweep reports carry the swept value in front of the usual columns.
std::string emit_sweep(const std::string& param, const std::vector<std::pair<double, std::vector<ExperimentReport>>>& rows,
                       eagle::ReportFormat format)
{
  if (format == eagle::ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["param"] = param;
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& [value, reports] : rows) {
      nlohmann::ordered_json point;
      point["value"] = value;
      point["reports"] = nlohmann::ordered_json::array();
      for (const auto& r : reports) {
        point["reports"].push_back(eagle::to_json(r));
      }
      doc["points"].push_back(std::move(point));
    }
    return doc.dump(2) + "\n";
  }
  std::string out;
  for (const auto& [value, reports] : rows) {
    char v[64];
    std::snprintf(v, sizeof v, "%.17g", value);
    if (format == eagle::ReportFormat::csv) {
      const std::string body = eagle::emit_csv(reports);
      if (out.empty()) {
        out = "param,value," + std::string(eagle::kReportColumns) + "\n";
      }
      std::istringstream lines(body.substr(body.find('\n') + 1));
      for (std::string line; std::getline(lines, line);) {
        out += param + "," + v + "," + line + "\n";
      }
    } else {
      out += param + " = " + v + "\n" + eagle::emit_table(reports) + "\n";
    }
  }
  return out;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Eagle Strategy experiments on noisy benchmark functions"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "run seeded trials and report evaluation and success statistics");
  add_run_flags(*run, run_flags);

  std::string list_output = "table";
  auto* list = app.add_subcommand("list-functions", "list the registered benchmark functions");
  list->add_option("--output", list_output, "table or json")->check(CLI::IsMember({"table", "json"}));

  Flags sweep_flags;
  std::string param, values;
  auto* sweep = app.add_subcommand("sweep", "repeat a run over a grid of one parameter");
  add_run_flags(*sweep, sweep_flags);
  sweep->add_option("--param", param, "dotted setting name, or noise-sigma, pop, tol")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();

  std::string show_for;
  auto* params = app.add_subcommand("show-settings", "print the effective settings as a config file");
  params->add_option("--config", show_for, "JSON config file")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const RunOptions o = resolve(*run, run_flags);
      const RunOutput out = execute(o);
      std::cout << eagle::emit_report(out.reports, o.output);
      if (!o.trace.empty()) {
        write_file(o.trace, eagle::emit_trace_csv(out.trials));
      }
    } else if (*list) {
      std::cout << (list_output == "json" ? eagle::emit_registry_json() : list_functions_text());
    } else if (*sweep) {
      const RunOptions base = resolve(*sweep, sweep_flags);
      std::vector<std::pair<double, std::vector<ExperimentReport>>> rows;
      for (double v : parse_values(values)) {
        RunOptions o = base;
        if (param == "noise-sigma") {
          o.noise_sigma = v;
        } else if (param == "pop") {
          o.settings.set_population(static_cast<std::size_t>(v));
        } else if (param == "tol") {
          o.settings.set_tolerance(v);
        } else {
          eagle::set_parameter(o.settings, param, v);
        }
        rows.emplace_back(v, execute(o).reports);
      }
      std::cout << emit_sweep(param, rows, eagle::parse_format(base.output));
    } else if (*params) {
      RunOptions o;
      if (!show_for.empty()) {
        apply_config_file(o, show_for);
      }
      nlohmann::ordered_json doc;
      doc["algorithm"] = o.algorithms;
      doc["function"] = o.functions;
      doc["dim"] = o.dim;
      doc["noise_sigma"] = o.noise_sigma;
      doc["runs"] = o.runs;
      doc["seed"] = o.seed;
      doc["stats_over"] = o.stats_over;
      doc["output"] = o.output;
      doc["success"] = o.success;
      doc["value_eps"] = o.value_eps;
      doc["settings"] = eagle::settings_to_json(o.settings);
      std::cout << doc.dump(2) << "\n";
    }
  } catch (const eagle::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid_config: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
