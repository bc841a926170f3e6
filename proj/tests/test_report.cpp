#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <eagle/config.hpp>
#include <eagle/report.hpp>

using namespace eagle;

namespace {

ExperimentReport sample_report()
{
  ExperimentReport r;
  r.algorithm = "es";
  r.function = "easom";
  r.dim = 2;
  r.sigma = 0.025;
  r.runs = 100;
  r.mean_evals_k = 12.7;
  r.std_evals_k = 1.15;
  r.success_rate_pct = 100.0;
  return r;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST(Report, EmptyCsvIsHeaderOnly)
{
  EXPECT_EQ(emit_report({}, "csv"), "algorithm,function,dim,sigma,runs,mean_evals_k,std_evals_k,success_rate_pct\n");
}

TEST(Report, CsvRowInColumnOrder)
{
  const auto csv = emit_report({sample_report()}, ReportFormat::csv);
  EXPECT_EQ(csv.substr(csv.find('\n') + 1), "es,easom,2,0.025000000000000001,100,12.699999999999999,1.1499999999999999,100\n");
}

TEST(Report, TableCellFormat)
{
  EXPECT_EQ(table_cell(sample_report()), "12.7 ± 1.15 (100)");
  ExperimentReport r = sample_report();
  r.mean_evals_k = 12.0;
  r.std_evals_k = 1.632993;
  EXPECT_EQ(table_cell(r), "12.0 ± 1.63 (100)");
  r.success_rate_pct = 97.0;
  EXPECT_EQ(table_cell(r), "12.0 ± 1.63 (97)");
}

TEST(Report, TableHasOneColumnPerAlgorithm)
{
  ExperimentReport pso = sample_report();
  pso.algorithm = "pso";
  pso.mean_evals_k = 185.9;
  pso.std_evals_k = 3.1;
  pso.success_rate_pct = 97;
  const auto t = emit_report({pso, sample_report()}, ReportFormat::table);
  EXPECT_NE(t.find("PSO"), std::string::npos);
  EXPECT_NE(t.find("ES"), std::string::npos);
  EXPECT_NE(t.find("185.9 ± 3.10 (97)"), std::string::npos);
  EXPECT_NE(t.find("12.7 ± 1.15 (100)"), std::string::npos);
  EXPECT_LT(t.find("PSO"), t.find("ES"));
}

TEST(Report, JsonRoundTrip)
{
  ExperimentReport b = sample_report();
  b.algorithm = "pso";
  b.mean_evals_k = 1.0 / 3.0;
  b.std_evals_k = 0.1 + 0.2;
  b.success_rate_pct = 97.5;
  const std::vector<ExperimentReport> in{sample_report(), b};
  EXPECT_EQ(parse_reports_json(emit_report(in, ReportFormat::json)), in);
  EXPECT_TRUE(parse_reports_json(emit_report({}, ReportFormat::json)).empty());
}

TEST(Report, UnknownFormat)
{
  try {
    emit_report({}, "xml");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_format);
  }
}

TEST(Report, TraceCsv)
{
  TrialRecord t;
  t.problem = "ackley";
  t.seed = 4;
  t.trace.push_back({0, 1.5, 0.02, 1.5, 10, true, TraceSource::init});
  t.trace.push_back({1, 0.5, 0.01, 0.5, 90, true, TraceSource::local});
  const auto csv = emit_trace_csv({t});
  EXPECT_EQ(csv,
            "algorithm,function,seed,trial,stage,evals,best_mean,best_std,accepted,source\n"
            "es,ackley,4,0,0,10,1.5,0.02,1,init\n"
            "es,ackley,4,0,1,90,0.5,0.01,1,local\n");
}

TEST(Registry, CheckedInFileMatchesEmitter)
{
  const std::string on_disk = read_file(std::string(EAGLE_SOURCE_DIR) + "/data/functions.json");
  EXPECT_EQ(on_disk, emit_registry_json());
}

TEST(Registry, JsonListsEveryFunction)
{
  const auto doc = nlohmann::json::parse(emit_registry_json());
  ASSERT_EQ(doc.at("functions").size(), problem_names().size());
  for (const auto& f : doc.at("functions")) {
    const auto p = make_problem(f.at("name").get<std::string>(), f.at("default_dim").get<std::size_t>());
    EXPECT_EQ(f.at("f_star").get<double>(), p.f_star());
    EXPECT_EQ(f.at("lower").get<double>(), p.bounds().front().lo);
  }
}

TEST(Config, NestedSettingsApply)
{
  AlgorithmSettings s;
  apply_settings_json(s, nlohmann::json::parse(R"({"es": {"fa": {"gamma": 0.5, "n": 30}, "local": "nelder_mead"},
                                                   "pso": {"w": 0.6}})"));
  EXPECT_EQ(s.es.fa.gamma, 0.5);
  EXPECT_EQ(s.es.fa.n, 30u);
  EXPECT_EQ(s.es.local, LocalSearcher::nelder_mead);
  EXPECT_EQ(s.pso.w, 0.6);
  EXPECT_EQ(s.fa.gamma, FaConfig{}.gamma);
}

TEST(Config, Errors)
{
  AlgorithmSettings s;
  EXPECT_THROW(set_parameter(s, "es.nope", 1.0), Error);
  EXPECT_THROW(set_parameter(s, "pso.n", 2.5), Error);
  EXPECT_THROW(apply_settings_json(s, nlohmann::json::parse(R"({"pso": {"w": "fast"}})")), Error);
  EXPECT_THROW(apply_settings_json(s, nlohmann::json::parse(R"({"es": {"local": "sa"}})")), Error);
}

TEST(Config, SettingsRoundTrip)
{
  AlgorithmSettings s;
  s.es.levy_lambda = 2.25;
  s.pso.n = 40;
  s.es.termination = Termination::position;
  AlgorithmSettings t;
  apply_settings_json(t, nlohmann::json::parse(settings_to_json(s).dump()));
  for (const auto& p : parameters()) {
    EXPECT_EQ(p.get(t), p.get(s)) << p.name;
  }
  EXPECT_EQ(t.es.termination, Termination::position);
}

TEST(Config, CheckedInDefaultsMatchBuiltIns)
{
  const auto doc = nlohmann::json::parse(read_file(std::string(EAGLE_SOURCE_DIR) + "/configs/default.json"));
  AlgorithmSettings from_file;
  apply_settings_json(from_file, doc.at("settings"));
  const AlgorithmSettings builtin;
  for (const auto& p : parameters()) {
    EXPECT_EQ(p.get(from_file), p.get(builtin)) << p.name;
  }
}
