#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "satlab/experiment.hpp"
#include "json.hpp"

using namespace satlab;

namespace {

ExperimentConfig weak_config() {
  ExperimentConfig c;
  c.mode = Mode::kWeak;
  c.n_values = {60};
  c.s_values = {3, 4};
  c.trials = 4;
  c.master_seed = 11;
  return c;
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_records(out, r.records, OutputFormat::kCsv);
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ExperimentRecord ratio_record(std::size_t n, double ratio) {
  ExperimentRecord r;
  r.mode = "strong";
  r.n = n;
  r.s = 3;
  r.ratio = ratio;
  r.verified = true;
  return r;
}

}  // namespace

TEST(Parse, ModesAndFormats) {
  EXPECT_EQ(parse_mode("strong"), Mode::kStrong);
  EXPECT_EQ(parse_mode("oracle-sweep"), Mode::kOracleSweep);
  EXPECT_EQ(parse_mode("naive-compare"), Mode::kNaiveCompare);
  EXPECT_THROW(parse_mode("fast"), std::invalid_argument);
  EXPECT_EQ(parse_format("json"), OutputFormat::kJson);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
  for (Mode m : {Mode::kStrong, Mode::kWeak, Mode::kOracleSweep, Mode::kGoodness, Mode::kEdgecover,
                 Mode::kNaiveCompare})
    EXPECT_EQ(parse_mode(mode_name(m)), m);
}

TEST(Parse, ParamsSpec) {
  const ParamsSpec all = parse_params_spec("a1=40,a2=20,a3=15");
  EXPECT_EQ(all.a1, 40u);
  EXPECT_EQ(all.a2, 20u);
  EXPECT_EQ(all.a3, 15u);
  const ParamsSpec compact = parse_params_spec("compact,a1=30");
  EXPECT_EQ(compact.preset, ParamsSpec::Preset::kCompact);
  EXPECT_EQ(compact.a1, 30u);
  EXPECT_FALSE(compact.a2.has_value());
  EXPECT_EQ(parse_params_spec("default").preset, ParamsSpec::Preset::kDefault);
  EXPECT_THROW(parse_params_spec("a4=3"), std::invalid_argument);
  EXPECT_THROW(parse_params_spec("a1=-3"), std::invalid_argument);
  EXPECT_THROW(parse_params_spec("a1=x"), std::invalid_argument);
  EXPECT_THROW(parse_params_spec("a1"), std::invalid_argument);

  const ConstructionParams pinned = all.resolve(1000, 0.5, 3);
  EXPECT_EQ(pinned.a1, 40u);
  EXPECT_EQ(pinned.a3, 15u);
  const ConstructionParams mixed = compact.resolve(4000, 0.5, 3);
  EXPECT_EQ(mixed.a1, 30u);
  EXPECT_EQ(mixed.a2, compact_params(4000, 0.5, 3).a2);
  EXPECT_THROW(parse_params_spec("a1=600,a2=600,a3=600").resolve(1000, 0.5, 3), std::invalid_argument);
}

TEST(Config, Validation) {
  ExperimentConfig c = weak_config();
  EXPECT_NO_THROW(validate_config(c));
  c.trials = 0;
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c = weak_config();
  c.n_values.clear();
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c = weak_config();
  c.s_values = {2};
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c = weak_config();
  c.p = 1.5;
  EXPECT_THROW(validate_config(c), std::invalid_argument);

  ExperimentConfig strong;
  strong.mode = Mode::kStrong;
  strong.n_values = {50};
  EXPECT_THROW(validate_config(strong), std::invalid_argument);

  ExperimentConfig naive;
  naive.mode = Mode::kNaiveCompare;
  naive.n_values = {2000};
  naive.s_values = {4};
  naive.params.preset = ParamsSpec::Preset::kCompact;
  EXPECT_THROW(validate_config(naive), std::invalid_argument);

  ExperimentConfig oracle;
  oracle.mode = Mode::kOracleSweep;
  oracle.n_values = {8};
  EXPECT_THROW(validate_config(oracle), std::invalid_argument);

  ExperimentConfig goodness;
  goodness.mode = Mode::kGoodness;
  goodness.n_values = {100};
  goodness.t = 3;
  goodness.gamma = 0.02;
  EXPECT_THROW(validate_config(goodness), std::invalid_argument);
}

TEST(Experiment, RecordsSortedAndSeeded) {
  const ExperimentResult r = run(weak_config());
  ASSERT_EQ(r.records.size(), 8u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const ExperimentRecord& rec = r.records[i];
    EXPECT_EQ(rec.s, i < 4 ? 3u : 4u);
    EXPECT_EQ(rec.trial_index, i % 4);
    EXPECT_EQ(rec.seed, derive_seed(11, rec.trial_index));
    EXPECT_FALSE(rec.wall_time_ms.has_value());
  }
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(r.summary[0].trials, 4u);
}

TEST(Experiment, WeakAtSixty) {
  ExperimentConfig c = weak_config();
  c.trials = 10;
  const ExperimentResult r = run(c);
  std::size_t ok = 0;
  for (const ExperimentRecord& rec : r.records) {
    ASSERT_TRUE(rec.formula_baseline.has_value());
    EXPECT_DOUBLE_EQ(*rec.formula_baseline, rec.s == 3 ? 59.0 : 117.0);
    if (rec.verified) {
      ++ok;
      EXPECT_EQ(*rec.edge_count, rec.s == 3 ? 59u : 117u);
      EXPECT_DOUBLE_EQ(*rec.ratio, 1.0);
    }
  }
  EXPECT_GE(ok, 18u);
}

TEST(Experiment, OracleSweep) {
  ExperimentConfig c;
  c.mode = Mode::kOracleSweep;
  c.n_values = {4, 5};
  c.s_values = {3, 4, 5};
  c.trials = 7;
  const ExperimentResult r = run(c);
  ASSERT_EQ(r.records.size(), 5u);  // (4,3) (4,4) (5,3) (5,4) (5,5)
  for (const ExperimentRecord& rec : r.records) {
    EXPECT_TRUE(rec.verified);
    EXPECT_EQ(rec.oracle_sat, rec.oracle_wsat);
    EXPECT_DOUBLE_EQ(rec.p, 1.0);
  }
  EXPECT_EQ(*r.records[4].oracle_sat, 9u);
  EXPECT_TRUE(r.all_verified());
}

TEST(Experiment, DeterministicAcrossRunsAndJobs) {
  ExperimentConfig c;
  c.mode = Mode::kStrong;
  c.n_values = {400, 600};
  c.s_values = {3};
  c.trials = 3;
  c.master_seed = 5;
  c.params.preset = ParamsSpec::Preset::kCompact;
  const std::string a = csv_of(run(c));
  const std::string b = csv_of(run(c));
  c.jobs = 4;
  const std::string d = csv_of(run(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  c.master_seed = 6;
  EXPECT_NE(a, csv_of(run(c)));
}

TEST(Experiment, TimingOnlyOnRequest) {
  ExperimentConfig c = weak_config();
  c.trials = 1;
  c.timing = true;
  for (const ExperimentRecord& rec : run(c).records) EXPECT_TRUE(rec.wall_time_ms.has_value());
}

TEST(Output, CsvColumnsAndNulls) {
  const ExperimentResult r = run(weak_config());
  const auto rows = lines(csv_of(r));
  ASSERT_EQ(rows.size(), r.records.size() + 1);
  std::string header;
  for (std::size_t i = 0; i < record_columns().size(); ++i) header += (i ? "," : "") + record_columns()[i];
  EXPECT_EQ(rows[0], header);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::count(rows[i].begin(), rows[i].end(), ','), static_cast<long>(record_columns().size() - 1));
    EXPECT_EQ(rows[i].rfind("weak,60,0.5,", 0), 0u) << rows[i];
    EXPECT_NE(rows[i].find(",,"), std::string::npos);  // empty cells for modes' unused fields
  }
}

TEST(Output, JsonMatchesColumns) {
  const ExperimentResult r = run(weak_config());
  std::ostringstream out;
  write_records(out, r.records, OutputFormat::kJson);
  const nlohmann::ordered_json arr = nlohmann::ordered_json::parse(out.str());
  ASSERT_TRUE(arr.is_array());
  ASSERT_EQ(arr.size(), r.records.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : arr[i].items()) keys.push_back(k);
    EXPECT_EQ(keys, record_columns());
    EXPECT_TRUE(arr[i]["b2_size"].is_null());
    EXPECT_TRUE(arr[i]["wall_time_ms"].is_null());
    EXPECT_EQ(arr[i]["n"], 60);
    EXPECT_EQ(arr[i]["verified"].get<bool>(), r.records[i].verified);
    EXPECT_EQ(arr[i]["seed"].get<std::uint64_t>(), r.records[i].seed);
  }
}

TEST(Output, WriteFileReportsPath) {
  try {
    write_records_file("/nonexistent-dir/out.csv", {}, OutputFormat::kCsv);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}

TEST(Convergence, DecreasingRatiosTrend) {
  const ConvergenceTable t =
      convergence_table({ratio_record(1000, 1.8), ratio_record(2000, 1.5), ratio_record(4000, 1.3)});
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_TRUE(t.trend);
  EXPECT_DOUBLE_EQ(t.spearman, -1.0);
}

TEST(Convergence, IncreasingRatiosDoNot) {
  const ConvergenceTable t = convergence_table({ratio_record(1000, 1.2), ratio_record(2000, 1.4)});
  EXPECT_FALSE(t.trend);
  EXPECT_DOUBLE_EQ(t.spearman, 1.0);
}

TEST(Convergence, AveragesPerN) {
  const ConvergenceTable t = convergence_table(
      {ratio_record(1000, 1.0), ratio_record(1000, 2.0), ratio_record(2000, 1.4), ratio_record(2000, 1.2)});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(t.rows[0].mean_ratio, 1.5);
  EXPECT_EQ(t.rows[0].trials, 2u);
  EXPECT_TRUE(t.trend);
}

TEST(Convergence, NeedsTwoSizes) {
  EXPECT_THROW(convergence_table({ratio_record(1000, 1.5), ratio_record(1000, 1.4)}), std::invalid_argument);
  EXPECT_THROW(convergence_table({}), std::invalid_argument);
}

TEST(Summary, Aggregates) {
  std::vector<ExperimentRecord> recs{ratio_record(1000, 1.0), ratio_record(1000, 3.0), ratio_record(2000, 2.0)};
  recs[1].verified = false;
  const auto rows = summarize(recs);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].trials, 2u);
  EXPECT_EQ(rows[0].verified, 1u);
  EXPECT_DOUBLE_EQ(rows[0].pass_rate(), 0.5);
  std::ostringstream out;
  write_summary(out, rows);
  EXPECT_EQ(lines(out.str()).size(), 3u);
}
