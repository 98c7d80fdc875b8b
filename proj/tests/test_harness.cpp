#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "stegshape/errors.hpp"
#include "stegshape/harness.hpp"

using namespace steg;

namespace {

CampaignConfig small_campaign() {
  CampaignConfig cfg;
  cfg.models = {CoverModel::Uniform, CoverModel::Smooth};
  cfg.width = 24;
  cfg.height = 24;
  cfg.message_lengths = {100};
  cfg.shaping_bits = {0, 2};
  cfg.repetitions = 3;
  cfg.master_seed = 7;
  return cfg;
}

RunRecord record_with_gain(double gain) {
  RunRecord rec;
  rec.model = CoverModel::Uniform;
  rec.n = 100;
  rec.k = 2;
  rec.gain.kl = gain;
  return rec;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("record count is the configuration product") {
  std::vector<RunRecord> records = run_campaign(small_campaign());
  CHECK(records.size() == 2 * 1 * 2 * 3);
}

TEST_CASE("k = 0 gains are exactly zero") {
  CampaignConfig cfg = small_campaign();
  cfg.shaping_bits = {0};
  for (const auto& rec : run_campaign(cfg)) {
    CHECK(rec.gain.kl == 0.0);
    CHECK(rec.gain.js == 0.0);
    CHECK(rec.gain.tv == 0.0);
    CHECK(rec.gain.chi2 == 0.0);
    CHECK(rec.gain.cooc == 0.0);
    CHECK(rec.chosen_h == 0);
  }
}

TEST_CASE("identical configs give byte-identical records") {
  CampaignConfig cfg = small_campaign();
  std::string first = emit_csv(records_table(run_campaign(cfg), false));
  std::string second = emit_csv(records_table(run_campaign(cfg), false));
  CHECK(first == second);
}

TEST_CASE("keyed paths change the records but stay deterministic") {
  CampaignConfig cfg = small_campaign();
  std::string seq = emit_csv(records_table(run_campaign(cfg), false));
  cfg.path_mode = PathMode::Keyed;
  std::string keyed = emit_csv(records_table(run_campaign(cfg), false));
  CHECK(seq != keyed);
  CHECK(keyed == emit_csv(records_table(run_campaign(cfg), false)));
}

TEST_CASE("aggregate handles a single record") {
  std::vector<SummaryRow> rows = aggregate({record_with_gain(0.25)}, GroupBy::K);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].runs == 1);
  CHECK(rows[0].mean_gain == 0.25);
  CHECK(rows[0].ci95 == 0.0);
  CHECK(rows[0].success_rate == 1.0);
}

TEST_CASE("aggregate of gains zero and one") {
  std::vector<SummaryRow> rows =
      aggregate({record_with_gain(0.0), record_with_gain(1.0)}, GroupBy::K);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean_gain == doctest::Approx(0.5).epsilon(1e-12));
  // 1.96 * std({0,1}) / sqrt(2) = 1.96 * 0.7071 / 1.4142
  CHECK(rows[0].ci95 == doctest::Approx(0.98).epsilon(1e-12));
  CHECK(rows[0].success_rate == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("aggregate groups and orders by the requested key") {
  std::vector<RunRecord> records = run_campaign(small_campaign());
  std::vector<SummaryRow> by_k = aggregate(records, GroupBy::K);
  REQUIRE(by_k.size() == 2);
  CHECK(by_k[0].group == "0");
  CHECK(by_k[1].group == "2");
  CHECK(by_k[0].runs == 6);
  CHECK(by_k[0].mean_gain == 0.0);
  CHECK(by_k[0].ci95 == 0.0);
  CHECK(by_k[0].success_rate == 0.0);  // success counts strictly positive gains

  std::vector<SummaryRow> by_model = aggregate(records, GroupBy::Model);
  REQUIRE(by_model.size() == 2);
  CHECK(by_model[0].group == "uniform");
  CHECK(by_model[1].group == "smooth");

  CHECK_THROWS_AS(aggregate({}, GroupBy::K), std::invalid_argument);
}

TEST_CASE("metric gains and index stats are grouped per k") {
  std::vector<RunRecord> records = run_campaign(small_campaign());
  std::vector<MetricGainRow> metric_rows = metric_gain_by_k(records);
  REQUIRE(metric_rows.size() == 2);
  CHECK(metric_rows[0].k == 0);
  CHECK(metric_rows[0].mean_gain.kl == 0.0);
  CHECK(metric_rows[1].runs == 6);

  std::vector<IndexStatsRow> index_rows = index_stats_by_k(records);
  REQUIRE(index_rows.size() == 1);  // k = 0 has no index distribution
  CHECK(index_rows[0].k == 2);
  CHECK(index_rows[0].runs == 6);
  CHECK(index_rows[0].stats.largest_bucket_share >= 1.0 / 6.0);
}

TEST_CASE("timing rows report the candidate counts") {
  TimingConfig cfg;
  cfg.width = 64;
  cfg.height = 64;
  cfg.message_length = 100;
  cfg.repetitions = 1;
  std::vector<TimingRow> rows = timing_study(cfg);
  REQUIRE(rows.size() == 5);
  const std::size_t expected[] = {1, 16, 256, 1024, 4096};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].candidates == expected[i]);
    CHECK(rows[i].mean_search_ms >= 0.0);
  }
}

TEST_CASE("stc campaign pairs every k inside a cell") {
  StcCampaignConfig cfg;
  cfg.models = {CoverModel::Uniform};
  cfg.width = 32;
  cfg.height = 32;
  cfg.message_lengths = {200};
  cfg.shaping_bits = {0, 2, 4};
  cfg.repetitions = 2;
  std::vector<StcRunRecord> records = run_stc_campaign(cfg);
  REQUIRE(records.size() == 6);
  std::map<int, std::uint64_t> cell_seed;
  for (const auto& rec : records) {
    auto [it, fresh] = cell_seed.emplace(rec.rep, rec.seed);
    if (!fresh) {
      CHECK(it->second == rec.seed);
    }
    CHECK(rec.blocks == (200 + rec.k + 3) / 4);
  }

  std::vector<StcSummaryRow> summary = stc_summary(records);
  REQUIRE(summary.size() == 3);
  CHECK(summary[0].k == 0);
  CHECK(summary[0].reduction_vs_k0 == 0.0);
}

TEST_CASE("stc mean cost is non-increasing in k over a 100-run campaign") {
  StcCampaignConfig cfg;
  cfg.width = 32;
  cfg.height = 32;
  cfg.message_lengths = {240};
  cfg.shaping_bits = {0, 2, 4, 6, 8};
  cfg.repetitions = 25;  // 4 models x 25 = 100 runs per k
  cfg.master_seed = 3;
  std::vector<StcSummaryRow> summary = stc_summary(run_stc_campaign(cfg));
  REQUIRE(summary.size() == 5);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    CHECK(summary[i].mean_cost <= summary[i - 1].mean_cost);
  }
}

TEST_CASE("campaign configs are validated") {
  CampaignConfig cfg = small_campaign();
  cfg.message_lengths = {24 * 24};
  CHECK_THROWS_AS(run_campaign(cfg), ConfigError);  // N + k exceeds the pixel count
  cfg = small_campaign();
  cfg.repetitions = 0;
  CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
  cfg = small_campaign();
  cfg.shaping_bits = {30};
  CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
}

TEST_CASE("csv emission quotes and round-trips") {
  CsvTable table;
  table.header = {"name", "value"};
  table.rows = {{"plain", "1.5"}, {"with,comma", "2"}, {"with\"quote", "3"}, {"multi\nline", "4"}};
  std::string text = emit_csv(table);
  CsvTable back = parse_csv(text);
  CHECK(back.header == table.header);
  CHECK(back.rows == table.rows);

  CsvTable empty;
  empty.header = {"a", "b"};
  CHECK(emit_csv(empty) == "a,b\n");
}

TEST_CASE("csv numbers round-trip through 17 significant digits") {
  double value = 0.1234567890123456789;
  CHECK(std::stod(csv_double(value)) == value);
  CHECK(csv_fixed(1.23456, 3) == "1.235");
}

TEST_CASE("campaign config parsing") {
  std::istringstream good(
      "# campaign\n"
      "models = uniform, bimodal\n"
      "width = 50\n"
      "height = 40\n"
      "n_list = 100, 200\n"
      "k_list = 0, 2, 4\n"
      "reps = 5\n"
      "master_seed = 99\n"
      "path = keyed\n"
      "objective = kl\n");
  CampaignConfig cfg = parse_campaign_config(good);
  CHECK(cfg.models == std::vector<CoverModel>{CoverModel::Uniform, CoverModel::Bimodal});
  CHECK(cfg.width == 50);
  CHECK(cfg.height == 40);
  CHECK(cfg.message_lengths == std::vector<int>{100, 200});
  CHECK(cfg.shaping_bits == std::vector<unsigned>{0, 2, 4});
  CHECK(cfg.repetitions == 5);
  CHECK(cfg.master_seed == 99);
  CHECK(cfg.path_mode == PathMode::Keyed);

  std::istringstream unknown("bogus = 1\n");
  CHECK_THROWS_AS(parse_campaign_config(unknown), ConfigError);
  std::istringstream bad_model("models = sepia\n");
  CHECK_THROWS_AS(parse_campaign_config(bad_model), ConfigError);
  std::istringstream bad_path("path = spiral\n");
  CHECK_THROWS_AS(parse_campaign_config(bad_path), ConfigError);
  std::istringstream dup("width = 3\nwidth = 4\n");
  CHECK_THROWS_AS(parse_campaign_config(dup), ConfigError);
  std::istringstream bad_objective("objective = stc\n");
  CHECK_THROWS_AS(parse_campaign_config(bad_objective), ConfigError);

  std::istringstream stc_good("models = smooth\nreps = 2\n");
  StcCampaignConfig stc_cfg = parse_stc_config(stc_good);
  CHECK(stc_cfg.models == std::vector<CoverModel>{CoverModel::Smooth});
  CHECK(stc_cfg.repetitions == 2);
  std::istringstream stc_bad("path = seq\n");
  CHECK_THROWS_AS(parse_stc_config(stc_bad), ConfigError);
}

}  // TEST_SUITE
