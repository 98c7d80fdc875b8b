#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stegshape/csv.hpp"
#include "stegshape/image.hpp"
#include "stegshape/shaping.hpp"
#include "stegshape/stc.hpp"

namespace steg {

enum class PathMode { Sequential, Keyed };

struct CampaignConfig {
  std::vector<CoverModel> models = {CoverModel::Uniform, CoverModel::Smooth,
                                    CoverModel::Gradient, CoverModel::Bimodal};
  int width = 100;
  int height = 100;
  std::vector<int> message_lengths = {1000};
  std::vector<unsigned> shaping_bits = {0, 2, 4, 6, 8};
  int repetitions = 10;
  std::uint64_t master_seed = 1;
  PathMode path_mode = PathMode::Sequential;
  Objective objective = Objective::KLHistogram;
};

struct MetricSet {
  double kl = 0.0;
  double js = 0.0;
  double tv = 0.0;
  double chi2 = 0.0;
  double cooc = 0.0;
};

struct RunRecord {
  CoverModel model;
  int n = 0;
  unsigned k = 0;
  int rep = 0;
  std::uint64_t seed = 0;     // per-run seed, derived from (master, ordinal)
  MetricSet baseline;         // fair N+k embedding vs cover
  MetricSet shaped;           // selected candidate vs cover
  MetricSet gain;             // relative_gain per metric
  std::uint32_t chosen_h = 0;
  double search_ms = 0.0;     // wall clock of the exhaustive candidate search
};

// One run per (model, N, k, repetition), in that enumeration order. Fully
// deterministic except search_ms.
std::vector<RunRecord> run_campaign(const CampaignConfig& cfg);

enum class GroupBy { K, Model, N };

struct SummaryRow {
  std::string group;
  std::size_t runs = 0;
  double mean_gain = 0.0;     // mean KL gain
  double ci95 = 0.0;          // 1.96 * sample std / sqrt(n); 0 for n < 2
  double success_rate = 0.0;  // fraction of runs with gain strictly > 0
};

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records, GroupBy group_by);

// Mean gain of all five statistics per k (the keyed-path robustness view).
struct MetricGainRow {
  unsigned k = 0;
  std::size_t runs = 0;
  MetricSet mean_gain;
};

std::vector<MetricGainRow> metric_gain_by_k(const std::vector<RunRecord>& records);

// Selected-index dispersion per k (k >= 1 groups only).
struct IndexStatsRow {
  unsigned k = 0;
  std::size_t runs = 0;
  IndexStats stats;
};

std::vector<IndexStatsRow> index_stats_by_k(const std::vector<RunRecord>& records);

struct TimingConfig {
  std::vector<unsigned> shaping_bits = {0, 4, 8, 10, 12};
  std::vector<CoverModel> models = {CoverModel::Smooth, CoverModel::Bimodal};
  int width = 100;
  int height = 100;
  int message_length = 1000;
  int repetitions = 3;
  std::uint64_t master_seed = 1;
};

struct TimingRow {
  unsigned k = 0;
  std::size_t candidates = 0;
  double mean_search_ms = 0.0;
  double per_candidate_us = 0.0;
};

// Exhaustive-search cost per k over keyed paths.
std::vector<TimingRow> timing_study(const TimingConfig& cfg);

struct StcCampaignConfig {
  std::vector<CoverModel> models = {CoverModel::Uniform, CoverModel::Smooth,
                                    CoverModel::Gradient, CoverModel::Bimodal};
  int width = 100;
  int height = 100;
  std::vector<int> message_lengths = {1000};
  std::vector<unsigned> shaping_bits = {0, 2, 4, 6, 8};
  int repetitions = 10;
  std::uint64_t master_seed = 1;
};

struct StcRunRecord {
  CoverModel model;
  int n = 0;
  unsigned k = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::size_t blocks = 0;
  double total_cost = 0.0;
  std::uint32_t chosen_h = 0;
};

// Cover, message and path key are derived per (model, N, repetition) cell and
// shared by every k, so the k = 0 row is a paired reference for the others.
std::vector<StcRunRecord> run_stc_campaign(const StcCampaignConfig& cfg);

struct StcSummaryRow {
  unsigned k = 0;
  std::size_t runs = 0;
  double mean_cost = 0.0;
  double reduction_vs_k0 = 0.0;
};

std::vector<StcSummaryRow> stc_summary(const std::vector<StcRunRecord>& records);

// CSV views. Timing columns can be excluded for byte-identical comparisons.
CsvTable records_table(const std::vector<RunRecord>& records, bool include_timing = true);
CsvTable summary_table(const std::vector<SummaryRow>& rows, GroupBy group_by);
CsvTable metric_gain_table(const std::vector<MetricGainRow>& rows);
CsvTable index_stats_table(const std::vector<IndexStatsRow>& rows);
CsvTable timing_table(const std::vector<TimingRow>& rows);
CsvTable stc_records_table(const std::vector<StcRunRecord>& records);
CsvTable stc_summary_table(const std::vector<StcSummaryRow>& rows);

// Flat key=value config files ('#' comments). Unknown keys are errors.
CampaignConfig parse_campaign_config(std::istream& in);
StcCampaignConfig parse_stc_config(std::istream& in);

}  // namespace steg
