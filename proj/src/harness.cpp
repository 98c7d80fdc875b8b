#include "stegshape/harness.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>

#include "stegshape/errors.hpp"
#include "stegshape/lsb.hpp"
#include "stegshape/metrics.hpp"
#include "stegshape/rng.hpp"

namespace steg {

namespace {

struct SubSeeds {
  std::uint64_t cover;
  std::uint64_t message;
  std::uint64_t path;
  std::uint64_t session;
};

// Fixed draw order; every run consumes exactly these four.
SubSeeds derive_sub_seeds(std::uint64_t run_seed) {
  SplitMix64 gen(run_seed);
  SubSeeds seeds{};
  seeds.cover = gen.next_u64();
  seeds.message = gen.next_u64();
  seeds.path = gen.next_u64();
  seeds.session = gen.next_u64();
  return seeds;
}

struct CoverStats {
  Dist256 dist;
  Cooc256 cooc;
};

MetricSet measure(const CoverStats& cover, const Image& stego) {
  Dist256 q = smooth_normalize(histogram(stego));
  MetricSet m;
  m.kl = kl_div(cover.dist, q);
  m.js = js_div(cover.dist, q);
  m.tv = tv_dist(cover.dist, q);
  m.chi2 = chi2_sym(cover.dist, q);
  m.cooc = cooc_l1(cover.cooc, cooccurrence(stego));
  return m;
}

MetricSet gains(const MetricSet& base, const MetricSet& shaped) {
  MetricSet g;
  g.kl = relative_gain(base.kl, shaped.kl);
  g.js = relative_gain(base.js, shaped.js);
  g.tv = relative_gain(base.tv, shaped.tv);
  g.chi2 = relative_gain(base.chi2, shaped.chi2);
  g.cooc = relative_gain(base.cooc, shaped.cooc);
  return g;
}

void validate_dims(int width, int height) {
  if (width < 2 || height < 2) {
    throw ConfigError("campaign: cover dimensions must be at least 2x2");
  }
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double ci95_of(const std::vector<double>& xs) {
  if (xs.size() < 2) {
    return 0.0;
  }
  double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace

std::vector<RunRecord> run_campaign(const CampaignConfig& cfg) {
  validate_dims(cfg.width, cfg.height);
  if (cfg.repetitions < 1) {
    throw ConfigError("campaign: repetitions must be at least 1");
  }
  if (cfg.objective != Objective::KLHistogram) {
    throw ConfigError("campaign: use the stc campaign for the syndrome objective");
  }
  std::size_t pixels = static_cast<std::size_t>(cfg.width) * cfg.height;
  for (unsigned k : cfg.shaping_bits) {
    if (k > kMaxShapingBits) {
      throw ConfigError("campaign: k exceeds the 24-bit cap");
    }
    for (int n : cfg.message_lengths) {
      if (n < 1 || static_cast<std::size_t>(n) + k > pixels) {
        throw ConfigError("campaign: message plus index exceeds cover capacity");
      }
    }
  }

  std::vector<RunRecord> records;
  records.reserve(cfg.models.size() * cfg.message_lengths.size() *
                  cfg.shaping_bits.size() * cfg.repetitions);
  std::uint64_t ordinal = 0;
  for (CoverModel model : cfg.models) {
    for (int n : cfg.message_lengths) {
      for (unsigned k : cfg.shaping_bits) {
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
          std::uint64_t run_seed = mix_seed(cfg.master_seed, ordinal++);
          SubSeeds seeds = derive_sub_seeds(run_seed);

          SplitMix64 cover_gen(seeds.cover);
          Image cover = generate_cover(model, cfg.width, cfg.height, cover_gen);
          SplitMix64 msg_gen(seeds.message);
          BitVec message = random_bits(msg_gen, static_cast<std::size_t>(n));
          std::size_t total = static_cast<std::size_t>(n) + k;
          PositionList path = cfg.path_mode == PathMode::Sequential
                                  ? sequential_path(total)
                                  : keyed_path(seeds.path, pixels, total);

          CoverStats stats{smooth_normalize(histogram(cover)), cooccurrence(cover)};
          Image base_stego = embed_lsb(cover, fair_baseline_payload(message, k), path);

          ShapingConfig scfg{k, seeds.session, Objective::KLHistogram};
          auto t0 = std::chrono::steady_clock::now();
          ShapingResult selected = shape_select(cover, message, scfg, path, kl_objective(cover));
          auto t1 = std::chrono::steady_clock::now();

          RunRecord rec;
          rec.model = model;
          rec.n = n;
          rec.k = k;
          rec.rep = rep;
          rec.seed = run_seed;
          rec.baseline = measure(stats, base_stego);
          rec.shaped = measure(stats, selected.stego);
          rec.gain = gains(rec.baseline, rec.shaped);
          rec.chosen_h = selected.chosen_h;
          rec.search_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
#ifndef NDEBUG
          // Debug cross-check: the recorded KL is the candidate-list minimum.
          double best = selected.per_candidate.front().value;
          for (const auto& cand : selected.per_candidate) {
            best = std::min(best, cand.value);
          }
          assert(selected.objective_value == best);
          assert(rec.shaped.kl == selected.objective_value);
#endif
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records, GroupBy group_by) {
  if (records.empty()) {
    throw std::invalid_argument("aggregate: no records");
  }
  // Key doubles as the sort order; models keep their enum order.
  std::map<long long, std::pair<std::string, std::vector<double>>> groups;
  for (const auto& rec : records) {
    long long key = 0;
    std::string label;
    switch (group_by) {
      case GroupBy::K:
        key = rec.k;
        label = std::to_string(rec.k);
        break;
      case GroupBy::Model:
        key = static_cast<long long>(rec.model);
        label = cover_model_name(rec.model);
        break;
      case GroupBy::N:
        key = rec.n;
        label = std::to_string(rec.n);
        break;
    }
    auto& group = groups[key];
    group.first = label;
    group.second.push_back(rec.gain.kl);
  }
  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    (void)key;
    const auto& gains = group.second;
    SummaryRow row;
    row.group = group.first;
    row.runs = gains.size();
    row.mean_gain = mean_of(gains);
    row.ci95 = ci95_of(gains);
    std::size_t wins = 0;
    for (double g : gains) {
      if (g > 0.0) ++wins;
    }
    row.success_rate = static_cast<double>(wins) / static_cast<double>(gains.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricGainRow> metric_gain_by_k(const std::vector<RunRecord>& records) {
  std::map<unsigned, std::vector<const RunRecord*>> groups;
  for (const auto& rec : records) {
    groups[rec.k].push_back(&rec);
  }
  std::vector<MetricGainRow> rows;
  for (const auto& [k, recs] : groups) {
    MetricGainRow row;
    row.k = k;
    row.runs = recs.size();
    for (const auto* rec : recs) {
      row.mean_gain.kl += rec->gain.kl;
      row.mean_gain.js += rec->gain.js;
      row.mean_gain.tv += rec->gain.tv;
      row.mean_gain.chi2 += rec->gain.chi2;
      row.mean_gain.cooc += rec->gain.cooc;
    }
    double n = static_cast<double>(recs.size());
    row.mean_gain.kl /= n;
    row.mean_gain.js /= n;
    row.mean_gain.tv /= n;
    row.mean_gain.chi2 /= n;
    row.mean_gain.cooc /= n;
    rows.push_back(row);
  }
  return rows;
}

std::vector<IndexStatsRow> index_stats_by_k(const std::vector<RunRecord>& records) {
  std::map<unsigned, std::vector<std::uint32_t>> groups;
  for (const auto& rec : records) {
    if (rec.k >= 1) {
      groups[rec.k].push_back(rec.chosen_h);
    }
  }
  std::vector<IndexStatsRow> rows;
  for (const auto& [k, chosen] : groups) {
    rows.push_back({k, chosen.size(), index_stat(chosen, k)});
  }
  return rows;
}

std::vector<TimingRow> timing_study(const TimingConfig& cfg) {
  validate_dims(cfg.width, cfg.height);
  CampaignConfig run_cfg;
  run_cfg.models = cfg.models;
  run_cfg.width = cfg.width;
  run_cfg.height = cfg.height;
  run_cfg.message_lengths = {cfg.message_length};
  run_cfg.repetitions = cfg.repetitions;
  run_cfg.master_seed = cfg.master_seed;
  run_cfg.path_mode = PathMode::Keyed;
  std::vector<TimingRow> rows;
  for (unsigned k : cfg.shaping_bits) {
    run_cfg.shaping_bits = {k};
    std::vector<RunRecord> records = run_campaign(run_cfg);
    std::vector<double> times;
    times.reserve(records.size());
    for (const auto& rec : records) {
      times.push_back(rec.search_ms);
    }
    TimingRow row;
    row.k = k;
    row.candidates = std::size_t{1} << k;
    row.mean_search_ms = mean_of(times);
    row.per_candidate_us = row.mean_search_ms * 1000.0 / static_cast<double>(row.candidates);
    rows.push_back(row);
  }
  return rows;
}

std::vector<StcRunRecord> run_stc_campaign(const StcCampaignConfig& cfg) {
  validate_dims(cfg.width, cfg.height);
  if (cfg.repetitions < 1) {
    throw ConfigError("campaign: repetitions must be at least 1");
  }
  StcConfig stc_cfg;
  std::size_t pixels = static_cast<std::size_t>(cfg.width) * cfg.height;
  for (unsigned k : cfg.shaping_bits) {
    if (k > kMaxShapingBits) {
      throw ConfigError("campaign: k exceeds the 24-bit cap");
    }
    for (int n : cfg.message_lengths) {
      std::size_t blocks =
          (static_cast<std::size_t>(n) + k + stc_cfg.block_syndrome_bits - 1) /
          stc_cfg.block_syndrome_bits;
      if (n < 1 || blocks * stc_cfg.block_cover_bits > pixels) {
        throw ConfigError("campaign: syndrome blocks exceed cover capacity");
      }
    }
  }

  std::vector<StcRunRecord> records;
  records.reserve(cfg.models.size() * cfg.message_lengths.size() *
                  cfg.shaping_bits.size() * cfg.repetitions);
  std::uint64_t cell = 0;
  for (CoverModel model : cfg.models) {
    for (int n : cfg.message_lengths) {
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        // One seed per (model, N, rep) cell: every k sees the same cover,
        // message and path key, so the k = 0 reference is paired.
        std::uint64_t cell_seed = mix_seed(cfg.master_seed, cell++);
        SubSeeds seeds = derive_sub_seeds(cell_seed);
        SplitMix64 cover_gen(seeds.cover);
        Image cover = generate_cover(model, cfg.width, cfg.height, cover_gen);
        SplitMix64 msg_gen(seeds.message);
        BitVec message = random_bits(msg_gen, static_cast<std::size_t>(n));
        StcConfig keyed_cfg = stc_cfg;
        keyed_cfg.key = seeds.path;

        for (unsigned k : cfg.shaping_bits) {
          ShapingConfig scfg{k, seeds.session, Objective::SyndromeCost};
          StcOutcome outcome = stc_shape_select(cover, message, scfg, keyed_cfg);
          StcRunRecord rec;
          rec.model = model;
          rec.n = n;
          rec.k = k;
          rec.rep = rep;
          rec.seed = cell_seed;
          rec.blocks = outcome.blocks;
          rec.total_cost = outcome.total_cost;
          rec.chosen_h = outcome.chosen_h;
          records.push_back(rec);
        }
      }
    }
  }
  return records;
}

std::vector<StcSummaryRow> stc_summary(const std::vector<StcRunRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("stc_summary: no records");
  }
  std::map<unsigned, std::vector<double>> groups;
  for (const auto& rec : records) {
    groups[rec.k].push_back(rec.total_cost);
  }
  auto k0 = groups.find(0);
  if (k0 == groups.end()) {
    throw std::invalid_argument("stc_summary: k = 0 reference missing");
  }
  double ref = mean_of(k0->second);
  std::vector<StcSummaryRow> rows;
  for (const auto& [k, costs] : groups) {
    StcSummaryRow row;
    row.k = k;
    row.runs = costs.size();
    row.mean_cost = mean_of(costs);
    row.reduction_vs_k0 = relative_gain(ref, row.mean_cost);
    rows.push_back(row);
  }
  return rows;
}

namespace {

const std::vector<std::string> kMetricNames = {"kl", "js", "tv", "chi2", "cooc"};

void push_metric_set(std::vector<std::string>& row, const MetricSet& m) {
  row.push_back(csv_double(m.kl));
  row.push_back(csv_double(m.js));
  row.push_back(csv_double(m.tv));
  row.push_back(csv_double(m.chi2));
  row.push_back(csv_double(m.cooc));
}

}  // namespace

CsvTable records_table(const std::vector<RunRecord>& records, bool include_timing) {
  CsvTable table;
  table.header = {"model", "n", "k", "rep", "seed"};
  for (const char* suffix : {"_base", "_shaped", "_gain"}) {
    for (const auto& name : kMetricNames) {
      table.header.push_back(name + suffix);
    }
  }
  table.header.push_back("chosen_h");
  if (include_timing) {
    table.header.push_back("search_ms");
  }
  for (const auto& rec : records) {
    std::vector<std::string> row = {cover_model_name(rec.model), std::to_string(rec.n),
                                    std::to_string(rec.k), std::to_string(rec.rep),
                                    std::to_string(rec.seed)};
    push_metric_set(row, rec.baseline);
    push_metric_set(row, rec.shaped);
    push_metric_set(row, rec.gain);
    row.push_back(std::to_string(rec.chosen_h));
    if (include_timing) {
      row.push_back(csv_fixed(rec.search_ms, 3));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable summary_table(const std::vector<SummaryRow>& rows, GroupBy group_by) {
  CsvTable table;
  const char* key = group_by == GroupBy::K ? "k" : group_by == GroupBy::N ? "n" : "model";
  table.header = {key, "runs", "mean_gain", "ci95", "success_rate"};
  for (const auto& row : rows) {
    table.rows.push_back({row.group, std::to_string(row.runs), csv_double(row.mean_gain),
                          csv_double(row.ci95), csv_double(row.success_rate)});
  }
  return table;
}

CsvTable metric_gain_table(const std::vector<MetricGainRow>& rows) {
  CsvTable table;
  table.header = {"k", "runs"};
  for (const auto& name : kMetricNames) {
    table.header.push_back(name + std::string("_gain"));
  }
  for (const auto& row : rows) {
    std::vector<std::string> cells = {std::to_string(row.k), std::to_string(row.runs)};
    push_metric_set(cells, row.mean_gain);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable index_stats_table(const std::vector<IndexStatsRow>& rows) {
  CsvTable table;
  table.header = {"k", "runs", "mean_normalized_h", "largest_bucket_share"};
  for (const auto& row : rows) {
    table.rows.push_back({std::to_string(row.k), std::to_string(row.runs),
                          csv_double(row.stats.mean_normalized_h),
                          csv_double(row.stats.largest_bucket_share)});
  }
  return table;
}

CsvTable timing_table(const std::vector<TimingRow>& rows) {
  CsvTable table;
  table.header = {"k", "candidates", "mean_search_ms", "per_candidate_us"};
  for (const auto& row : rows) {
    table.rows.push_back({std::to_string(row.k), std::to_string(row.candidates),
                          csv_fixed(row.mean_search_ms, 3), csv_fixed(row.per_candidate_us, 3)});
  }
  return table;
}

CsvTable stc_records_table(const std::vector<StcRunRecord>& records) {
  CsvTable table;
  table.header = {"model", "n", "k", "rep", "seed", "blocks", "total_cost", "chosen_h"};
  for (const auto& rec : records) {
    table.rows.push_back({cover_model_name(rec.model), std::to_string(rec.n),
                          std::to_string(rec.k), std::to_string(rec.rep),
                          std::to_string(rec.seed), std::to_string(rec.blocks),
                          csv_double(rec.total_cost), std::to_string(rec.chosen_h)});
  }
  return table;
}

CsvTable stc_summary_table(const std::vector<StcSummaryRow>& rows) {
  CsvTable table;
  table.header = {"k", "runs", "mean_cost", "reduction_vs_k0"};
  for (const auto& row : rows) {
    table.rows.push_back({std::to_string(row.k), std::to_string(row.runs),
                          csv_double(row.mean_cost), csv_double(row.reduction_vs_k0)});
  }
  return table;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    return "";
  }
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_flat_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
  }
  return kv;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

long long parse_ll(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + value);
  }
}

struct ConfigReader {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string take(const std::string& key) {
    auto it = kv.find(key);
    std::string value = it->second;
    kv.erase(it);
    return value;
  }

  void finish() const {
    if (!kv.empty()) {
      throw ConfigError("config: unknown key '" + kv.begin()->first + "'");
    }
  }
};

void apply_common(ConfigReader& reader, std::vector<CoverModel>& models, int& width,
                  int& height, std::vector<int>& n_list, std::vector<unsigned>& k_list,
                  int& reps, std::uint64_t& master_seed) {
  if (reader.has("models")) {
    models.clear();
    for (const auto& name : split_list(reader.take("models"))) {
      models.push_back(parse_cover_model(name));
    }
    if (models.empty()) {
      throw ConfigError("config: empty model list");
    }
  }
  if (reader.has("width")) width = static_cast<int>(parse_ll(reader.take("width"), "width"));
  if (reader.has("height")) height = static_cast<int>(parse_ll(reader.take("height"), "height"));
  if (reader.has("n_list")) {
    n_list.clear();
    for (const auto& item : split_list(reader.take("n_list"))) {
      n_list.push_back(static_cast<int>(parse_ll(item, "n_list")));
    }
    if (n_list.empty()) {
      throw ConfigError("config: empty n_list");
    }
  }
  if (reader.has("k_list")) {
    k_list.clear();
    for (const auto& item : split_list(reader.take("k_list"))) {
      long long k = parse_ll(item, "k_list");
      if (k < 0) {
        throw ConfigError("config: k must be nonnegative");
      }
      k_list.push_back(static_cast<unsigned>(k));
    }
    if (k_list.empty()) {
      throw ConfigError("config: empty k_list");
    }
  }
  if (reader.has("reps")) reps = static_cast<int>(parse_ll(reader.take("reps"), "reps"));
  if (reader.has("master_seed")) master_seed = parse_u64(reader.take("master_seed"), "master_seed");
}

}  // namespace

CampaignConfig parse_campaign_config(std::istream& in) {
  ConfigReader reader{parse_flat_config(in)};
  CampaignConfig cfg;
  apply_common(reader, cfg.models, cfg.width, cfg.height, cfg.message_lengths,
               cfg.shaping_bits, cfg.repetitions, cfg.master_seed);
  if (reader.has("path")) {
    std::string mode = reader.take("path");
    if (mode == "seq") {
      cfg.path_mode = PathMode::Sequential;
    } else if (mode == "keyed") {
      cfg.path_mode = PathMode::Keyed;
    } else {
      throw ConfigError("config: path must be 'seq' or 'keyed'");
    }
  }
  if (reader.has("objective")) {
    std::string obj = reader.take("objective");
    if (obj != "kl") {
      throw ConfigError("config: objective must be 'kl' (use stc-sim for syndrome cost)");
    }
  }
  reader.finish();
  return cfg;
}

StcCampaignConfig parse_stc_config(std::istream& in) {
  ConfigReader reader{parse_flat_config(in)};
  StcCampaignConfig cfg;
  apply_common(reader, cfg.models, cfg.width, cfg.height, cfg.message_lengths,
               cfg.shaping_bits, cfg.repetitions, cfg.master_seed);
  reader.finish();
  return cfg;
}

}  // namespace steg
