// stegshape: payload shaping in front of LSB and syndrome-cost embedders,
// plus the simulation campaigns behind the library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stegshape/bits.hpp"
#include "stegshape/errors.hpp"
#include "stegshape/harness.hpp"
#include "stegshape/lsb.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct PathSpec {
  bool keyed = false;
  std::uint64_t key = 0;
};

// "seq" or "keyed:<key>"
PathSpec parse_path_spec(const std::string& spec) {
  if (spec == "seq") {
    return {};
  }
  if (spec.rfind("keyed:", 0) == 0) {
    std::string key_text = spec.substr(6);
    try {
      std::size_t used = 0;
      std::uint64_t key = std::stoull(key_text, &used);
      if (used != key_text.size()) {
        throw std::invalid_argument("");
      }
      return {true, key};
    } catch (const std::exception&) {
      throw steg::ConfigError("bad path key: " + key_text);
    }
  }
  throw steg::ConfigError("path must be 'seq' or 'keyed:<key>'");
}

steg::PositionList make_path(const PathSpec& spec, std::size_t pixels, std::size_t length) {
  if (length > pixels) {
    throw steg::ConfigError("payload does not fit in the cover");
  }
  return spec.keyed ? steg::keyed_path(spec.key, pixels, length)
                    : steg::sequential_path(length);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw steg::IoError("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw steg::IoError("write failed: " + path);
  }
}

int run_embed(const std::string& cover_path, const std::string& message_path, unsigned k,
              std::uint64_t seed, const std::string& path_spec, const std::string& out_path,
              const std::string& report_path) {
  steg::Image cover = steg::read_pgm_file(cover_path);
  steg::BitVec message = steg::read_bits_file(message_path);
  PathSpec spec = parse_path_spec(path_spec);
  std::size_t total = message.size() + k;
  steg::PositionList path = make_path(spec, cover.pixel_count(), total);

  steg::ShapingConfig cfg{k, seed, steg::Objective::KLHistogram};
  steg::ShapingResult result =
      steg::shape_select(cover, message, cfg, path, steg::kl_objective(cover));
  steg::Image baseline =
      steg::embed_lsb(cover, steg::fair_baseline_payload(message, k), path);
  double base_kl = steg::kl_objective(cover)(baseline);

  steg::write_pgm_file(out_path, result.stego);
  if (!report_path.empty()) {
    steg::CsvTable report;
    report.header = {"h", "kl_bits", "chosen"};
    for (const auto& cand : result.per_candidate) {
      report.rows.push_back({std::to_string(cand.h), steg::csv_double(cand.value),
                             cand.h == result.chosen_h ? "1" : "0"});
    }
    write_text_file(report_path, steg::emit_csv(report));
  }
  std::printf("chosen_h=%u candidates=%zu kl_baseline=%.9g kl_selected=%.9g gain=%.9g\n",
              result.chosen_h, result.per_candidate.size(), base_kl,
              result.objective_value, steg::relative_gain(base_kl, result.objective_value));
  return 0;
}

int run_extract(const std::string& stego_path, std::size_t n, unsigned k, std::uint64_t seed,
                const std::string& path_spec, const std::string& out_path) {
  steg::Image stego = steg::read_pgm_file(stego_path);
  PathSpec spec = parse_path_spec(path_spec);
  std::size_t total = n + k;
  steg::PositionList path = make_path(spec, stego.pixel_count(), total);
  steg::BitVec payload = steg::extract_lsb(stego, total, path);
  auto [h, message] = steg::decode_payload(payload, k, seed);
  steg::write_bits_file(out_path, message);
  std::printf("decoded_h=%u bits=%zu\n", h, message.size());
  return 0;
}

template <typename Config>
Config load_config(const std::string& path, Config (*parse)(std::istream&)) {
  std::ifstream in(path);
  if (!in) {
    throw steg::IoError("cannot open config: " + path);
  }
  return parse(in);
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& summary_by, const std::string& summary_path,
                 const std::string& metrics_path, const std::string& index_path) {
  steg::CampaignConfig cfg = load_config(config_path, steg::parse_campaign_config);
  std::vector<steg::RunRecord> records = steg::run_campaign(cfg);
  write_text_file(out_path, steg::emit_csv(steg::records_table(records)));
  if (!summary_path.empty()) {
    steg::GroupBy by;
    if (summary_by == "k") {
      by = steg::GroupBy::K;
    } else if (summary_by == "model") {
      by = steg::GroupBy::Model;
    } else if (summary_by == "n") {
      by = steg::GroupBy::N;
    } else {
      throw steg::ConfigError("--summary-by must be k, model or n");
    }
    write_text_file(summary_path,
                    steg::emit_csv(steg::summary_table(steg::aggregate(records, by), by)));
  }
  if (!metrics_path.empty()) {
    write_text_file(metrics_path,
                    steg::emit_csv(steg::metric_gain_table(steg::metric_gain_by_k(records))));
  }
  if (!index_path.empty()) {
    write_text_file(index_path,
                    steg::emit_csv(steg::index_stats_table(steg::index_stats_by_k(records))));
  }
  std::printf("runs=%zu -> %s\n", records.size(), out_path.c_str());
  return 0;
}

int run_stc_sim(const std::string& config_path, const std::string& out_path,
                const std::string& summary_path) {
  steg::StcCampaignConfig cfg = load_config(config_path, steg::parse_stc_config);
  std::vector<steg::StcRunRecord> records = steg::run_stc_campaign(cfg);
  write_text_file(out_path, steg::emit_csv(steg::stc_records_table(records)));
  if (!summary_path.empty()) {
    write_text_file(summary_path,
                    steg::emit_csv(steg::stc_summary_table(steg::stc_summary(records))));
  }
  std::printf("runs=%zu -> %s\n", records.size(), out_path.c_str());
  return 0;
}

int run_timing(unsigned kmax, int reps, int n, std::uint64_t seed, const std::string& out_path) {
  steg::TimingConfig cfg;
  cfg.repetitions = reps;
  cfg.message_length = n;
  cfg.master_seed = seed;
  std::vector<unsigned> ks;
  for (unsigned k : cfg.shaping_bits) {
    if (k <= kmax) {
      ks.push_back(k);
    }
  }
  cfg.shaping_bits = ks;
  std::vector<steg::TimingRow> rows = steg::timing_study(cfg);
  write_text_file(out_path, steg::emit_csv(steg::timing_table(rows)));
  for (const auto& row : rows) {
    std::printf("k=%u candidates=%zu mean_ms=%.3f per_candidate_us=%.3f\n", row.k,
                row.candidates, row.mean_search_ms, row.per_candidate_us);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"payload shaping for LSB and syndrome-cost steganography"};
  app.require_subcommand(1);

  auto* embed = app.add_subcommand("embed", "shape a message and embed it into a cover");
  std::string cover_path, message_path, path_spec = "seq", out_path, report_path;
  unsigned k = 8;
  std::uint64_t seed = 0;
  embed->add_option("--cover", cover_path, "cover image (binary PGM)")->required();
  embed->add_option("--message", message_path, "message bit file")->required();
  embed->add_option("--k", k, "shaping index bits");
  embed->add_option("--seed", seed, "session seed for candidate masks");
  embed->add_option("--path", path_spec, "seq or keyed:<key>");
  embed->add_option("--out", out_path, "output stego PGM")->required();
  embed->add_option("--report", report_path, "per-candidate CSV report");

  auto* extract = app.add_subcommand("extract", "extract and decode a shaped payload");
  std::string stego_path, msg_out;
  std::size_t msg_len = 0;
  unsigned xk = 8;
  std::uint64_t xseed = 0;
  std::string xpath = "seq";
  extract->add_option("--stego", stego_path, "stego image (binary PGM)")->required();
  extract->add_option("--n", msg_len, "message length in bits")->required();
  extract->add_option("--k", xk, "shaping index bits");
  extract->add_option("--seed", xseed, "session seed for candidate masks");
  extract->add_option("--path", xpath, "seq or keyed:<key>");
  extract->add_option("--out", msg_out, "output message bit file")->required();

  auto* simulate = app.add_subcommand("simulate", "run an LSB shaping campaign");
  std::string sim_config, sim_out, summary_by = "k", summary_out, metrics_out, index_out;
  simulate->add_option("--config", sim_config, "flat key=value campaign config")->required();
  simulate->add_option("--out", sim_out, "per-run records CSV")->required();
  simulate->add_option("--summary-by", summary_by, "aggregate key: k, model or n");
  simulate->add_option("--summary-out", summary_out, "aggregate summary CSV");
  simulate->add_option("--metrics-out", metrics_out, "five-metric mean gains by k CSV");
  simulate->add_option("--index-out", index_out, "selected-index dispersion CSV");

  auto* stc_sim = app.add_subcommand("stc-sim", "run a syndrome-cost shaping campaign");
  std::string stc_config, stc_out, stc_summary_out;
  stc_sim->add_option("--config", stc_config, "flat key=value campaign config")->required();
  stc_sim->add_option("--out", stc_out, "per-run records CSV")->required();
  stc_sim->add_option("--summary-out", stc_summary_out, "per-k mean cost CSV");

  auto* timing = app.add_subcommand("timing", "measure exhaustive search cost per k");
  unsigned kmax = 12;
  int treps = 3, tn = 1000;
  std::uint64_t tseed = 1;
  std::string timing_out;
  timing->add_option("--kmax", kmax, "largest k to include (of 0,4,8,10,12)");
  timing->add_option("--reps", treps, "repetitions per model and k");
  timing->add_option("--n", tn, "message length");
  timing->add_option("--seed", tseed, "master seed");
  timing->add_option("--out", timing_out, "timing CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand(embed)) {
      return run_embed(cover_path, message_path, k, seed, path_spec, out_path, report_path);
    }
    if (app.got_subcommand(extract)) {
      return run_extract(stego_path, msg_len, xk, xseed, xpath, msg_out);
    }
    if (app.got_subcommand(simulate)) {
      return run_simulate(sim_config, sim_out, summary_by, summary_out, metrics_out, index_out);
    }
    if (app.got_subcommand(stc_sim)) {
      return run_stc_sim(stc_config, stc_out, stc_summary_out);
    }
    if (app.got_subcommand(timing)) {
      return run_timing(kmax, treps, tn, tseed, timing_out);
    }
  } catch (const steg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
