#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swipekit/harness.hpp"
#include "swipekit/io.hpp"
#include "swipekit/metrics.hpp"

namespace fs = std::filesystem;
using namespace swipekit;

namespace {

KeyboardLayout layout_or_default(const std::string& path) {
  return path.empty() ? default_qwerty() : load_layout(path);
}

std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string word;
    if (ss >> word && word[0] != '#') {
      words.push_back(word);
    }
  }
  if (words.empty()) {
    throw std::runtime_error(path + ": no words");
  }
  return words;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(std::stod(item));
    }
  }
  return out;
}

struct CommonOptions {
  std::string config_path;
  std::string noise_profile_name;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

FileConfig resolve_config(const CommonOptions& common) {
  FileConfig cfg;
  if (!common.config_path.empty()) {
    cfg = load_config(common.config_path);
  }
  if (!common.noise_profile_name.empty()) {
    apply_noise_profile(cfg.sim, common.noise_profile_name);
  }
  cfg.sim.seed = common.seed;
  return cfg;
}

BenchSetup make_bench_setup(const std::string& layout_path, const std::string& vocab_path,
                            const std::string& phrases_path, const CommonOptions& common) {
  const FileConfig file_cfg = resolve_config(common);
  BenchSetup setup(load_vocabulary(vocab_path), load_phrases(phrases_path));
  setup.layout = layout_or_default(layout_path);
  setup.sim = file_cfg.sim;
  setup.filter = file_cfg.filter;
  setup.fusion = file_cfg.fusion;
  setup.beam = file_cfg.beam;
  setup.trace.channel_sigma = file_cfg.channel_sigma;
  setup.trace.dwell_time = file_cfg.sim.dwell_time;
  setup.costs = EditCostModel::from_layout(setup.layout);
  setup.costs.log_p_omit = file_cfg.cost_omit;
  setup.costs.log_p_stray = file_cfg.cost_stray;
  setup.costs.log_p_sub_adjacent = file_cfg.cost_sub_adjacent;
  setup.costs.log_p_sub_far = file_cfg.cost_sub_far;
  setup.lm_gamma = file_cfg.lm_gamma;
  setup.seed = common.seed;
  setup.lm = train_lm_from_phrases(setup.phrases, setup.vocab, file_cfg.lm_order,
                                   file_cfg.lm_discount);
  return setup;
}

void write_report(const BenchReport& report, const std::string& out_dir,
                  const std::string& csv_name) {
  fs::create_directories(out_dir);
  const fs::path csv_path = fs::path(out_dir) / csv_name;
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) {
    throw std::runtime_error("cannot write " + csv_path.string());
  }
  csv << report.csv;
  const fs::path summary_path = fs::path(out_dir) / "summary.txt";
  std::ofstream summary(summary_path, std::ios::binary);
  summary << report.summary;
  std::cout << report.summary;
  std::cout << "wrote " << csv_path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swipekit: word-gesture decoding engine and benchmark harness"};
  app.require_subcommand(1);

  CommonOptions common;

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic word-gesture trajectories");
  std::string synth_layout, synth_words, synth_out;
  SimConfig synth_cfg;
  synth->add_option("--layout", synth_layout, "Layout JSON (default: built-in QWERTY)");
  synth->add_option("--words", synth_words, "Word list, one per line")->required();
  synth->add_option("--out", synth_out, "Output trajectory JSONL")->required();
  synth->add_option("--seed", common.seed, "RNG seed");
  synth->add_option("--noise", synth_cfg.noise_std, "White noise sigma (key widths)");
  synth->add_option("--drift", synth_cfg.drift_rate, "Random-walk step sigma per sample");
  synth->add_option("--pinch", synth_cfg.pinch_impulse, "Delimitation impulse magnitude");
  synth->add_option("--rate", synth_cfg.sample_rate, "Sample rate, Hz");
  synth->add_option("--speed", synth_cfg.gesture_speed, "Travel speed, key widths/s");
  synth->add_option("--dwell", synth_cfg.dwell_time, "Per-letter dwell, seconds");
  synth->add_option("--cd-gain", synth_cfg.cd_gain, "Control-display gain");
  synth->add_option("--noise-profile", common.noise_profile_name, "low|medium|high preset");

  // transform-layout
  auto* transform = app.add_subcommand("transform-layout",
                                       "Warp trajectories from one layout onto another");
  std::string tf_src, tf_dst, tf_in, tf_out;
  bool tf_clamp = false;
  transform->add_flag("--clamp", tf_clamp,
                      "Project out-of-grid samples onto the grid instead of failing");
  transform->add_option("--src", tf_src, "Source layout JSON")->required();
  transform->add_option("--dst", tf_dst, "Destination layout JSON")->required();
  transform->add_option("--in", tf_in, "Input trajectory JSONL")->required();
  transform->add_option("--out", tf_out, "Output trajectory JSONL")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "Rank vocabulary words for trajectories");
  std::string dec_layout, dec_vocab, dec_in;
  int dec_beam = 8;
  decode->add_option("--layout", dec_layout, "Layout JSON (default: built-in QWERTY)");
  decode->add_option("--vocab", dec_vocab, "Vocabulary TSV")->required();
  decode->add_option("--in", dec_in, "Trajectory JSONL")->required();
  decode->add_option("--beam", dec_beam, "Beam width");

  // suggest
  auto* suggest = app.add_subcommand("suggest", "End-to-end word suggestions for trajectories");
  std::string sug_traj, sug_context, sug_mode = "fusion", sug_layout, sug_vocab, sug_prev;
  suggest->add_option("--traj", sug_traj, "Trajectory JSONL")->required();
  suggest->add_option("--context", sug_context, "Phrase-record JSONL providing context")
      ->required();
  suggest->add_option("--mode", sug_mode, "fusion|naive")
      ->check(CLI::IsMember({"fusion", "naive"}));
  suggest->add_option("--layout", sug_layout, "Layout JSON (default: built-in QWERTY)");
  suggest->add_option("--vocab", sug_vocab, "Vocabulary TSV")->required();
  suggest->add_option("--prev", sug_prev, "Previously committed words of the phrase");
  suggest->add_option("--config", common.config_path, "Config JSON");
  suggest->add_option("--seed", common.seed, "RNG seed");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the fusion-vs-naive benchmark");
  std::string bench_layout, bench_vocab, bench_phrases, bench_conditions = "fusion,naive";
  bench->add_option("--layout", bench_layout, "Layout JSON (default: built-in QWERTY)");
  bench->add_option("--vocab", bench_vocab, "Vocabulary TSV")->required();
  bench->add_option("--phrases", bench_phrases, "Phrase-record JSONL")->required();
  bench->add_option("--conditions", bench_conditions, "Comma list of fusion,naive");
  bench->add_option("--config", common.config_path, "Config JSON");
  bench->add_option("--seed", common.seed, "RNG seed");
  bench->add_option("--out", common.out_dir, "Output directory");
  bench->add_option("--noise-profile", common.noise_profile_name, "low|medium|high preset");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Component ablation on identical trajectories");
  std::string abl_layout, abl_vocab, abl_phrases;
  ablate->add_option("--layout", abl_layout, "Layout JSON (default: built-in QWERTY)");
  ablate->add_option("--vocab", abl_vocab, "Vocabulary TSV")->required();
  ablate->add_option("--phrases", abl_phrases, "Phrase-record JSONL")->required();
  ablate->add_option("--config", common.config_path, "Config JSON");
  ablate->add_option("--seed", common.seed, "RNG seed");
  ablate->add_option("--out", common.out_dir, "Output directory");
  ablate->add_option("--noise-profile", common.noise_profile_name, "low|medium|high preset");

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search fusion coefficients");
  std::string tune_layout, tune_vocab, tune_phrases;
  std::string sc_grid = "0,0.1,0.2,0.3,0.4,0.5";
  std::string lm_grid = "0,0.1,0.2,0.3,0.4,0.5";
  tune_cmd->add_option("--layout", tune_layout, "Layout JSON (default: built-in QWERTY)");
  tune_cmd->add_option("--vocab", tune_vocab, "Vocabulary TSV")->required();
  tune_cmd->add_option("--phrases", tune_phrases, "Dev phrase-record JSONL")->required();
  tune_cmd->add_option("--sc-grid", sc_grid, "Comma list for swipe_correction_coeff");
  tune_cmd->add_option("--lm-grid", lm_grid, "Comma list for lm_coeff");
  tune_cmd->add_option("--config", common.config_path, "Config JSON");
  tune_cmd->add_option("--seed", common.seed, "RNG seed");
  tune_cmd->add_option("--noise-profile", common.noise_profile_name, "low|medium|high preset");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      SimConfig cfg = synth_cfg;
      if (!common.noise_profile_name.empty()) {
        apply_noise_profile(cfg, common.noise_profile_name);
      }
      const KeyboardLayout layout = layout_or_default(synth_layout);
      std::vector<Trajectory> out;
      std::uint64_t word_seed = common.seed;
      for (const std::string& word : read_word_list(synth_words)) {
        cfg.seed = word_seed++;
        out.push_back(synthesize(word, layout, cfg));
      }
      save_trajectories(out, synth_out);
      std::cout << "wrote " << out.size() << " trajectories to " << synth_out << "\n";
    } else if (transform->parsed()) {
      const KeyboardLayout src = load_layout(tf_src);
      const KeyboardLayout dst = load_layout(tf_dst);
      const AnchorSet anchors = build_anchor_set(src, dst);
      std::vector<Trajectory> out;
      for (const Trajectory& traj : load_trajectories(tf_in)) {
        out.push_back(warp_trajectory(traj, anchors, tf_clamp));
      }
      save_trajectories(out, tf_out);
      std::cout << "warped " << out.size() << " trajectories to " << tf_out << "\n";
    } else if (decode->parsed()) {
      const KeyboardLayout layout = layout_or_default(dec_layout);
      const Vocabulary vocab = load_vocabulary(dec_vocab);
      const ShapeDecoder decoder(layout);
      for (const Trajectory& traj : load_trajectories(dec_in)) {
        const auto cands = decoder.decode(traj, vocab, dec_beam);
        std::cout << (traj.word ? *traj.word : std::string("?"));
        for (const ScoredCandidate& c : cands) {
          std::cout << "  " << c.word << ":" << format_double(c.log_score);
        }
        std::cout << "\n";
      }
    } else if (suggest->parsed()) {
      const FileConfig file_cfg = resolve_config(common);
      const KeyboardLayout layout = layout_or_default(sug_layout);
      const Vocabulary vocab = load_vocabulary(sug_vocab);
      const std::vector<PhraseRecord> context = load_phrases(sug_context);
      if (context.empty()) {
        throw std::runtime_error(sug_context + ": no context records");
      }
      const NGramModel lm =
          train_lm_from_phrases(context, vocab, file_cfg.lm_order, file_cfg.lm_discount);
      EditCostModel costs = EditCostModel::from_layout(layout);
      costs.log_p_omit = file_cfg.cost_omit;
      costs.log_p_stray = file_cfg.cost_stray;
      costs.log_p_sub_adjacent = file_cfg.cost_sub_adjacent;
      costs.log_p_sub_far = file_cfg.cost_sub_far;
      TraceDecoderConfig trace_cfg;
      trace_cfg.channel_sigma = file_cfg.channel_sigma;
      const TraceDecoder decoder(layout, trace_cfg);
      const std::vector<std::string> prev = tokenize(sug_prev);
      const ContextProfile profile =
          ContextProfile::from_record(context.front(), vocab, file_cfg.lm_gamma);
      const ContextualScorer scorer(lm, profile);
      for (const Trajectory& traj : load_trajectories(sug_traj)) {
        SuggestionList s;
        if (sug_mode == "fusion") {
          s = score_fusion(traj, decoder, vocab, costs, scorer, prev, file_cfg.fusion,
                           file_cfg.beam);
        } else {
          s = naive_correction(traj, decoder, vocab, lm, prev, file_cfg.fusion, file_cfg.beam);
        }
        std::cout << (traj.word ? *traj.word : std::string("?"));
        for (const ScoredCandidate& c : s) {
          std::cout << "  " << c.word << ":" << format_double(c.log_score);
        }
        std::cout << "\n";
      }
    } else if (bench->parsed()) {
      const BenchSetup setup = make_bench_setup(bench_layout, bench_vocab, bench_phrases, common);
      std::vector<std::string> conditions;
      std::istringstream ss(bench_conditions);
      std::string c;
      while (std::getline(ss, c, ',')) {
        if (!c.empty()) conditions.push_back(c);
      }
      write_report(run_benchmark(setup, conditions), common.out_dir, "report.csv");
    } else if (ablate->parsed()) {
      const BenchSetup setup = make_bench_setup(abl_layout, abl_vocab, abl_phrases, common);
      write_report(run_ablation(setup), common.out_dir, "ablation.csv");
    } else if (tune_cmd->parsed()) {
      const BenchSetup setup = make_bench_setup(tune_layout, tune_vocab, tune_phrases, common);
      const FusionConfig best = tune(setup, parse_grid(sc_grid), parse_grid(lm_grid));
      std::cout << "swipe_correction_coeff=" << format_double(best.swipe_correction_coeff)
                << " lm_coeff=" << format_double(best.lm_coeff) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
