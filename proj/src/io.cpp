#include "swipekit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace swipekit {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << content;
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

KeyboardLayout load_layout(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("layout file " + path + ": " + e.what());
  }
  std::vector<Key> keys;
  for (const auto& kj : j.at("keys")) {
    Key k;
    const std::string label = kj.at("label").get<std::string>();
    if (label.size() != 1) {
      throw std::runtime_error("layout file " + path + ": key label must be one character");
    }
    k.label = label[0];
    k.center = {kj.at("cx").get<double>(), kj.at("cy").get<double>()};
    k.width = kj.at("w").get<double>();
    k.height = kj.at("h").get<double>();
    keys.push_back(k);
  }
  return KeyboardLayout(j.value("name", path), std::move(keys));
}

void save_layout(const KeyboardLayout& layout, const std::string& path) {
  json j;
  j["name"] = layout.name();
  json keys = json::array();
  for (const Key& k : layout.keys()) {
    keys.push_back({{"label", std::string(1, k.label)},
                    {"cx", k.center.x},
                    {"cy", k.center.y},
                    {"w", k.width},
                    {"h", k.height}});
  }
  j["keys"] = std::move(keys);
  write_file(path, j.dump(2) + "\n");
}

std::vector<Trajectory> load_trajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<Trajectory> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(path, line_no, e.what());
    }
    Trajectory traj;
    if (j.contains("word") && !j["word"].is_null()) {
      traj.word = j["word"].get<std::string>();
    }
    for (const auto& s : j.at("samples")) {
      if (!s.is_array() || s.size() != 3) {
        fail_line(path, line_no, "sample must be [t, x, y]");
      }
      traj.samples.push_back({s[0].get<double>(), {s[1].get<double>(), s[2].get<double>()}});
    }
    if (traj.samples.empty()) {
      fail_line(path, line_no, "trajectory has no samples");
    }
    if (traj.samples.front().t < 0.0) {
      fail_line(path, line_no, "negative timestamp");
    }
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      if (traj.samples[i].t <= traj.samples[i - 1].t) {
        fail_line(path, line_no, "timestamps must be strictly increasing");
      }
    }
    out.push_back(std::move(traj));
  }
  return out;
}

void save_trajectories(const std::vector<Trajectory>& trajectories, const std::string& path) {
  std::ostringstream ss;
  for (const Trajectory& traj : trajectories) {
    json j;
    if (traj.word) {
      j["word"] = *traj.word;
    } else {
      j["word"] = nullptr;
    }
    json samples = json::array();
    for (const CursorSample& s : traj.samples) {
      samples.push_back({s.t, s.p.x, s.p.y});
    }
    j["samples"] = std::move(samples);
    ss << j.dump() << "\n";
  }
  write_file(path, ss.str());
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail_line(path, line_no, "expected word<TAB>frequency");
    }
    VocabEntry e;
    e.word = line.substr(0, tab);
    try {
      e.frequency = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      fail_line(path, line_no, "bad frequency value");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) {
    throw std::runtime_error(path + ": empty vocabulary file");
  }
  return Vocabulary(std::move(entries));
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ostringstream ss;
  for (const VocabEntry& e : vocab.entries()) {
    ss << e.word << "\t" << format_double(e.frequency) << "\n";
  }
  write_file(path, ss.str());
}

std::vector<PhraseRecord> load_phrases(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<PhraseRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(path, line_no, e.what());
    }
    PhraseRecord r;
    r.stimulus = j.at("stimulus").get<std::string>();
    if (r.stimulus.empty()) {
      fail_line(path, line_no, "empty stimulus");
    }
    if (j.contains("history")) {
      r.history = j["history"].get<std::vector<std::string>>();
    }
    if (j.contains("tags")) {
      r.tags = j["tags"].get<std::vector<std::string>>();
    }
    out.push_back(std::move(r));
  }
  return out;
}

void save_phrases(const std::vector<PhraseRecord>& records, const std::string& path) {
  std::ostringstream ss;
  for (const PhraseRecord& r : records) {
    json j;
    j["stimulus"] = r.stimulus;
    j["history"] = r.history;
    j["tags"] = r.tags;
    ss << j.dump() << "\n";
  }
  write_file(path, ss.str());
}

FileConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config file " + path + ": " + e.what());
  }
  FileConfig cfg;
  if (j.contains("edit_costs")) {
    const auto& c = j["edit_costs"];
    cfg.cost_omit = c.value("omit", cfg.cost_omit);
    cfg.cost_stray = c.value("stray", cfg.cost_stray);
    cfg.cost_sub_adjacent = c.value("sub_adjacent", cfg.cost_sub_adjacent);
    cfg.cost_sub_far = c.value("sub_far", cfg.cost_sub_far);
  }
  if (j.contains("fusion")) {
    const auto& f = j["fusion"];
    cfg.fusion.swipe_correction_coeff =
        f.value("swipe_correction_coeff", cfg.fusion.swipe_correction_coeff);
    cfg.fusion.lm_coeff = f.value("lm_coeff", cfg.fusion.lm_coeff);
    cfg.fusion.num_suggestions = f.value("num_suggestions", cfg.fusion.num_suggestions);
  }
  if (j.contains("sim")) {
    const auto& s = j["sim"];
    cfg.sim.noise_std = s.value("noise_std", cfg.sim.noise_std);
    cfg.sim.drift_rate = s.value("drift_rate", cfg.sim.drift_rate);
    cfg.sim.pinch_impulse = s.value("pinch_impulse", cfg.sim.pinch_impulse);
    cfg.sim.sample_rate = s.value("sample_rate", cfg.sim.sample_rate);
    cfg.sim.cd_gain = s.value("cd_gain", cfg.sim.cd_gain);
    cfg.sim.gesture_speed = s.value("gesture_speed", cfg.sim.gesture_speed);
    cfg.sim.dwell_time = s.value("dwell_time", cfg.sim.dwell_time);
  }
  if (j.contains("filter")) {
    const auto& f = j["filter"];
    cfg.filter.lambda = f.value("lambda", cfg.filter.lambda);
    cfg.filter.alpha_min = f.value("alpha_min", cfg.filter.alpha_min);
    cfg.filter.alpha_max = f.value("alpha_max", cfg.filter.alpha_max);
  }
  if (j.contains("decoder")) {
    const auto& d = j["decoder"];
    cfg.beam = d.value("beam", cfg.beam);
    cfg.channel_sigma = d.value("channel_sigma", cfg.channel_sigma);
  }
  if (j.contains("lm")) {
    const auto& l = j["lm"];
    cfg.lm_order = l.value("order", cfg.lm_order);
    cfg.lm_discount = l.value("discount", cfg.lm_discount);
    cfg.lm_gamma = l.value("gamma", cfg.lm_gamma);
  }
  return cfg;
}

}  // namespace swipekit
