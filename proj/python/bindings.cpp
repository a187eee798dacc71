#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swipekit/harness.hpp"
#include "swipekit/io.hpp"
#include "swipekit/metrics.hpp"

namespace py = pybind11;
using namespace swipekit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Word-gesture decoding engine: decoding, spatial spelling correction, "
            "contextual language modeling and score fusion.";

  py::class_<Point>(m, "Point")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Point{x, y}; }))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) {
        return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<CursorSample>(m, "CursorSample")
      .def(py::init([](double t, double x, double y) {
        return CursorSample{t, {x, y}};
      }))
      .def_readwrite("t", &CursorSample::t)
      .def_readwrite("p", &CursorSample::p);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<>())
      .def_readwrite("samples", &Trajectory::samples)
      .def_readwrite("word", &Trajectory::word)
      .def("__len__", &Trajectory::size);

  py::class_<Key>(m, "Key")
      .def(py::init<>())
      .def_readwrite("label", &Key::label)
      .def_readwrite("center", &Key::center)
      .def_readwrite("width", &Key::width)
      .def_readwrite("height", &Key::height);

  py::class_<KeyboardLayout>(m, "KeyboardLayout")
      .def(py::init<std::string, std::vector<Key>>())
      .def_property_readonly("name", &KeyboardLayout::name)
      .def_property_readonly("keys", &KeyboardLayout::keys)
      .def("has_key", &KeyboardLayout::has_key)
      .def("key", &KeyboardLayout::key, py::return_value_policy::reference_internal);

  m.def("default_qwerty", &default_qwerty);
  m.def("compact_qwerty", &compact_qwerty);
  m.def("load_layout", &load_layout);
  m.def("save_layout", &save_layout);

  py::class_<AdjacencyMap>(m, "AdjacencyMap")
      .def(py::init<const KeyboardLayout&, double>(), py::arg("layout"), py::arg("radius") = 1.2)
      .def("adjacent", &AdjacencyMap::adjacent);

  py::class_<AnchorPair>(m, "AnchorPair")
      .def_readonly("source", &AnchorPair::source)
      .def_readonly("destination", &AnchorPair::destination);

  py::class_<AnchorSet>(m, "AnchorSet")
      .def_readonly("pairs", &AnchorSet::pairs)
      .def("is_identity", &AnchorSet::is_identity);

  m.def("build_anchor_set", &build_anchor_set);
  m.def("warp_point", &warp_point, py::arg("p"), py::arg("anchors"), py::arg("index") = 0);
  m.def("warp_trajectory", &warp_trajectory, py::arg("traj"), py::arg("anchors"),
        py::arg("clamp_outside") = false);
  m.def("clamp_to_grid", &clamp_to_grid);

  py::register_exception<WarpError>(m, "WarpError");

  py::class_<FilterParams>(m, "FilterParams")
      .def(py::init<>())
      .def_readwrite("lambda_", &FilterParams::lambda)
      .def_readwrite("sigma", &FilterParams::sigma)
      .def_readwrite("delta", &FilterParams::delta)
      .def_readwrite("alpha_min", &FilterParams::alpha_min)
      .def_readwrite("alpha_max", &FilterParams::alpha_max);

  m.def("filter_objective", &filter_objective);
  m.def("optimize_alpha", &optimize_alpha);
  m.def("smooth", &smooth);
  m.def("estimate_delta", &estimate_delta, py::arg("traj"), py::arg("window") = 15);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("cd_gain", &SimConfig::cd_gain)
      .def_readwrite("noise_std", &SimConfig::noise_std)
      .def_readwrite("drift_rate", &SimConfig::drift_rate)
      .def_readwrite("pinch_impulse", &SimConfig::pinch_impulse)
      .def_readwrite("sample_rate", &SimConfig::sample_rate)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("gesture_speed", &SimConfig::gesture_speed)
      .def_readwrite("dwell_time", &SimConfig::dwell_time)
      .def_readonly_static("DEVICE_CD_GAIN", &SimConfig::kDeviceCdGain);

  m.def("synthesize", &synthesize);
  m.def("pseudo_decode", &pseudo_decode, py::arg("traj"), py::arg("word"), py::arg("layout"),
        py::arg("region_scale") = 2.0, py::arg("threshold") = 0.7);

  py::class_<VocabEntry>(m, "VocabEntry")
      .def(py::init([](std::string w, double f) { return VocabEntry{std::move(w), f}; }))
      .def_readwrite("word", &VocabEntry::word)
      .def_readwrite("frequency", &VocabEntry::frequency);

  py::class_<Vocabulary>(m, "Vocabulary")
      .def(py::init<std::vector<VocabEntry>>())
      .def("__len__", &Vocabulary::size)
      .def("contains", &Vocabulary::contains)
      .def("frequency", &Vocabulary::frequency)
      .def_property_readonly("entries", &Vocabulary::entries);

  m.def("load_vocabulary", &load_vocabulary);
  m.def("save_vocabulary", &save_vocabulary);
  m.def("load_trajectories", &load_trajectories);
  m.def("save_trajectories", &save_trajectories);

  py::class_<ScoredCandidate>(m, "ScoredCandidate")
      .def_readonly("word", &ScoredCandidate::word)
      .def_readonly("log_score", &ScoredCandidate::log_score)
      .def("__repr__", [](const ScoredCandidate& c) {
        return "(" + c.word + ", " + std::to_string(c.log_score) + ")";
      });

  py::class_<Decoder>(m, "Decoder");

  py::class_<ShapeDecoderConfig>(m, "ShapeDecoderConfig")
      .def(py::init<>())
      .def_readwrite("resample_points", &ShapeDecoderConfig::resample_points)
      .def_readwrite("channel_sigma", &ShapeDecoderConfig::channel_sigma)
      .def_readwrite("prior_weight", &ShapeDecoderConfig::prior_weight)
      .def_readwrite("prefilter", &ShapeDecoderConfig::prefilter)
      .def_readwrite("prefilter_radius", &ShapeDecoderConfig::prefilter_radius);

  py::class_<ShapeDecoder, Decoder>(m, "ShapeDecoder")
      .def(py::init<KeyboardLayout, ShapeDecoderConfig>(), py::arg("layout"),
           py::arg("config") = ShapeDecoderConfig{})
      .def("decode", &ShapeDecoder::decode)
      .def("template_distance", &ShapeDecoder::template_distance);

  py::class_<TraceDecoderConfig>(m, "TraceDecoderConfig")
      .def(py::init<>())
      .def_readwrite("channel_sigma", &TraceDecoderConfig::channel_sigma)
      .def_readwrite("dwell_time", &TraceDecoderConfig::dwell_time)
      .def_readwrite("dwell_speed", &TraceDecoderConfig::dwell_speed)
      .def_readwrite("double_letter_ratio", &TraceDecoderConfig::double_letter_ratio)
      .def_readwrite("max_expansions", &TraceDecoderConfig::max_expansions);

  py::class_<TraceDecoder, Decoder>(m, "TraceDecoder")
      .def(py::init<KeyboardLayout, TraceDecoderConfig>(), py::arg("layout"),
           py::arg("config") = TraceDecoderConfig{})
      .def("decode", &TraceDecoder::decode);

  m.def("ideal_template", &ideal_template);
  m.def("resample_by_arc_length", &resample_by_arc_length);

  py::class_<EditCostModel>(m, "EditCostModel")
      .def_static("from_layout", &EditCostModel::from_layout, py::arg("layout"),
                  py::arg("adjacency_radius") = 1.2)
      .def_readwrite("log_p_omit", &EditCostModel::log_p_omit)
      .def_readwrite("log_p_stray", &EditCostModel::log_p_stray)
      .def_readwrite("log_p_sub_adjacent", &EditCostModel::log_p_sub_adjacent)
      .def_readwrite("log_p_sub_far", &EditCostModel::log_p_sub_far);

  py::class_<Alignment>(m, "Alignment")
      .def_readonly("n_ins", &Alignment::n_ins)
      .def_readonly("n_ins_free", &Alignment::n_ins_free)
      .def_readonly("n_del", &Alignment::n_del)
      .def_readonly("substitutions", &Alignment::substitutions)
      .def_readonly("log_p_ed", &Alignment::log_p_ed);

  m.def("spatial_edit_logprob", &spatial_edit_logprob);

  py::class_<CorrectionOptions>(m, "CorrectionOptions")
      .def(py::init<>())
      .def_readwrite("band", &CorrectionOptions::band);

  m.def("correction_scores", &correction_scores, py::arg("raw"), py::arg("vocab"),
        py::arg("costs"), py::arg("options") = CorrectionOptions{});

  py::class_<PhraseRecord>(m, "PhraseRecord")
      .def(py::init<>())
      .def(py::init([](std::string stimulus, std::vector<std::string> history,
                       std::vector<std::string> tags) {
        return PhraseRecord{std::move(stimulus), std::move(history), std::move(tags)};
      }))
      .def_readwrite("stimulus", &PhraseRecord::stimulus)
      .def_readwrite("history", &PhraseRecord::history)
      .def_readwrite("tags", &PhraseRecord::tags);

  m.def("tokenize", &tokenize);
  m.def("load_phrases", &load_phrases);
  m.def("save_phrases", &save_phrases);

  py::class_<NGramModel>(m, "NGramModel")
      .def_static("train", &NGramModel::train, py::arg("corpus"), py::arg("order"),
                  py::arg("discount"), py::arg("vocab"))
      .def("prob", &NGramModel::prob)
      .def("log10_prob", &NGramModel::log10_prob)
      .def("to_json", &NGramModel::to_json)
      .def_static("from_json", &NGramModel::from_json)
      .def_property_readonly("order", &NGramModel::order)
      .def_property_readonly("prediction_vocab", &NGramModel::prediction_vocab);

  py::class_<ContextProfile>(m, "ContextProfile")
      .def_static("from_record", &ContextProfile::from_record)
      .def_readonly("mix_gamma", &ContextProfile::mix_gamma)
      .def("empty", &ContextProfile::empty);

  m.def("contextual_score", &contextual_score);

  py::class_<LmScorer>(m, "LmScorer");
  py::class_<NGramScorer, LmScorer>(m, "NGramScorer")
      .def(py::init<const NGramModel&>(), py::keep_alive<1, 2>())
      .def("log10_prob", &NGramScorer::log10_prob);
  py::class_<ContextualScorer, LmScorer>(m, "ContextualScorer")
      .def(py::init<const NGramModel&, ContextProfile>(), py::keep_alive<1, 2>())
      .def("log10_prob", &ContextualScorer::log10_prob);

  m.def("perplexity", &perplexity);

  py::class_<FusionConfig>(m, "FusionConfig")
      .def(py::init<>())
      .def_readwrite("swipe_correction_coeff", &FusionConfig::swipe_correction_coeff)
      .def_readwrite("lm_coeff", &FusionConfig::lm_coeff)
      .def_readwrite("num_suggestions", &FusionConfig::num_suggestions);

  m.def("score_fusion", &score_fusion, py::arg("traj"), py::arg("decoder"), py::arg("vocab"),
        py::arg("costs"), py::arg("lm"), py::arg("prev_tokens"), py::arg("config"),
        py::arg("beam"), py::arg("correction") = CorrectionOptions{});
  m.def("naive_correction", &naive_correction, py::arg("traj"), py::arg("decoder"),
        py::arg("vocab"), py::arg("lm"), py::arg("prev_tokens"), py::arg("config"),
        py::arg("beam"), py::arg("fanout_k") = 5);

  m.def("levenshtein", &levenshtein);

  py::class_<TranscriptionEvent>(m, "TranscriptionEvent")
      .def(py::init<>())
      .def_readwrite("stimulus", &TranscriptionEvent::stimulus)
      .def_readwrite("committed_initial", &TranscriptionEvent::committed_initial)
      .def_readwrite("committed_final", &TranscriptionEvent::committed_final)
      .def_readwrite("elapsed", &TranscriptionEvent::elapsed)
      .def_readwrite("corrections", &TranscriptionEvent::corrections);

  m.def("wpm", &wpm);
  m.def("cer", &cer);

  py::class_<NoiseProfile>(m, "NoiseProfile")
      .def_readonly("name", &NoiseProfile::name)
      .def_readonly("noise_std", &NoiseProfile::noise_std)
      .def_readonly("drift_rate", &NoiseProfile::drift_rate)
      .def_readonly("pinch_impulse", &NoiseProfile::pinch_impulse);

  m.def("noise_profile", &noise_profile);

  py::class_<BenchSetup>(m, "BenchSetup")
      .def(py::init<Vocabulary, std::vector<PhraseRecord>>())
      .def_readwrite("layout", &BenchSetup::layout)
      .def_readwrite("sim", &BenchSetup::sim)
      .def_readwrite("filter", &BenchSetup::filter)
      .def_readwrite("fusion", &BenchSetup::fusion)
      .def_readwrite("trace", &BenchSetup::trace)
      .def_readwrite("lm", &BenchSetup::lm)
      .def_readwrite("lm_gamma", &BenchSetup::lm_gamma)
      .def_readwrite("beam", &BenchSetup::beam)
      .def_readwrite("seed", &BenchSetup::seed);

  m.def("train_lm_from_phrases", &train_lm_from_phrases, py::arg("phrases"), py::arg("vocab"),
        py::arg("order") = 3, py::arg("discount") = 0.75);

  py::class_<ReportRow>(m, "ReportRow")
      .def_readonly("condition", &ReportRow::condition)
      .def_readonly("block", &ReportRow::block)
      .def_readonly("phrase_id", &ReportRow::phrase_id)
      .def_readonly("wpm", &ReportRow::wpm)
      .def_readonly("ucer", &ReportRow::ucer)
      .def_readonly("ccer", &ReportRow::ccer)
      .def_readonly("corrections", &ReportRow::corrections);

  py::class_<BenchReport>(m, "BenchReport")
      .def_readonly("rows", &BenchReport::rows)
      .def_readonly("csv", &BenchReport::csv)
      .def_readonly("summary", &BenchReport::summary);

  m.def("run_benchmark", &run_benchmark);
  m.def("run_ablation", &run_ablation);
  m.def("tune", &tune);
  m.def("synthetic_vocabulary", &synthetic_vocabulary);

  py::class_<PhraseGenOptions>(m, "PhraseGenOptions").def(py::init<>());
  m.def("synthetic_phrases", &synthetic_phrases, py::arg("vocab"), py::arg("count"),
        py::arg("seed"), py::arg("options") = PhraseGenOptions{});
}
