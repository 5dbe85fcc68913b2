// Copyright 2026 The motskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// motskit command-line front end.
//
// Exit codes: 0 success, 2 usage error, 3 input-format error,
// 4 invariant violation, 1 anything else. Every failure prints a single
// machine-readable JSON line to stderr:
//   {"error":{"category":"usage|input-format|invariant|internal","message":"..."}}

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "motskit/dataset.hpp"
#include "motskit/error.hpp"
#include "motskit/formats.hpp"
#include "motskit/mask.hpp"
#include "motskit/metrics.hpp"
#include "motskit/refine.hpp"
#include "motskit/synth.hpp"
#include "motskit/tracking.hpp"
#include "motskit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void emit_error(const std::string& category, const std::string& message) {
  ordered_json err;
  err["error"] = {{"category", category}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

void require_exists(const fs::path& path, const std::string& flag) {
  if (!fs::exists(path)) {
    throw mots::InvariantError(flag + " path does not exist: " + path.string());
  }
}

// Emits to --out when given, stdout otherwise.
void deliver(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    mots::atomic_write_file(out, content);
  }
}

// ---------------------------------------------------------------------------
// codec

mots::BinaryMask parse_mask_text(const std::vector<std::string>& lines,
                                 const std::string& origin) {
  std::vector<const std::string*> rows;
  for (const std::string& line : lines) {
    if (!line.empty()) rows.push_back(&line);
  }
  if (rows.empty()) {
    throw mots::FormatError(origin + ": no mask rows");
  }
  const std::size_t width = rows.front()->size();
  mots::BinaryMask mask(static_cast<int>(rows.size()), static_cast<int>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& row = *rows[r];
    if (row.size() != width) {
      throw mots::FormatError(origin + ": ragged row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (row[c] != '0' && row[c] != '1') {
        throw mots::FormatError(origin + ": mask characters must be 0 or 1");
      }
      mask.data[r * width + c] = row[c] == '1';
    }
  }
  return mask;
}

std::string mask_to_text(const mots::BinaryMask& mask) {
  std::string out;
  out.reserve(static_cast<std::size_t>(mask.height) * (mask.width + 1));
  for (int r = 0; r < mask.height; ++r) {
    for (int c = 0; c < mask.width; ++c) {
      out += mask.at(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void run_codec_encode(const std::string& input, const std::string& out) {
  require_exists(input, "input");
  const mots::BinaryMask mask =
      parse_mask_text(mots::read_lines(input), input);
  const mots::RleMask rle = mots::rle_encode(mask);
  ordered_json doc;
  doc["height"] = rle.height;
  doc["width"] = rle.width;
  doc["counts"] = rle.counts;
  deliver(out, doc.dump(2) + "\n");
}

void run_codec_decode(const std::string& input, const std::string& out) {
  require_exists(input, "input");
  std::string raw;
  for (const std::string& line : mots::read_lines(input)) {
    raw += line;
    raw += '\n';
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw mots::FormatError(input + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("height") || !doc.contains("width") ||
      !doc.contains("counts") || !doc["height"].is_number_integer() ||
      !doc["width"].is_number_integer() || !doc["counts"].is_string()) {
    throw mots::FormatError(input +
                            ": expected {\"height\", \"width\", \"counts\"}");
  }
  mots::RleMask rle;
  rle.height = doc["height"].get<int>();
  rle.width = doc["width"].get<int>();
  rle.counts = doc["counts"].get<std::string>();
  if (rle.height < 1 || rle.width < 1) {
    throw mots::FormatError(input + ": dimensions must be positive");
  }
  deliver(out, mask_to_text(mots::rle_decode(rle)));
}

// ---------------------------------------------------------------------------
// shared input plumbing

std::vector<mots::DepthMap> load_depth_dir(const std::string& dir,
                                           int frame_count) {
  require_exists(dir, "--depth");
  if (!fs::is_directory(dir)) {
    throw mots::InvariantError("--depth must be a directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pfm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (static_cast<int>(files.size()) != frame_count) {
    throw mots::InvariantError(
        dir + ": expected " + std::to_string(frame_count) +
        " .pfm files, found " + std::to_string(files.size()));
  }
  std::vector<mots::DepthMap> maps;
  maps.reserve(files.size());
  for (const fs::path& f : files) maps.push_back(mots::load_pfm(f));
  return maps;
}

std::vector<int> parse_classes(const std::string& spec) {
  std::vector<int> classes;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    const int id = mots::class_id_from_name(token);
    if (std::find(classes.begin(), classes.end(), id) == classes.end()) {
      classes.push_back(id);
    }
  }
  return classes;
}

// Validator shared by --classes: every comma token must name a class.
std::string check_classes(const std::string& spec) {
  if (spec.empty()) return "class list must not be empty";
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    if (token != "car" && token != "pedestrian") {
      return "unknown class '" + token + "' (choose from: car, pedestrian)";
    }
  }
  return {};
}

std::string check_unit_open(const std::string& value) {
  try {
    const double v = std::stod(value);
    if (!(v > 0.0) || !(v < 1.0)) return "value must be in (0, 1)";
  } catch (...) {
    // let CLI11's own conversion report the malformed number
  }
  return {};
}

std::string check_positive_real(const std::string& value) {
  try {
    const double v = std::stod(value);
    if (!(v > 0.0)) return "value must be > 0";
  } catch (...) {
  }
  return {};
}

// ---------------------------------------------------------------------------
// refine

struct RefineConfig {
  std::string detections;
  std::string depth;
  std::string out;
  mots::DgmParams dgm;
};

void run_refine(const RefineConfig& cfg) {
  require_exists(cfg.detections, "--detections");
  const mots::DetectionFile dets = mots::load_detections(cfg.detections);
  const std::vector<mots::DepthMap> depth =
      load_depth_dir(cfg.depth, dets.frame_count);

  mots::SequenceAnnotation ann;
  ann.sequence_id = dets.sequence;
  ann.frame_count = dets.frame_count;
  ann.image_height = dets.image_height;
  ann.image_width = dets.image_width;
  for (int f = 0; f < dets.frame_count; ++f) {
    const std::vector<mots::Detection>& frame = dets.frames[f];
    if (frame.empty()) continue;
    std::vector<mots::RoiPlacement> placements;
    placements.reserve(frame.size());
    for (int d = 0; d < static_cast<int>(frame.size()); ++d) {
      const mots::Detection& det = frame[d];
      const mots::BinaryMask dense = mots::rle_decode(det.mask);
      mots::SoftMask soft(dense.height, dense.width);
      for (std::size_t i = 0; i < dense.data.size(); ++i) {
        soft.values[i] = dense.data[i] ? 1.0 : 0.0;
      }
      const mots::RefinedRoi refined =
          mots::refine_mask(soft, depth[f], det.bbox, cfg.dgm);
      placements.push_back({mots::binarize(refined, cfg.dgm), refined.roi.x0,
                            refined.roi.y0, det.score, d});
    }
    const std::vector<mots::BinaryMask> pasted =
        mots::paste_roi(dets.image_height, dets.image_width, placements);
    for (int d = 0; d < static_cast<int>(frame.size()); ++d) {
      mots::RleMask rle = mots::rle_encode(pasted[d]);
      if (mots::rle_area(rle) == 0) continue;
      ann.frames[f].push_back(
          {d, frame[d].class_id, std::move(rle)});
    }
  }
  mots::validate_annotation(ann);
  mots::save_mots_file(cfg.out, ann);
}

// ---------------------------------------------------------------------------
// track

struct TrackConfig {
  std::string detections;
  std::string out;
  mots::AssocParams assoc;
};

mots::SequenceAnnotation tracks_to_annotation(
    const std::vector<mots::Track>& tracks, const std::string& sequence_id,
    int frame_count, int image_height, int image_width) {
  mots::SequenceAnnotation ann;
  ann.sequence_id = sequence_id;
  ann.frame_count = frame_count;
  ann.image_height = image_height;
  ann.image_width = image_width;
  for (const mots::Track& track : tracks) {
    for (const mots::Detection& det : track.detections) {
      ann.frames[det.frame].push_back(
          {track.track_id, track.class_id, det.mask});
    }
  }
  for (auto& [frame, entries] : ann.frames) {
    std::sort(entries.begin(), entries.end(),
              [](const mots::AnnEntry& a, const mots::AnnEntry& b) {
                return a.track_id < b.track_id;
              });
  }
  mots::validate_annotation(ann);
  return ann;
}

void run_track(const TrackConfig& cfg) {
  require_exists(cfg.detections, "--detections");
  const mots::DetectionFile dets = mots::load_detections(cfg.detections);
  const std::vector<mots::Track> tracks =
      mots::associate(dets.frames, cfg.assoc);
  mots::save_mots_file(
      cfg.out, tracks_to_annotation(tracks, dets.sequence, dets.frame_count,
                                    dets.image_height, dets.image_width));
}

// ---------------------------------------------------------------------------
// eval

struct EvalConfig {
  std::string gt;
  std::string pred;
  std::string classes = "car,pedestrian";
  std::string out;
  int jobs = 1;
  bool percent = false;
  bool resolve = false;
};

std::vector<std::pair<fs::path, fs::path>> pair_eval_inputs(
    const fs::path& gt, const fs::path& pred) {
  require_exists(gt, "--gt");
  require_exists(pred, "--pred");
  const bool gt_dir = fs::is_directory(gt);
  if (gt_dir != fs::is_directory(pred)) {
    throw mots::InvariantError(
        "--gt and --pred must both be files or both be directories");
  }
  if (!gt_dir) return {{gt, pred}};

  auto list_txt = [](const fs::path& dir) {
    std::map<std::string, fs::path> by_stem;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        by_stem[entry.path().stem().string()] = entry.path();
      }
    }
    return by_stem;
  };
  const auto gts = list_txt(gt);
  const auto preds = list_txt(pred);
  if (gts.empty()) {
    throw mots::InvariantError("no .txt sequences under " + gt.string());
  }
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const auto& [stem, path] : gts) {
    const auto it = preds.find(stem);
    if (it == preds.end()) {
      throw mots::InvariantError("missing prediction for sequence " + stem);
    }
    pairs.emplace_back(path, it->second);
  }
  for (const auto& [stem, path] : preds) {
    if (!gts.count(stem)) {
      throw mots::InvariantError("prediction without ground truth: " + stem);
    }
  }
  return pairs;
}

// Annotation text files carry no header, so an empty or short prediction
// stream decodes with a smaller frame count (and zero image size) than
// its ground truth. Reconcile before the strict compatibility checks.
void reconcile_pair(mots::SequenceAnnotation& gt,
                    mots::SequenceAnnotation& pred) {
  const int frames = std::max(gt.frame_count, pred.frame_count);
  gt.frame_count = frames;
  pred.frame_count = frames;
  if (pred.frames.empty() && pred.ignore_regions.empty()) {
    pred.image_height = gt.image_height;
    pred.image_width = gt.image_width;
  }
  if (gt.frames.empty() && gt.ignore_regions.empty()) {
    gt.image_height = pred.image_height;
    gt.image_width = pred.image_width;
  }
}

std::string format_ratio(double v, bool percent) {
  if (std::isnan(v)) return "n/a";
  char buf[32];
  if (percent) {
    std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
  } else {
    std::snprintf(buf, sizeof buf, "%.4f", v);
  }
  return buf;
}

std::string format_metrics_table(const mots::MetricsReport& report,
                                 bool percent) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %6s %7s %7s %7s %9s\n",
                "class", "sMOTSA", "MOTSA", "HOTA", "IDS", "TP", "FP", "FN",
                "soft_TP");
  out += line;
  auto add_row = [&](const std::string& name, const mots::ClassMetrics& m) {
    std::snprintf(line, sizeof line,
                  "%-12s %9s %9s %9s %6lld %7lld %7lld %7lld %9.2f\n",
                  name.c_str(), format_ratio(m.smotsa, percent).c_str(),
                  format_ratio(m.motsa, percent).c_str(),
                  format_ratio(m.hota, percent).c_str(),
                  static_cast<long long>(m.ids), static_cast<long long>(m.tp),
                  static_cast<long long>(m.fp), static_cast<long long>(m.fn),
                  m.soft_tp);
    out += line;
  };
  for (const auto& [class_id, metrics] : report.per_class) {
    add_row(mots::class_name(class_id), metrics);
  }
  add_row("aggregate", report.aggregate);
  return out;
}

void run_eval(const EvalConfig& cfg) {
  const auto pairs = pair_eval_inputs(cfg.gt, cfg.pred);
  std::vector<mots::SequenceAnnotation> gts, preds;
  gts.reserve(pairs.size());
  preds.reserve(pairs.size());
  for (const auto& [gt_path, pred_path] : pairs) {
    gts.push_back(mots::load_mots_file(gt_path));
    mots::SequenceAnnotation pred = mots::load_mots_file(pred_path);
    if (cfg.resolve) pred = mots::resolve_overlaps(pred);
    reconcile_pair(gts.back(), pred);
    preds.push_back(std::move(pred));
  }
  std::vector<std::pair<const mots::SequenceAnnotation*,
                        const mots::SequenceAnnotation*>>
      seq_pairs;
  seq_pairs.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    seq_pairs.emplace_back(&gts[i], &preds[i]);
  }
  const mots::MetricsReport report =
      mots::evaluate_sequences(seq_pairs, parse_classes(cfg.classes), cfg.jobs);
  std::cout << format_metrics_table(report, cfg.percent);
  if (!cfg.out.empty()) {
    mots::atomic_write_file(cfg.out, mots::report_to_json(report));
  }
}

// ---------------------------------------------------------------------------
// stats

struct StatsConfig {
  std::vector<std::string> inputs;
  int stride = 5;
  std::string out;
};

void run_stats(const StatsConfig& cfg) {
  std::vector<fs::path> files;
  for (const std::string& input : cfg.inputs) {
    require_exists(input, "input");
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      if (found.empty()) {
        throw mots::InvariantError("no .txt sequences under " + input);
      }
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(input);
    }
  }
  std::vector<mots::SequenceAnnotation> anns;
  anns.reserve(files.size());
  for (const fs::path& f : files) {
    anns.push_back(mots::subsample_every_n(mots::load_mots_file(f), cfg.stride));
  }
  const mots::StatsReport report = mots::dataset_stats(anns);
  std::cout << mots::format_stats_table(report);
  if (!cfg.out.empty()) {
    mots::atomic_write_file(cfg.out, mots::stats_to_json(report));
  }
}

// ---------------------------------------------------------------------------
// synth

struct SynthConfig {
  mots::SynthSpec spec;
  std::string out;
};

void run_synth(const SynthConfig& cfg) {
  const mots::SynthScene scene = mots::synthesize(cfg.spec);
  const fs::path root(cfg.out);
  fs::create_directories(root / "depth");
  fs::create_directories(root / "flow");

  mots::save_mots_file(root / "gt.txt", scene.gt);

  mots::DetectionFile dets;
  dets.sequence = scene.gt.sequence_id;
  dets.frame_count = scene.gt.frame_count;
  dets.image_height = scene.gt.image_height;
  dets.image_width = scene.gt.image_width;
  dets.frames = scene.detections;
  mots::save_detections(root / "detections.json", dets);

  char name[32];
  for (int f = 0; f < scene.gt.frame_count; ++f) {
    std::snprintf(name, sizeof name, "%06d.pfm", f);
    mots::save_pfm(root / "depth" / name, scene.depth[f]);
    std::snprintf(name, sizeof name, "%06d.flo", f);
    mots::save_flo(root / "flow" / name, scene.flow[f]);
  }

  ordered_json meta;
  meta["sequence"] = scene.gt.sequence_id;
  meta["seed"] = cfg.spec.seed;
  meta["frames"] = cfg.spec.frames;
  meta["objects"] = cfg.spec.objects;
  meta["height"] = cfg.spec.height;
  meta["width"] = cfg.spec.width;
  meta["noise"] = cfg.spec.noise;
  meta["embedding_dim"] = cfg.spec.embedding_dim;
  meta["det_track_ids"] = scene.det_track_ids;
  mots::atomic_write_file(root / "scene.json", meta.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// pipeline

struct PipelineConfig {
  std::string detections;
  std::string depth;
  std::string out;
  mots::DgmParams dgm;
  mots::AssocParams assoc;
  int jobs = 1;
};

void run_pipeline(const PipelineConfig& cfg) {
  require_exists(cfg.detections, "--detections");
  const mots::DetectionFile dets = mots::load_detections(cfg.detections);
  const std::vector<mots::DepthMap> depth =
      load_depth_dir(cfg.depth, dets.frame_count);
  const mots::SequenceAnnotation ann = mots::run_labeler_pipeline(
      dets.frames, depth, cfg.dgm, cfg.assoc, cfg.jobs, dets.sequence);
  mots::save_mots_file(cfg.out, ann);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOTS annotation toolkit: mask codec, depth-guided "
               "refinement, tracking, metrics, and fixtures"};
  app.set_version_flag("--version",
                       std::string(mots::kToolName) + " " + mots::kVersion);
  app.require_subcommand(1);

  // codec -------------------------------------------------------------------
  CLI::App* codec = app.add_subcommand("codec", "Mask RLE codec");
  codec->require_subcommand(1);
  std::string codec_in, codec_out;
  CLI::App* codec_encode = codec->add_subcommand(
      "encode", "Dense 0/1 text mask -> RLE JSON");
  codec_encode->add_option("input", codec_in, "Mask text file (rows of 0/1)")
      ->required();
  codec_encode->add_option("--out", codec_out, "Output path (default stdout)");
  codec_encode->callback([&] { run_codec_encode(codec_in, codec_out); });
  CLI::App* codec_decode = codec->add_subcommand(
      "decode", "RLE JSON -> dense 0/1 text mask");
  codec_decode->add_option("input", codec_in, "RLE JSON file")->required();
  codec_decode->add_option("--out", codec_out, "Output path (default stdout)");
  codec_decode->callback([&] { run_codec_decode(codec_in, codec_out); });

  // refine ------------------------------------------------------------------
  RefineConfig refine_cfg;
  CLI::App* refine = app.add_subcommand(
      "refine", "Depth-granularity mask refinement of a detection stream");
  refine->add_option("--detections", refine_cfg.detections, "Detections JSON")
      ->required();
  refine->add_option("--depth", refine_cfg.depth, "Directory of per-frame .pfm")
      ->required();
  refine->add_option("--out", refine_cfg.out, "Output annotation txt")
      ->required();
  refine->add_option("--k", refine_cfg.dgm.k, "Sub-regions per RoI axis")
      ->default_val(2)
      ->check(CLI::PositiveNumber);
  refine
      ->add_option("--tau-prod", refine_cfg.dgm.tau_prod,
                   "Binarization threshold on the blended product")
      ->default_val(0.25)
      ->check(CLI::Validator(check_unit_open, "FLOAT in (0,1)", "unit_open"));
  refine->callback([&] { run_refine(refine_cfg); });

  // track -------------------------------------------------------------------
  TrackConfig track_cfg;
  CLI::App* track = app.add_subcommand(
      "track", "Embedding association of a detection stream");
  track->add_option("--detections", track_cfg.detections, "Detections JSON")
      ->required();
  track->add_option("--out", track_cfg.out, "Output annotation txt")
      ->required();
  track
      ->add_option("--dist-threshold", track_cfg.assoc.dist_threshold,
                   "Max embedding distance for a match")
      ->default_val(1.0)
      ->check(CLI::Validator(check_positive_real, "FLOAT > 0", "positive"));
  track
      ->add_option("--max-gap", track_cfg.assoc.max_gap,
                   "Max frame gap when extending a track")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  track->callback([&] { run_track(track_cfg); });

  // eval --------------------------------------------------------------------
  EvalConfig eval_cfg;
  CLI::App* eval = app.add_subcommand(
      "eval", "sMOTSA/MOTSA/IDS/HOTA evaluation of predictions");
  eval->add_option("--gt", eval_cfg.gt, "Ground-truth txt file or directory")
      ->required();
  eval->add_option("--pred", eval_cfg.pred,
                   "Prediction txt file or directory")
      ->required();
  eval->add_option("--classes", eval_cfg.classes,
                   "Comma-separated class names")
      ->default_val("car,pedestrian")
      ->check(CLI::Validator(check_classes, "CLASS[,CLASS]", "classes"));
  eval->add_option("--jobs", eval_cfg.jobs, "Worker threads over sequences")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  eval->add_flag("--percent", eval_cfg.percent,
                 "Print ratios as percentages (two decimals)");
  eval->add_flag("--resolve-overlaps", eval_cfg.resolve,
                 "Resolve overlapping prediction masks before scoring");
  eval->add_option("--out", eval_cfg.out, "Write the JSON report here");
  eval->callback([&] { run_eval(eval_cfg); });

  // stats -------------------------------------------------------------------
  StatsConfig stats_cfg;
  CLI::App* stats = app.add_subcommand(
      "stats", "Annotation-protocol statistics over sequences");
  stats->add_option("inputs", stats_cfg.inputs,
                    "Annotation txt files or directories")
      ->required();
  stats
      ->add_option("--stride", stats_cfg.stride,
                   "Keep every nth frame before counting (1 = all)")
      ->default_val(5)
      ->check(CLI::PositiveNumber);
  stats->add_option("--out", stats_cfg.out, "Write the JSON report here");
  stats->callback([&] { run_stats(stats_cfg); });

  // synth -------------------------------------------------------------------
  SynthConfig synth_cfg;
  CLI::App* synth = app.add_subcommand(
      "synth", "Deterministic synthetic sequence with exact ground truth");
  synth->add_option("--seed", synth_cfg.spec.seed, "RNG seed")->default_val(1);
  synth->add_option("--frames", synth_cfg.spec.frames, "Frame count")
      ->default_val(5)
      ->check(CLI::PositiveNumber);
  synth->add_option("--objects", synth_cfg.spec.objects, "Object count")
      ->default_val(3)
      ->check(CLI::PositiveNumber);
  synth->add_option("--height", synth_cfg.spec.height, "Image height")
      ->default_val(96)
      ->check(CLI::PositiveNumber);
  synth->add_option("--width", synth_cfg.spec.width, "Image width")
      ->default_val(96)
      ->check(CLI::PositiveNumber);
  synth
      ->add_option("--noise", synth_cfg.spec.noise,
                   "Coarse-mask dilation radius")
      ->default_val(0)
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--out", synth_cfg.out, "Output fixture directory")
      ->required();
  synth->callback([&] { run_synth(synth_cfg); });

  // pipeline ----------------------------------------------------------------
  PipelineConfig pipe_cfg;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Refine + associate a detection stream end to end");
  pipeline->add_option("--detections", pipe_cfg.detections, "Detections JSON")
      ->required();
  pipeline
      ->add_option("--depth", pipe_cfg.depth, "Directory of per-frame .pfm")
      ->required();
  pipeline->add_option("--out", pipe_cfg.out, "Output annotation txt")
      ->required();
  pipeline->add_option("--k", pipe_cfg.dgm.k, "Sub-regions per RoI axis")
      ->default_val(2)
      ->check(CLI::PositiveNumber);
  pipeline
      ->add_option("--tau-prod", pipe_cfg.dgm.tau_prod,
                   "Binarization threshold on the blended product")
      ->default_val(0.25)
      ->check(CLI::Validator(check_unit_open, "FLOAT in (0,1)", "unit_open"));
  pipeline
      ->add_option("--dist-threshold", pipe_cfg.assoc.dist_threshold,
                   "Max embedding distance for a match")
      ->default_val(1.0)
      ->check(CLI::Validator(check_positive_real, "FLOAT > 0", "positive"));
  pipeline
      ->add_option("--max-gap", pipe_cfg.assoc.max_gap,
                   "Max frame gap when extending a track")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  pipeline->add_option("--jobs", pipe_cfg.jobs, "Worker threads over frames")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  pipeline->callback([&] { run_pipeline(pipe_cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  } catch (const mots::FormatError& e) {
    emit_error("input-format", e.what());
    return 3;
  } catch (const mots::InvariantError& e) {
    emit_error("invariant", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    emit_error("invariant", e.what());
    return 4;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
