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

#include "motskit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "motskit/error.hpp"

namespace mots {

namespace {

long long parse_ll(const std::string& token, std::size_t line_no,
                   const char* field) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": field '" +
                      field + "' is not an integer: '" + token + "'");
  }
  return value;
}

std::string obj_label(const AnnEntry& e) {
  return std::to_string(e.class_id * 1000 + e.track_id);
}

// Per-frame overlap check via pixel ownership over the decoded masks.
void check_frame_overlap(const SequenceAnnotation& ann, int frame,
                         const std::vector<AnnEntry>& entries) {
  if (entries.size() < 2) return;
  std::vector<int> owner(
      static_cast<std::size_t>(ann.image_height) * ann.image_width, -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const BinaryMask mask = rle_decode(entries[i].mask);
    for (std::size_t pix = 0; pix < mask.data.size(); ++pix) {
      if (!mask.data[pix]) continue;
      if (owner[pix] >= 0) {
        throw InvariantError(
            "frame " + std::to_string(frame) + ": masks of objects " +
            obj_label(entries[owner[pix]]) + " and " + obj_label(entries[i]) +
            " overlap");
      }
      owner[pix] = static_cast<int>(i);
    }
  }
}

}  // namespace

SequenceAnnotation parse_mots_txt(const std::vector<std::string>& lines,
                                  const std::string& sequence_id) {
  SequenceAnnotation ann;
  ann.sequence_id = sequence_id;
  int max_frame = -1;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::istringstream ss(lines[li]);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 6) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 6 " +
                        "fields, got " + std::to_string(tokens.size()));
    }
    const long long frame = parse_ll(tokens[0], line_no, "frame");
    const long long obj_id = parse_ll(tokens[1], line_no, "obj_id");
    const long long class_id = parse_ll(tokens[2], line_no, "class_id");
    const long long img_h = parse_ll(tokens[3], line_no, "img_height");
    const long long img_w = parse_ll(tokens[4], line_no, "img_width");
    const std::string& counts = tokens[5];

    if (frame < 0) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": negative frame index");
    }
    if (img_h < 1 || img_w < 1) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": non-positive image dimensions");
    }
    if (ann.image_height == 0) {
      ann.image_height = static_cast<int>(img_h);
      ann.image_width = static_cast<int>(img_w);
    } else if (ann.image_height != img_h || ann.image_width != img_w) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": inconsistent image dimensions");
    }

    RleMask mask{static_cast<int>(img_h), static_cast<int>(img_w), counts};
    try {
      rle_decode(mask);  // validates alphabet, deltas, and total area
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }

    max_frame = std::max(max_frame, static_cast<int>(frame));
    if (obj_id == kIgnoreObjectId) {
      if (class_id != kIgnoreClassId) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": ignore regions must use class_id 10");
      }
      ann.ignore_regions[static_cast<int>(frame)].push_back(mask);
      continue;
    }
    if (class_id != kClassCar && class_id != kClassPedestrian) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": unknown class_id " + std::to_string(class_id));
    }
    if (obj_id / 1000 != class_id) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": obj_id " + std::to_string(obj_id) +
                        " does not encode class_id " +
                        std::to_string(class_id));
    }
    AnnEntry entry;
    entry.track_id = static_cast<int>(obj_id % 1000);
    entry.class_id = static_cast<int>(class_id);
    entry.mask = mask;
    ann.frames[static_cast<int>(frame)].push_back(entry);
  }
  ann.frame_count = max_frame + 1;
  validate_annotation(ann);
  return ann;
}

std::vector<std::string> write_mots_txt(const SequenceAnnotation& ann) {
  struct Line {
    int frame;
    int obj_id;
    std::string text;
  };
  std::vector<Line> rows;
  for (const auto& [frame, entries] : ann.frames) {
    for (const AnnEntry& e : entries) {
      if (e.track_id < 0 || e.track_id > 999) {
        throw InvariantError("write_mots_txt: track id " +
                             std::to_string(e.track_id) +
                             " not encodable as obj_id");
      }
      const int obj_id = e.class_id * 1000 + e.track_id;
      std::ostringstream os;
      os << frame << ' ' << obj_id << ' ' << e.class_id << ' '
         << e.mask.height << ' ' << e.mask.width << ' ' << e.mask.counts;
      rows.push_back(Line{frame, obj_id, os.str()});
    }
  }
  for (const auto& [frame, masks] : ann.ignore_regions) {
    for (const RleMask& m : masks) {
      std::ostringstream os;
      os << frame << ' ' << kIgnoreObjectId << ' ' << kIgnoreClassId << ' '
         << m.height << ' ' << m.width << ' ' << m.counts;
      rows.push_back(Line{frame, kIgnoreObjectId, os.str()});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Line& a, const Line& b) {
    return a.frame != b.frame ? a.frame < b.frame : a.obj_id < b.obj_id;
  });
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (Line& row : rows) lines.push_back(std::move(row.text));
  return lines;
}

void validate_annotation(const SequenceAnnotation& ann) {
  const bool has_content = !ann.frames.empty() || !ann.ignore_regions.empty();
  if (has_content && (ann.image_height < 1 || ann.image_width < 1)) {
    throw InvariantError("annotation: image dimensions must be positive");
  }
  for (const auto& [frame, entries] : ann.frames) {
    if (frame < 0 || frame >= ann.frame_count) {
      throw InvariantError("annotation: frame " + std::to_string(frame) +
                           " outside [0, frame_count)");
    }
    std::set<int> seen;
    for (const AnnEntry& e : entries) {
      if (e.class_id != kClassCar && e.class_id != kClassPedestrian) {
        throw InvariantError("frame " + std::to_string(frame) +
                             ": unknown class_id " +
                             std::to_string(e.class_id));
      }
      if (e.track_id < 0) {
        throw InvariantError("frame " + std::to_string(frame) +
                             ": negative track id");
      }
      if (!seen.insert(e.track_id).second) {
        throw InvariantError("frame " + std::to_string(frame) +
                             ": duplicate track id " +
                             std::to_string(e.track_id));
      }
      if (e.mask.height != ann.image_height ||
          e.mask.width != ann.image_width) {
        throw InvariantError("frame " + std::to_string(frame) +
                             ": mask dimensions differ from the sequence");
      }
    }
    check_frame_overlap(ann, frame, entries);
  }
  for (const auto& [frame, masks] : ann.ignore_regions) {
    if (frame < 0 || frame >= ann.frame_count) {
      throw InvariantError("annotation: ignore region frame " +
                           std::to_string(frame) + " outside range");
    }
    for (const RleMask& m : masks) {
      if (m.height != ann.image_height || m.width != ann.image_width) {
        throw InvariantError("frame " + std::to_string(frame) +
                             ": ignore-region dimensions differ");
      }
      rle_decode(m);
    }
  }
}

SequenceAnnotation subsample_every_n(const SequenceAnnotation& ann, int n) {
  if (n < 1) {
    throw std::invalid_argument("subsample_every_n: stride must be >= 1");
  }
  SequenceAnnotation out;
  out.sequence_id = ann.sequence_id;
  out.image_height = ann.image_height;
  out.image_width = ann.image_width;
  out.frame_count = (ann.frame_count + n - 1) / n;
  for (const auto& [frame, entries] : ann.frames) {
    if (frame % n == 0) out.frames[frame / n] = entries;
  }
  for (const auto& [frame, masks] : ann.ignore_regions) {
    if (frame % n == 0) out.ignore_regions[frame / n] = masks;
  }
  return out;
}

namespace {

Histogram build_histogram(std::vector<double> values, int bins) {
  Histogram h;
  if (values.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (hi == lo) hi = lo + 1.0;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
  }
  h.counts.assign(bins, 0);
  for (double v : values) {
    int bin = static_cast<int>((v - lo) / (hi - lo) * bins);
    bin = std::clamp(bin, 0, bins - 1);  // right edge closes the last bin
    ++h.counts[bin];
  }
  return h;
}

}  // namespace

StatsReport dataset_stats(const std::vector<SequenceAnnotation>& anns,
                          int bins) {
  if (anns.empty()) {
    throw std::invalid_argument("dataset_stats: empty annotation list");
  }
  if (bins < 1) {
    throw std::invalid_argument("dataset_stats: bins must be >= 1");
  }
  StatsReport report;
  report.video_clips = static_cast<std::int64_t>(anns.size());
  std::vector<double> sizes;
  std::vector<double> spans;
  for (const SequenceAnnotation& ann : anns) {
    report.total_frames += ann.frame_count;
    std::map<int, std::pair<int, int>> identity_span;  // track -> (first, last)
    for (const auto& [frame, entries] : ann.frames) {
      for (const AnnEntry& e : entries) {
        ++report.instances;
        const BBox box = mask_to_bbox(e.mask);
        sizes.push_back(std::sqrt((box.x2 - box.x1) * (box.y2 - box.y1)));
        auto [it, inserted] =
            identity_span.emplace(e.track_id, std::make_pair(frame, frame));
        if (!inserted) {
          it->second.first = std::min(it->second.first, frame);
          it->second.second = std::max(it->second.second, frame);
        }
      }
    }
    report.identities += static_cast<std::int64_t>(identity_span.size());
    for (const auto& [track, span] : identity_span) {
      spans.push_back(static_cast<double>(span.second - span.first + 1));
    }
  }
  report.instances_per_frame =
      report.total_frames == 0
          ? 0.0
          : static_cast<double>(report.instances) /
                static_cast<double>(report.total_frames);
  report.size_histogram = build_histogram(std::move(sizes), bins);
  report.track_length_histogram = build_histogram(std::move(spans), bins);
  return report;
}

std::string class_name(int class_id) {
  if (class_id == kClassCar) return "car";
  if (class_id == kClassPedestrian) return "pedestrian";
  throw std::invalid_argument("class_name: unknown class_id " +
                              std::to_string(class_id));
}

int class_id_from_name(const std::string& name) {
  if (name == "car") return kClassCar;
  if (name == "pedestrian") return kClassPedestrian;
  throw std::invalid_argument("unknown class name '" + name + "'");
}

std::string format_count(std::int64_t n) {
  if (n < 1000) return std::to_string(n);
  return std::to_string(
             static_cast<std::int64_t>(std::llround(n / 1000.0))) +
         "K";
}

std::string format_stats_table(const StatsReport& report) {
  std::ostringstream os;
  os << "Clips | Frames | Identities | Instances | Ins./Fr.\n";
  char ratio[32];
  std::snprintf(ratio, sizeof(ratio), "%.2f", report.instances_per_frame);
  os << format_count(report.video_clips) << " | "
     << format_count(report.total_frames) << " | "
     << format_count(report.identities) << " | "
     << format_count(report.instances) << " | " << ratio << "\n";
  return os.str();
}

}  // namespace mots
