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

#ifndef MOTSKIT_FORMATS_HPP_
#define MOTSKIT_FORMATS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "motskit/dataset.hpp"
#include "motskit/metrics.hpp"
#include "motskit/refine.hpp"
#include "motskit/temporal.hpp"
#include "motskit/tracking.hpp"

namespace mots {

// Grayscale PFM ("Pf"): dimensions line, scale line whose sign encodes
// endianness (negative = little), then 32-bit float rows stored
// bottom-up. The loader converts to row-major top-down doubles; the
// writer emits little-endian with scale -1.
DepthMap load_pfm(const std::filesystem::path& path);
void save_pfm(const std::filesystem::path& path, const DepthMap& depth);

// Two-channel middlebury-style flow: float magic 202021.25 ("PIEH"),
// int32 width and height, then interleaved (dx, dy) float pairs
// row-major.
FlowField load_flo(const std::filesystem::path& path);
void save_flo(const std::filesystem::path& path, const FlowField& flow);

// MOTS annotation text files (see parse_mots_txt / write_mots_txt). The
// sequence id defaults to the file stem.
SequenceAnnotation load_mots_file(const std::filesystem::path& path,
                                  const std::string& sequence_id = "");
void save_mots_file(const std::filesystem::path& path,
                    const SequenceAnnotation& ann);

// Detection interchange document (JSON; schema in docs/detections.schema.json).
struct DetectionFile {
  std::string sequence;
  int frame_count = 0;
  int image_height = 0;
  int image_width = 0;
  std::vector<std::vector<Detection>> frames;  // indexed by frame
};

DetectionFile load_detections(const std::filesystem::path& path);
void save_detections(const std::filesystem::path& path,
                     const DetectionFile& dets);

// Metrics report JSON: one block per class keyed by class name, an
// "aggregate" block, and tool metadata. Ratio fields are null for
// classes with no ground truth.
std::string report_to_json(const MetricsReport& report);

// Stats report JSON mirroring the Table-1 columns plus histogram arrays.
std::string stats_to_json(const StatsReport& report);

// Writes content to a sibling temp file and renames it into place, so
// readers never observe a partially written artifact.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// Whole file as lines (any of \n, \r\n); FormatError when unreadable.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace mots

#endif  // MOTSKIT_FORMATS_HPP_
