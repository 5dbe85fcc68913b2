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

#include "motskit/formats.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "motskit/error.hpp"
#include "motskit/version.hpp"

namespace mots {

namespace {

using nlohmann::ordered_json;

constexpr float kFlowMagic = 202021.25f;  // spells "PIEH" as raw bytes
constexpr int kMaxImageDim = 1 << 20;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw FormatError("cannot read " + path.string());
  }
  return std::move(ss).str();
}

std::uint32_t byteswap32(std::uint32_t v) {
  return ((v & 0xff000000u) >> 24) | ((v & 0x00ff0000u) >> 8) |
         ((v & 0x0000ff00u) << 8) | ((v & 0x000000ffu) << 24);
}

float read_float_le(const char* p, bool file_is_little) {
  std::uint32_t bits;
  std::memcpy(&bits, p, 4);
  const bool host_little = std::endian::native == std::endian::little;
  if (file_is_little != host_little) bits = byteswap32(bits);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

void append_float_le(std::string& out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  if (std::endian::native != std::endian::little) bits = byteswap32(bits);
  char buf[4];
  std::memcpy(buf, &bits, 4);
  out.append(buf, 4);
}

void append_int32_le(std::string& out, std::int32_t v) {
  std::uint32_t bits = static_cast<std::uint32_t>(v);
  if (std::endian::native != std::endian::little) bits = byteswap32(bits);
  char buf[4];
  std::memcpy(buf, &bits, 4);
  out.append(buf, 4);
}

std::int32_t read_int32_le(const char* p) {
  std::uint32_t bits;
  std::memcpy(&bits, p, 4);
  if (std::endian::native != std::endian::little) bits = byteswap32(bits);
  return static_cast<std::int32_t>(bits);
}

}  // namespace

DepthMap load_pfm(const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  std::istringstream in(raw);
  std::string magic;
  long long width = 0, height = 0;
  double scale = 0.0;
  if (!(in >> magic >> width >> height >> scale)) {
    throw FormatError(path.string() + ": truncated PFM header");
  }
  if (magic == "PF") {
    throw FormatError(path.string() + ": color PFM unsupported, expected Pf");
  }
  if (magic != "Pf") {
    throw FormatError(path.string() + ": not a PFM file (magic '" + magic +
                      "')");
  }
  if (width < 1 || height < 1 || width > kMaxImageDim ||
      height > kMaxImageDim) {
    throw FormatError(path.string() + ": bad PFM dimensions");
  }
  if (scale == 0.0) {
    throw FormatError(path.string() + ": PFM scale must be nonzero");
  }
  // Exactly one whitespace byte separates the header from the raster.
  const std::streamoff data_start = in.tellg() + std::streamoff(1);
  const std::size_t need = static_cast<std::size_t>(width) * height * 4;
  if (raw.size() < static_cast<std::size_t>(data_start) + need) {
    throw FormatError(path.string() + ": PFM data truncated");
  }
  const bool little = scale < 0.0;
  DepthMap out(static_cast<int>(height), static_cast<int>(width));
  const char* p = raw.data() + data_start;
  for (long long file_row = 0; file_row < height; ++file_row) {
    const long long row = height - 1 - file_row;  // rows stored bottom-up
    for (long long col = 0; col < width; ++col, p += 4) {
      out.at(static_cast<int>(row), static_cast<int>(col)) =
          static_cast<double>(read_float_le(p, little));
    }
  }
  return out;
}

void save_pfm(const std::filesystem::path& path, const DepthMap& depth) {
  if (depth.height < 1 || depth.width < 1) {
    throw std::invalid_argument("save_pfm: empty depth map");
  }
  std::string out;
  out += "Pf\n";
  out += std::to_string(depth.width) + " " + std::to_string(depth.height) +
         "\n";
  out += "-1.0\n";
  for (int file_row = 0; file_row < depth.height; ++file_row) {
    const int row = depth.height - 1 - file_row;
    for (int col = 0; col < depth.width; ++col) {
      append_float_le(out, static_cast<float>(depth.at(row, col)));
    }
  }
  atomic_write_file(path, out);
}

FlowField load_flo(const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  if (raw.size() < 12) {
    throw FormatError(path.string() + ": flow file too short");
  }
  const float magic = read_float_le(raw.data(), true);
  if (magic != kFlowMagic) {
    throw FormatError(path.string() + ": bad flow magic");
  }
  const std::int32_t width = read_int32_le(raw.data() + 4);
  const std::int32_t height = read_int32_le(raw.data() + 8);
  if (width < 1 || height < 1 || width > kMaxImageDim ||
      height > kMaxImageDim) {
    throw FormatError(path.string() + ": bad flow dimensions");
  }
  const std::size_t need =
      12 + static_cast<std::size_t>(width) * height * 2 * 4;
  if (raw.size() < need) {
    throw FormatError(path.string() + ": flow data truncated");
  }
  FlowField out(height, width);
  const char* p = raw.data() + 12;
  for (std::int32_t row = 0; row < height; ++row) {
    for (std::int32_t col = 0; col < width; ++col) {
      const std::size_t i = out.index(row, col);
      out.dx[i] = static_cast<double>(read_float_le(p, true));
      out.dy[i] = static_cast<double>(read_float_le(p + 4, true));
      p += 8;
    }
  }
  return out;
}

void save_flo(const std::filesystem::path& path, const FlowField& flow) {
  if (flow.height < 1 || flow.width < 1) {
    throw std::invalid_argument("save_flo: empty flow field");
  }
  std::string out;
  append_float_le(out, kFlowMagic);
  append_int32_le(out, flow.width);
  append_int32_le(out, flow.height);
  for (int row = 0; row < flow.height; ++row) {
    for (int col = 0; col < flow.width; ++col) {
      const std::size_t i = flow.index(row, col);
      append_float_le(out, static_cast<float>(flow.dx[i]));
      append_float_le(out, static_cast<float>(flow.dy[i]));
    }
  }
  atomic_write_file(path, out);
}

SequenceAnnotation load_mots_file(const std::filesystem::path& path,
                                  const std::string& sequence_id) {
  const std::string seq =
      sequence_id.empty() ? path.stem().string() : sequence_id;
  try {
    return parse_mots_txt(read_lines(path), seq);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(path.string() + ": " + e.what());
  }
}

void save_mots_file(const std::filesystem::path& path,
                    const SequenceAnnotation& ann) {
  std::string out;
  for (const std::string& line : write_mots_txt(ann)) {
    out += line;
    out += '\n';
  }
  atomic_write_file(path, out);
}

namespace {

ordered_json require(const ordered_json& obj, const char* key,
                     const std::filesystem::path& path) {
  if (!obj.contains(key)) {
    throw FormatError(path.string() + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

int require_int(const ordered_json& obj, const char* key,
                const std::filesystem::path& path) {
  const ordered_json v = require(obj, key, path);
  if (!v.is_number_integer()) {
    throw FormatError(path.string() + ": field '" + key +
                      "' must be an integer");
  }
  return v.get<int>();
}

}  // namespace

DetectionFile load_detections(const std::filesystem::path& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw FormatError(path.string() + ": top level must be an object");
  }
  DetectionFile out;
  const ordered_json seq = require(doc, "sequence", path);
  if (!seq.is_string()) {
    throw FormatError(path.string() + ": 'sequence' must be a string");
  }
  out.sequence = seq.get<std::string>();
  out.frame_count = require_int(doc, "frame_count", path);
  out.image_height = require_int(doc, "image_height", path);
  out.image_width = require_int(doc, "image_width", path);
  if (out.frame_count < 0 || out.image_height < 1 || out.image_width < 1) {
    throw FormatError(path.string() + ": bad frame_count or image size");
  }
  const ordered_json frames = require(doc, "frames", path);
  if (!frames.is_array()) {
    throw FormatError(path.string() + ": 'frames' must be an array");
  }
  out.frames.resize(out.frame_count);
  std::vector<char> seen(out.frame_count, 0);
  for (const ordered_json& fr : frames) {
    if (!fr.is_object()) {
      throw FormatError(path.string() + ": frame entries must be objects");
    }
    const int frame = require_int(fr, "frame", path);
    if (frame < 0 || frame >= out.frame_count) {
      throw FormatError(path.string() + ": frame index " +
                        std::to_string(frame) + " outside frame_count");
    }
    if (seen[frame]) {
      throw FormatError(path.string() + ": duplicate frame " +
                        std::to_string(frame));
    }
    seen[frame] = 1;
    const ordered_json dets = require(fr, "detections", path);
    if (!dets.is_array()) {
      throw FormatError(path.string() + ": 'detections' must be an array");
    }
    for (const ordered_json& d : dets) {
      Detection det;
      det.frame = frame;
      const ordered_json bbox = require(d, "bbox", path);
      if (!bbox.is_array() || bbox.size() != 4 ||
          !bbox[0].is_number() || !bbox[1].is_number() ||
          !bbox[2].is_number() || !bbox[3].is_number()) {
        throw FormatError(path.string() + ": 'bbox' must be [x1,y1,x2,y2]");
      }
      det.bbox = BBox{bbox[0].get<double>(), bbox[1].get<double>(),
                      bbox[2].get<double>(), bbox[3].get<double>()};
      det.class_id = require_int(d, "class_id", path);
      const ordered_json score = require(d, "score", path);
      if (!score.is_number()) {
        throw FormatError(path.string() + ": 'score' must be a number");
      }
      det.score = score.get<double>();
      if (!(det.score >= 0.0) || !(det.score <= 1.0)) {
        throw FormatError(path.string() + ": score outside [0, 1]");
      }
      const ordered_json mask = require(d, "mask", path);
      if (!mask.is_object()) {
        throw FormatError(path.string() + ": 'mask' must be an object");
      }
      det.mask.height = require_int(mask, "height", path);
      det.mask.width = require_int(mask, "width", path);
      const ordered_json counts = require(mask, "counts", path);
      if (!counts.is_string()) {
        throw FormatError(path.string() + ": 'counts' must be a string");
      }
      det.mask.counts = counts.get<std::string>();
      if (det.mask.height != out.image_height ||
          det.mask.width != out.image_width) {
        throw FormatError(path.string() +
                          ": mask dimensions differ from image size");
      }
      try {
        rle_decode(det.mask);
      } catch (const FormatError& e) {
        throw FormatError(path.string() + ": frame " + std::to_string(frame) +
                          ": " + e.what());
      }
      const ordered_json emb = require(d, "embedding", path);
      if (!emb.is_array()) {
        throw FormatError(path.string() + ": 'embedding' must be an array");
      }
      for (const ordered_json& v : emb) {
        if (!v.is_number()) {
          throw FormatError(path.string() + ": embedding entries must be numbers");
        }
        det.embedding.push_back(v.get<double>());
      }
      out.frames[frame].push_back(std::move(det));
    }
  }
  return out;
}

void save_detections(const std::filesystem::path& path,
                     const DetectionFile& dets) {
  ordered_json doc;
  doc["sequence"] = dets.sequence;
  doc["frame_count"] = dets.frame_count;
  doc["image_height"] = dets.image_height;
  doc["image_width"] = dets.image_width;
  ordered_json frames = ordered_json::array();
  for (int f = 0; f < static_cast<int>(dets.frames.size()); ++f) {
    ordered_json fr;
    fr["frame"] = f;
    ordered_json list = ordered_json::array();
    for (const Detection& det : dets.frames[f]) {
      ordered_json d;
      d["bbox"] = {det.bbox.x1, det.bbox.y1, det.bbox.x2, det.bbox.y2};
      d["class_id"] = det.class_id;
      d["score"] = det.score;
      d["mask"] = {{"height", det.mask.height},
                   {"width", det.mask.width},
                   {"counts", det.mask.counts}};
      d["embedding"] = det.embedding;
      list.push_back(std::move(d));
    }
    fr["detections"] = std::move(list);
    frames.push_back(std::move(fr));
  }
  doc["frames"] = std::move(frames);
  atomic_write_file(path, doc.dump(2) + "\n");
}

namespace {

ordered_json ratio_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

ordered_json class_block(const ClassMetrics& m) {
  ordered_json block;
  block["smotsa"] = ratio_or_null(m.smotsa);
  block["motsa"] = ratio_or_null(m.motsa);
  block["hota"] = ratio_or_null(m.hota);
  block["ids"] = m.ids;
  block["tp"] = m.tp;
  block["fp"] = m.fp;
  block["fn"] = m.fn;
  block["soft_tp"] = m.soft_tp;
  return block;
}

}  // namespace

std::string report_to_json(const MetricsReport& report) {
  ordered_json doc;
  for (const auto& [class_id, metrics] : report.per_class) {
    doc[class_name(class_id)] = class_block(metrics);
  }
  doc["aggregate"] = class_block(report.aggregate);
  doc["tool"] = {{"name", kToolName}, {"version", kVersion}};
  return doc.dump(2) + "\n";
}

namespace {

ordered_json histogram_block(const Histogram& h) {
  ordered_json block;
  block["edges"] = h.edges;
  block["counts"] = h.counts;
  return block;
}

}  // namespace

std::string stats_to_json(const StatsReport& report) {
  ordered_json doc;
  doc["video_clips"] = report.video_clips;
  doc["total_frames"] = report.total_frames;
  doc["identities"] = report.identities;
  doc["instances"] = report.instances;
  doc["instances_per_frame"] = report.instances_per_frame;
  doc["size_histogram"] = histogram_block(report.size_histogram);
  doc["track_length_histogram"] = histogram_block(report.track_length_histogram);
  doc["tool"] = {{"name", kToolName}, {"version", kVersion}};
  return doc.dump(2) + "\n";
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw FormatError("cannot write " + tmp.string());
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw FormatError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  std::vector<std::string> lines;
  std::string current;
  for (char ch : raw) {
    if (ch == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

}  // namespace mots
