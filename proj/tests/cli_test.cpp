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
// End-to-end tests that drive the installed binary exactly like a user
// would: through argv, files, and exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "motskit/formats.hpp"
#include "test_util.hpp"

#ifndef MOTSKIT_CLI_PATH
#error "MOTSKIT_CLI_PATH must point at the motskit binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using testutil::rect_mask;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("motskit-cli-" +
            std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()
                      ->current_test_info()
                      ->name());
    fs::create_directories(dir_);
  }

  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path file(const std::string& name) const { return dir_ / name; }

  void write_text(const fs::path& path, const std::string& text) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    ASSERT_TRUE(out.is_open());
    out << text;
  }

  std::string read_text(const fs::path& path) const {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  }

  RunResult run(const std::string& args) {
    const fs::path out_path = file("stdout." + std::to_string(run_index_));
    const fs::path err_path = file("stderr." + std::to_string(run_index_));
    ++run_index_;
    const std::string cmd = std::string("\"") + MOTSKIT_CLI_PATH + "\" " +
                            args + " > \"" + out_path.string() + "\" 2> \"" +
                            err_path.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_text(out_path);
    result.err = read_text(err_path);
    return result;
  }

  // Every failure path must emit one machine-readable JSON line.
  static std::string error_category(const RunResult& result) {
    const ordered_json doc = ordered_json::parse(result.err);
    return doc.at("error").at("category").get<std::string>();
  }

  fs::path dir_;
  int run_index_ = 0;
};

TEST_F(CliTest, HelpAndVersionSucceed) {
  const RunResult help = run("--help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("codec"), std::string::npos);
  EXPECT_NE(help.out.find("eval"), std::string::npos);
  EXPECT_NE(help.out.find("pipeline"), std::string::npos);

  const RunResult version = run("--version");
  EXPECT_EQ(version.code, 0);
  EXPECT_NE(version.out.find("motskit 0.1.0"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwoWithJsonDiagnostics) {
  const RunResult none = run("");
  EXPECT_EQ(none.code, 2);
  EXPECT_EQ(error_category(none), "usage");

  EXPECT_EQ(run("eval --gt only.txt").code, 2);
  EXPECT_EQ(run("codec encode").code, 2);
  EXPECT_EQ(run("synth --frames 0 --out x").code, 2);
  EXPECT_EQ(run("eval --gt a --pred b --classes bicycle").code, 2);
  const RunResult flag = run("stats --bogus-flag in.txt");
  EXPECT_EQ(flag.code, 2);
  EXPECT_EQ(error_category(flag), "usage");
}

TEST_F(CliTest, CodecRoundTripsThroughFiles) {
  const std::string mask_text = "0110\n0110\n0000\n1111\n";
  write_text(file("mask.txt"), mask_text);

  const fs::path enc = file("enc.json");
  EXPECT_EQ(run("codec encode \"" + file("mask.txt").string() + "\" --out \"" +
                enc.string() + "\"")
                .code,
            0);
  const ordered_json doc = ordered_json::parse(read_text(enc));
  EXPECT_EQ(doc.at("height").get<int>(), 4);
  EXPECT_EQ(doc.at("width").get<int>(), 4);
  EXPECT_FALSE(doc.at("counts").get<std::string>().empty());

  const fs::path dec = file("dec.txt");
  EXPECT_EQ(run("codec decode \"" + enc.string() + "\" --out \"" +
                dec.string() + "\"")
                .code,
            0);
  EXPECT_EQ(read_text(dec), mask_text);

  // A fully set mask has the canonical two-run encoding.
  write_text(file("full.txt"), "1111\n1111\n1111\n1111\n");
  const RunResult full =
      run("codec encode \"" + file("full.txt").string() + "\"");
  EXPECT_EQ(full.code, 0);
  EXPECT_EQ(ordered_json::parse(full.out).at("counts").get<std::string>(),
            "0`0");
}

TEST_F(CliTest, CodecFailuresUseInputFormatAndInvariantCodes) {
  write_text(file("bad.json"), "not json at all");
  const RunResult bad_json =
      run("codec decode \"" + file("bad.json").string() + "\"");
  EXPECT_EQ(bad_json.code, 3);
  EXPECT_EQ(error_category(bad_json), "input-format");

  write_text(file("bad-mask.txt"), "0120\n");
  const RunResult bad_mask =
      run("codec encode \"" + file("bad-mask.txt").string() + "\"");
  EXPECT_EQ(bad_mask.code, 3);
  EXPECT_EQ(error_category(bad_mask), "input-format");

  write_text(file("bad-counts.json"),
             R"({"height":4,"width":4,"counts":"zz"})");
  const RunResult bad_counts =
      run("codec decode \"" + file("bad-counts.json").string() + "\"");
  EXPECT_EQ(bad_counts.code, 3);

  const RunResult missing =
      run("codec encode \"" + file("absent.txt").string() + "\"");
  EXPECT_EQ(missing.code, 4);
  EXPECT_EQ(error_category(missing), "invariant");
}

TEST_F(CliTest, SynthWritesTheFixtureLayoutDeterministically) {
  const std::string spec =
      "synth --seed 3 --frames 4 --objects 3 --height 64 --width 64 "
      "--noise 1 --out ";
  const fs::path a = file("a");
  const fs::path b = file("b");
  EXPECT_EQ(run(spec + "\"" + a.string() + "\"").code, 0);
  EXPECT_EQ(run(spec + "\"" + b.string() + "\"").code, 0);

  for (const char* name : {"gt.txt", "detections.json", "scene.json"}) {
    EXPECT_TRUE(fs::exists(a / name)) << name;
  }
  for (int f = 0; f < 4; ++f) {
    char frame[16];
    std::snprintf(frame, sizeof frame, "%06d", f);
    EXPECT_TRUE(fs::exists(a / "depth" / (std::string(frame) + ".pfm")));
    EXPECT_TRUE(fs::exists(a / "flow" / (std::string(frame) + ".flo")));
  }

  EXPECT_EQ(read_text(a / "gt.txt"), read_text(b / "gt.txt"));
  EXPECT_EQ(read_text(a / "detections.json"),
            read_text(b / "detections.json"));

  const ordered_json meta = ordered_json::parse(read_text(a / "scene.json"));
  EXPECT_EQ(meta.at("sequence").get<std::string>(), "synth-3");
  EXPECT_EQ(meta.at("seed").get<int>(), 3);
  const auto ids = meta.at("det_track_ids");
  ASSERT_EQ(ids.size(), 4u);
  EXPECT_EQ(ids.at(0).size(), 3u);
}

TEST_F(CliTest, PipelineThenEvalScoresPerfectlyOnCleanDetections) {
  const fs::path scene = file("scene");
  ASSERT_EQ(run("synth --seed 11 --frames 4 --objects 4 --height 64 "
                "--width 64 --noise 0 --out \"" +
                scene.string() + "\"")
                .code,
            0);

  const fs::path pred = file("pred.txt");
  ASSERT_EQ(run("pipeline --detections \"" +
                (scene / "detections.json").string() + "\" --depth \"" +
                (scene / "depth").string() + "\" --jobs 2 --out \"" +
                pred.string() + "\"")
                .code,
            0);

  const RunResult eval = run("eval --gt \"" + (scene / "gt.txt").string() +
                             "\" --pred \"" + pred.string() +
                             "\" --percent --out \"" +
                             file("report.json").string() + "\"");
  ASSERT_EQ(eval.code, 0) << eval.err;

  std::vector<std::string> lines;
  std::istringstream in(eval.out);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u) << eval.out;
  EXPECT_NE(lines[0].find("sMOTSA"), std::string::npos);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_NE(lines[i].find("100.00"), std::string::npos) << lines[i];
    EXPECT_EQ(lines[i].find("n/a"), std::string::npos) << lines[i];
  }

  const ordered_json report =
      ordered_json::parse(read_text(file("report.json")));
  EXPECT_DOUBLE_EQ(report.at("car").at("smotsa").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(report.at("pedestrian").at("hota").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(report.at("aggregate").at("motsa").get<double>(), 1.0);
  EXPECT_EQ(report.at("aggregate").at("ids").get<int>(), 0);
  EXPECT_EQ(report.at("tool").at("name").get<std::string>(), "motskit");
}

TEST_F(CliTest, EvalReportsNullRatiosForClassesWithoutGroundTruth) {
  const mots::SequenceAnnotation ann = testutil::make_annotation(
      "clip", 2, 8, 8,
      {{0, 1, mots::kClassCar, rect_mask(8, 8, 0, 0, 4, 4)},
       {1, 1, mots::kClassCar, rect_mask(8, 8, 1, 0, 5, 4)}});
  mots::save_mots_file(file("gt.txt"), ann);
  mots::save_mots_file(file("pred.txt"), ann);

  const RunResult eval =
      run("eval --gt \"" + file("gt.txt").string() + "\" --pred \"" +
          file("pred.txt").string() + "\" --out \"" +
          file("report.json").string() + "\"");
  ASSERT_EQ(eval.code, 0) << eval.err;
  // The table shows n/a for the empty class instead of inventing a number.
  EXPECT_NE(eval.out.find("n/a"), std::string::npos);

  const ordered_json report =
      ordered_json::parse(read_text(file("report.json")));
  EXPECT_TRUE(report.at("pedestrian").at("smotsa").is_null());
  EXPECT_TRUE(report.at("pedestrian").at("hota").is_null());
  EXPECT_DOUBLE_EQ(report.at("car").at("smotsa").get<double>(), 1.0);
}

TEST_F(CliTest, MissingPathsExitFourMalformedFilesExitThree) {
  const RunResult missing =
      run("eval --gt \"" + file("nope.txt").string() + "\" --pred \"" +
          file("also-nope.txt").string() + "\"");
  EXPECT_EQ(missing.code, 4);
  EXPECT_EQ(error_category(missing), "invariant");

  EXPECT_EQ(run("pipeline --detections \"" + file("no.json").string() +
                "\" --depth \"" + dir_.string() + "\" --out \"" +
                file("out.txt").string() + "\"")
                .code,
            4);

  write_text(file("short.txt"), "0 1001 1 4 4\n");
  write_text(file("ok.txt"), "0 1001 1 4 4 0`0\n");
  const RunResult malformed =
      run("eval --gt \"" + file("short.txt").string() + "\" --pred \"" +
          file("ok.txt").string() + "\"");
  EXPECT_EQ(malformed.code, 3);
  EXPECT_EQ(error_category(malformed), "input-format");
}

TEST_F(CliTest, StatsPrintsTheProtocolTable) {
  std::vector<testutil::Instance> instances;
  for (int f = 0; f < 10; ++f) {
    instances.push_back({f, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)});
    instances.push_back(
        {f, 2, mots::kClassPedestrian, rect_mask(16, 16, 8, 8, 12, 12)});
  }
  mots::save_mots_file(
      file("0000.txt"), testutil::make_annotation("0000", 10, 16, 16, instances));
  mots::save_mots_file(
      file("0001.txt"), testutil::make_annotation("0001", 10, 16, 16, instances));

  const RunResult stats =
      run("stats \"" + file("0000.txt").string() + "\" \"" +
          file("0001.txt").string() + "\" --stride 5 --out \"" +
          file("stats.json").string() + "\"");
  ASSERT_EQ(stats.code, 0) << stats.err;
  EXPECT_NE(stats.out.find("Clips | Frames | Identities | Instances | Ins./Fr."),
            std::string::npos);
  EXPECT_NE(stats.out.find("\n2 | 4 | 4 | 8 | 2.00"), std::string::npos);

  const ordered_json doc = ordered_json::parse(read_text(file("stats.json")));
  EXPECT_EQ(doc.at("video_clips").get<int>(), 2);
  EXPECT_EQ(doc.at("total_frames").get<int>(), 4);
  EXPECT_EQ(doc.at("identities").get<int>(), 4);
  EXPECT_EQ(doc.at("instances").get<int>(), 8);
}

}  // namespace
