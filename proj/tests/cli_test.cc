// Copyright 2026 The ordsup Authors.
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


// Runs the ordsup binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ordsup/io.h"
#include "ordsup/trainer.h"

namespace ordsup {
namespace {

namespace fs = std::filesystem;

const std::string kCli = ORDSUP_CLI_PATH;
const std::string kData = ORDSUP_TEST_DATA;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult Run(const std::string& args) {
  RunResult r;
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json Summary(const RunResult& r) {
  return nlohmann::json::parse(r.out);
}

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("ordsup_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& f) const {
    return (path_ / f).string();
  }

 private:
  fs::path path_;
};

TEST_CASE("usage errors exit with 1") {
  CHECK(Run("").code == 1);
  CHECK(Run("bogus").code == 1);
  CHECK(Run("permset --n-steps 4 --size 4 --out /tmp/x.json").code == 1);
  CHECK(Run("gradcheck --loss l1 --seed 1").code == 1);
  CHECK(Run("--help").code == 0);
}

TEST_CASE("data errors exit with 2 and leave no output") {
  ScratchDir dir("errors");
  CHECK(Run("permset --n-steps 3 --size 7 --seed 1 --out " + dir / "p.json")
            .code == 2);
  CHECK_FALSE(fs::exists(dir / "p.json"));
  CHECK(Run("ingest --in " + dir / "missing.jsonl" + " --out " + dir / "o.jsonl")
            .code == 2);
  CHECK_FALSE(fs::exists(dir / "o.jsonl"));
  CHECK(Run("gen --task permclass --in " + kData + "/recipes_small.jsonl" +
            " --permset " + dir / "missing.json" + " --seed 1 --out " +
            dir / "e.jsonl")
            .code == 2);
  CHECK_FALSE(fs::exists(dir / "e.jsonl"));
}

TEST_CASE("ingest reports skips and is idempotent") {
  ScratchDir dir("ingest");
  const std::string args = "ingest --in " + kData +
                           "/recipes_small.jsonl --prepend-ingredients "
                           "--min-steps 4 --out ";
  const RunResult a = Run(args + dir / "a.jsonl");
  REQUIRE(a.code == 0);
  const auto s = Summary(a);
  CHECK(s["read"] == 3);
  CHECK(s["malformed"] == 2);
  CHECK(s["written"] == 2);
  CHECK(s["stats"]["step_count_histogram"]["6"] == 1);
  CHECK(s["stats"]["step_count_histogram"]["5"] == 1);
  const RunResult b = Run(args + dir / "b.jsonl");
  CHECK(b.code == 0);
  CHECK(ReadFile(dir / "a.jsonl") == ReadFile(dir / "b.jsonl"));
  const auto meta = nlohmann::json::parse(ReadFile(dir / "a.jsonl.meta.json"));
  CHECK(meta["tool"] == "ordsup");
  CHECK(meta["command"] == "ingest");
}

TEST_CASE("gen counts step-count mismatches per record") {
  ScratchDir dir("gen");
  REQUIRE(Run("permset --n-steps 5 --size 10 --seed 1 --out " + dir / "p.json")
              .code == 0);
  const RunResult r =
      Run("gen --task permclass --in " + kData + "/recipes_small.jsonl" +
          " --permset " + dir / "p.json" + " --seed 3 --out " + dir / "e.jsonl");
  REQUIRE(r.code == 0);
  const auto s = Summary(r);
  CHECK(s["written"] == 2);
  CHECK(s["skipped_step_count"] == 1);
  CHECK(s["malformed"] == 2);

  const RunResult sc = Run("gen --task skipclip --in " + kData +
                           "/recipes_small.jsonl --K 2 --M 3 --seed 3 --out " +
                           dir / "s.jsonl");
  REQUIRE(sc.code == 0);
  CHECK(Summary(sc)["written"] == 2);
  CHECK(Summary(sc)["skipped_infeasible"] == 1);
}

TEST_CASE("train, eval and a zero learning rate") {
  ScratchDir dir("train");
  REQUIRE(Run("synth --count 400 --n-steps 4 --seed 2 --out " + dir / "r.jsonl")
              .code == 0);
  REQUIRE(Run("permset --n-steps 4 --size 6 --seed 2 --out " + dir / "p.json")
              .code == 0);
  REQUIRE(Run("gen --task permclass --in " + dir / "r.jsonl" + " --permset " +
              dir / "p.json" + " --seed 2 --out " + dir / "e.jsonl")
              .code == 0);
  const std::string base = "train --task perm_class --examples " +
                           dir / "e.jsonl" + " --permset " + dir / "p.json" +
                           " --seed 2 ";

  const RunResult t = Run(base + "--lr 0.05 --warmup 0 --out-model " +
                          dir / "m.json" + " --out-log " + dir / "log.jsonl");
  REQUIRE(t.code == 0);
  const auto s = Summary(t);
  CHECK(s["steps"] == 13);
  CHECK(s["last_loss"].get<double>() < s["first_loss"].get<double>());
  const RunResult e = Run("eval --model " + dir / "m.json" + " --examples " +
                          dir / "e.jsonl" + " --permset " + dir / "p.json");
  REQUIRE(e.code == 0);
  CHECK(Summary(e)["count"] == 400);

  REQUIRE(Run(base + "--lr 0 --out-model " + dir / "zero.json").code == 0);
  TrainConfig cfg;
  cfg.seed = 2;
  CHECK(ReadCheckpoint(dir / "zero.json") ==
        InitModel(TaskKind::kPermClass, 4, 6, cfg));

  // Examples generated against a different set are refused.
  REQUIRE(Run("permset --n-steps 4 --size 6 --seed 3 --out " + dir / "q.json")
              .code == 0);
  CHECK(Run("train --task perm_class --examples " + dir / "e.jsonl" +
            " --permset " + dir / "q.json" + " --seed 2 --out-model " +
            dir / "bad.json")
            .code == 2);
  CHECK(Run("train --task perm_class --examples " + dir / "e.jsonl" +
            " --out-model " + dir / "m2.json")
            .code == 1);
}

TEST_CASE("gradcheck and score") {
  for (const char* loss : {"mse", "ce", "hinge"}) {
    const RunResult r = Run(std::string("gradcheck --loss ") + loss +
                            " --seed 4");
    CHECK(r.code == 0);
    CHECK(Summary(r)["max_rel_error"].get<double>() < 1e-4);
  }
  const RunResult s = Run("score --gold " + kData + "/flower_gold.tsv --pred " +
                          kData + "/flower_baseline.tsv");
  REQUIRE(s.code == 0);
  const auto j = Summary(s);
  CHECK(j["location_acc"].get<double>() == doctest::Approx(5.0 / 7.0));
  CHECK(j["status_acc"].get<double>() == doctest::Approx(4.0 / 6.0));
  CHECK(j["cat1_acc"] == 0.0);
  CHECK(Run("score --format jsonl --gold " + kData +
            "/flower_gold.jsonl --pred " + kData + "/flower_gold.jsonl")
            .code == 0);
}

}  // namespace
}  // namespace ordsup
