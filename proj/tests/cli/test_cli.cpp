/*
Copyright 2026 The glottalkit Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Drives the glottalkit executable as a subprocess.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string("\"") + GLOTTALKIT_CLI_PATH + "\" " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path Scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("glottalkit_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::set<std::string> Overrides(const std::string& text) {
  static const std::regex re(R"(--(qcp|zff|spectral|wav|svm|cnn|synth)\.[a-z_0-9]+)");
  std::set<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator();
       ++it) {
    out.insert(it->str());
  }
  return out;
}

// Every regular file under a, keyed by relative path, compared by content.
void CheckSameTree(const fs::path& a, const fs::path& b) {
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), a);
    INFO(rel.string());
    REQUIRE(fs::exists(b / rel));
    CHECK(Slurp(e.path()) == Slurp(b / rel));
    ++files;
  }
  CHECK(files > 0);
}

const char* kSmallCorpus = "--synth.speakers 3 --synth.repetitions 1 --synth.duration 0.3";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help lists the documented overrides") {
    const auto help = Cli("--help");
    CHECK(help.status == 0);
    const auto listed = Overrides(help.output);
    const auto documented = Overrides(Slurp(GLOTTALKIT_README_PATH));
    REQUIRE_FALSE(documented.empty());
    for (const auto& o : documented) {
      INFO(o);
      CHECK(listed.count(o) == 1);
    }
    for (const auto& o : listed) {
      INFO(o);
      CHECK(documented.count(o) == 1);
    }
    for (const char* sub : {"zff", "qcp", "features", "embed-validate", "synth", "train",
                            "evaluate", "loso", "layer-sweep"}) {
      CHECK(help.output.find(sub) != std::string::npos);
    }
  }

  TEST_CASE("usage errors exit nonzero") {
    CHECK(Cli("").status != 0);
    CHECK(Cli("extract").status != 0);
    CHECK(Cli("loso").status != 0);  // missing --out-dir and input
    CHECK(Cli("loso --out-dir x --feature mel81").status != 0);
    const auto dir = Scratch("errors");
    const auto r = Cli("features --manifest " + (dir / "nope.csv").string() + " --out-dir " +
                       (dir / "o").string());
    CHECK(r.status != 0);
    CHECK(r.output.find("nope.csv") != std::string::npos);
  }

  TEST_CASE("synth, features, train, evaluate, loso") {
    const auto dir = Scratch("e2e");
    const auto corpus = dir / "corpus";
    REQUIRE(Cli("synth --out-dir " + corpus.string() + " " + kSmallCorpus).status == 0);
    const auto manifest = corpus / "manifest.csv";
    REQUIRE(fs::exists(manifest));
    CHECK(fs::exists(corpus / "gci_closures.csv"));

    const auto feats = dir / "feats";
    REQUIRE(Cli("features --manifest " + manifest.string() + " --out-dir " + feats.string() +
                " --variant speech-qcp")
                .status == 0);
    const auto csv = feats / "features_mel80.csv";
    REQUIRE(fs::exists(csv));
    const auto model_dir = dir / "model";
    REQUIRE(Cli("train --features " + csv.string() + " --out-dir " + model_dir.string()).status ==
            0);
    const auto eval = dir / "eval";
    REQUIRE(Cli("evaluate --features " + csv.string() + " --model " +
                (model_dir / "model.vqmdl").string() + " --out-dir " + eval.string())
                .status == 0);
    CHECK(fs::exists(eval / "predictions.csv"));

    // LOSO from the manifest (deriving speech-qcp) and from the cached
    // features give the same result.
    const auto l1 = dir / "loso_manifest";
    const auto l2 = dir / "loso_features";
    REQUIRE(Cli("loso --manifest " + manifest.string() + " --variant speech-qcp --out-dir " +
                l1.string())
                .status == 0);
    REQUIRE(Cli("loso --features " + csv.string() + " --out-dir " + l2.string()).status == 0);
    const auto j = nlohmann::json::parse(Slurp(l1 / "summary.json"));
    CHECK(j.at("folds") == 3);
    CHECK(j.at("variant") == "speech-qcp");
    CHECK(Slurp(l1 / "folds.csv") == Slurp(l2 / "folds.csv"));
  }

  TEST_CASE("outputs are byte-identical across runs and worker counts") {
    const auto dir = Scratch("determinism");
    for (const char* run : {"a", "b"}) {
      REQUIRE(Cli("synth --modality both --seed 4 --out-dir " + (dir / run / "corpus").string() +
                  " " + kSmallCorpus)
                  .status == 0);
    }
    CheckSameTree(dir / "a" / "corpus", dir / "b" / "corpus");
    const auto manifest = (dir / "a" / "corpus" / "manifest.csv").string();
    CHECK(Cli("loso --manifest " + manifest + " --variant nsa-zff --workers 1 --out-dir " +
              (dir / "a" / "loso").string())
              .status == 0);
    CHECK(Cli("loso --manifest " + manifest + " --variant nsa-zff --workers 4 --out-dir " +
              (dir / "b" / "loso").string())
              .status == 0);
    CheckSameTree(dir / "a" / "loso", dir / "b" / "loso");
  }

  TEST_CASE("embed-validate on the fixtures") {
    const fs::path fx = fs::path(GLOTTALKIT_FIXTURES_DIR) / "vqemb1";
    const auto expected = nlohmann::json::parse(Slurp(fx / "expected.json"));
    std::string all, ok_only;
    for (const auto& e : fs::directory_iterator(fx)) {
      if (e.path().extension() != ".vqemb") continue;
      all += " \"" + e.path().string() + "\"";
      if (e.path().filename().string().rfind("ok_", 0) == 0) {
        ok_only += " \"" + e.path().string() + "\"";
      }
    }
    CHECK(Cli("embed-validate" + ok_only).status == 0);
    const auto r = Cli("embed-validate" + all);
    CHECK(r.status != 0);
    const std::map<std::string, std::string> tag{{"LayerDimMismatch", "layer/dim mismatch"},
                                                 {"Truncated", "truncated payload"},
                                                 {"NonFinite", "non-finite value"},
                                                 {"BadMagic", "bad magic"},
                                                 {"Parse", "parse error"}};
    for (const auto& [name, outcome] : expected.items()) {
      INFO(name);
      const std::string path = (fx / name).string();
      const std::string line = outcome == "ok" ? "ok " + path + " "
                                               : "invalid [" + tag.at(outcome) + "] " + path + ":";
      CHECK(r.output.find(line) != std::string::npos);
    }
  }
}
