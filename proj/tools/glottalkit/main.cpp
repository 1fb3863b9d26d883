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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "glottalkit/error.hpp"
#include "run_config.hpp"

namespace {

// Diagnostics stay on one line even when a message embeds newlines.
std::string OneLine(std::string s) {
  for (char& ch : s) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glottalkit: glottal-source analysis and voice-quality classification"};
  app.name("glottalkit");
  glottalkit::cli::RunConfig cfg;
  glottalkit::cli::Register(app, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = OneLine(e.what());
    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
      msg = std::string("unknown subcommand '") + argv[1] + "'";
    }
    std::fprintf(stderr, "glottalkit: error: %s\n%s", msg.c_str(), app.help().c_str());
    return 2;
  }

  try {
    glottalkit::cli::Finalize(cfg);
    return glottalkit::cli::Dispatch(cfg);
  } catch (const glottalkit::Error& e) {
    std::fprintf(stderr, "glottalkit: error [%s]: %s\n", glottalkit::ErrorCodeName(e.code()),
                 OneLine(e.what()).c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "glottalkit: error: %s\n", OneLine(e.what()).c_str());
  }
  return 1;
}
