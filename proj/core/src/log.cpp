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

#include "glottalkit/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace glottalkit {
namespace {

LogLevel FromEnv() {
  const char* env = std::getenv("GLOTTALKIT_LOG");
  if (env == nullptr) return LogLevel::kWarn;
  const std::string v(env);
  if (v == "error") return LogLevel::kError;
  if (v == "info") return LogLevel::kInfo;
  if (v == "debug") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

std::atomic<int>& Threshold() {
  static std::atomic<int> level{static_cast<int>(FromEnv())};
  return level;
}

const char* Tag(LogLevel l) {
  switch (l) {
    case LogLevel::kError:
      return "error";
    case LogLevel::kWarn:
      return "warn";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kDebug:
      return "debug";
  }
  return "?";
}

}  // namespace

LogLevel CurrentLogLevel() { return static_cast<LogLevel>(Threshold().load()); }
void SetLogLevel(LogLevel level) { Threshold() = static_cast<int>(level); }
bool LogEnabled(LogLevel level) { return static_cast<int>(level) <= Threshold().load(); }

void Log(LogLevel level, std::string_view message) {
  if (!LogEnabled(level)) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "[glottalkit %s] %.*s\n", Tag(level), static_cast<int>(message.size()),
               message.data());
}

}  // namespace glottalkit
