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

#ifndef GLOTTALKIT_TOOLS_COMMANDS_HPP_
#define GLOTTALKIT_TOOLS_COMMANDS_HPP_

#include "run_config.hpp"

namespace glottalkit::cli {

// Runs cfg.subcommand; returns the process exit code. Library errors
// propagate as glottalkit::Error.
int Dispatch(const RunConfig& cfg);

}  // namespace glottalkit::cli

#endif  // GLOTTALKIT_TOOLS_COMMANDS_HPP_
