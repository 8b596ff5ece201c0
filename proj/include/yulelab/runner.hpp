// Copyright 2026 The yulelab Authors
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

// Experiment configuration and dispatch behind the command-line tool.
//
// A configuration is a flat JSON object. The keys `command`, `seed`,
// `parallelism`, `format` and `output` are common; everything else is a
// command parameter and must be one the command declares. Resolved values
// (defaults filled in) are embedded in every report. `output` is left out
// of the embedded copy so a run's bytes do not depend on where it is
// written.

#ifndef YULELAB_RUNNER_HPP_
#define YULELAB_RUNNER_HPP_

#include <string>
#include <vector>

#include <json.hpp>

namespace yulelab {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;

struct ExperimentConfig {
  std::string command;
  Json params = Json::object();  // resolved, defaults included
  std::uint64_t seed = 0;
  unsigned parallelism = 1;
  std::string format = "csv";  // csv | json
  std::string output;          // directory; empty: nothing written
};

const std::vector<std::string>& CommandNames();

// Declared parameters of a command with their defaults.
Json CommandDefaults(const std::string& command);

// Validates names and types and fills defaults. Throws Error(kConfig) naming
// the offending key.
ExperimentConfig ResolveConfig(const Json& flat);

// `overrides` wins key by key over `base`.
Json MergeFlat(const Json& base, const Json& overrides);

struct Artifact {
  std::string name;
  std::string content;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;      // diagnostic: failed checks or the error
  Json report;              // also emitted as the report.json artifact
  std::vector<Artifact> artifacts;
};

// Never throws; errors become exit codes with `message` set. Writes the
// artifacts under config.output when it is set.
RunOutcome Run(const ExperimentConfig& config);
RunOutcome RunFlat(const Json& flat);

}  // namespace yulelab

#endif  // YULELAB_RUNNER_HPP_
