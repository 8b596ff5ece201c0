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

// yulelab <command> [--key value ...] [--config file.json]
//
// Flags are the command's parameters plus --seed, --parallelism, --format
// and --output. A config file is a flat JSON object with the same keys;
// flags given on the command line win. The JSON report goes to stdout.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yulelab/yulelab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitConfig = 1;

struct Owned {
  char* text = nullptr;
  ~Owned() { yl_string_free(text); }
};

Json CallJson(yl_status status, Owned& owned) {
  if (status != YL_OK) throw std::runtime_error(yl_last_error());
  return Json::parse(owned.text);
}

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;  // flags given
  std::string config_path;
};

std::string Describe(const Json& value) {
  return value.is_null() ? "unset" : value.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential-attachment and Yule-process simulation laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(yl_version()));

  std::string seed, parallelism, format, output;
  std::vector<std::unique_ptr<Command>> commands;
  try {
    Owned names;
    for (const auto& name : CallJson(yl_command_list(&names.text), names)) {
      auto cmd = std::make_unique<Command>();
      cmd->name = name.get<std::string>();
      cmd->app = app.add_subcommand(cmd->name);
      Owned defaults;
      const Json params =
          CallJson(yl_command_defaults(cmd->name.c_str(), &defaults.text), defaults);
      for (auto it = params.begin(); it != params.end(); ++it) {
        auto* values = &cmd->values;
        const std::string key = it.key();
        cmd->app->add_option_function<std::string>(
            "--" + key, [values, key](const std::string& v) { (*values)[key] = v; },
            "default " + Describe(it.value()));
      }
      cmd->app->add_option("--config", cmd->config_path, "flat JSON config file");
      cmd->app->add_option("--seed", seed, "64-bit master seed");
      cmd->app->add_option("--parallelism", parallelism, "worker threads");
      cmd->app->add_option("--format", format, "csv or json tables");
      cmd->app->add_option("-o,--output", output, "artifact directory");
      commands.push_back(std::move(cmd));
    }
  } catch (const std::exception& e) {
    std::cerr << "yulelab: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (c->app->parsed()) chosen = c.get();
  }
  if (chosen == nullptr) return kExitConfig;

  Json config = Json::object();
  if (!chosen->config_path.empty()) {
    std::ifstream in(chosen->config_path);
    if (!in) {
      std::cerr << "yulelab: cannot read " << chosen->config_path << "\n";
      return kExitConfig;
    }
    try {
      config = Json::parse(in);
    } catch (const Json::parse_error& e) {
      std::cerr << "yulelab: " << chosen->config_path << ": " << e.what() << "\n";
      return kExitConfig;
    }
    if (!config.is_object()) {
      std::cerr << "yulelab: " << chosen->config_path << ": expected a JSON object\n";
      return kExitConfig;
    }
    if (config.contains("command") && config["command"] != chosen->name) {
      std::cerr << "yulelab: " << chosen->config_path << " is for command "
                << config["command"].dump() << ", not " << chosen->name << "\n";
      return kExitConfig;
    }
  }
  config["command"] = chosen->name;
  for (const auto& [key, value] : chosen->values) config[key] = value;
  if (!seed.empty()) config["seed"] = seed;
  if (!parallelism.empty()) config["parallelism"] = parallelism;
  if (!format.empty()) config["format"] = format;
  if (!output.empty()) config["output"] = output;

  int exit_code = 0;
  Owned report;
  const std::string text = config.dump();
  if (yl_run_json(text.c_str(), &exit_code, &report.text) != YL_OK) {
    std::cerr << "yulelab: " << yl_last_error() << "\n";
    return 4;
  }
  std::cout << report.text << "\n";
  if (exit_code != 0) std::cerr << "yulelab: " << yl_last_error() << "\n";
  return exit_code;
}
