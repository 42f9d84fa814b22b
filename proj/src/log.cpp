// Copyright 2026 The dockmock Authors. All Rights Reserved.
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

#include "dockmock/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>

#include <cstdlib>

namespace dockmock::log {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("dockmock", sink);
    l->set_pattern("dockmock: [%l] %v");
    l->set_level(spdlog::level::off);
    return l;
  }();
  return instance;
}

void configure(std::string_view level) {
  if (level == "debug") {
    logger()->set_level(spdlog::level::debug);
  } else if (level == "info") {
    logger()->set_level(spdlog::level::info);
  } else {
    logger()->set_level(spdlog::level::off);
  }
}

void configure_from_env() {
  const char* value = std::getenv("DOCKMOCK_LOG");
  configure(value == nullptr ? "off" : value);
}

}  // namespace dockmock::log
