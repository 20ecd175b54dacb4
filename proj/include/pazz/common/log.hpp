// Copyright 2026 The Pazz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAZZ_COMMON_LOG_HPP_
#define PAZZ_COMMON_LOG_HPP_

#include <cstdlib>
#include <memory>
#include <string>

#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace pazz {

// Process-wide logger writing to stderr. Verbosity comes from the PAZZ_LOG
// environment variable (trace, debug, info, warn, error, off); default warn.
inline spdlog::logger& Log() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto created = spdlog::stderr_color_mt("pazz");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("PAZZ_LOG"); env != nullptr) {
      level = spdlog::level::from_str(env);
    }
    created->set_level(level);
    created->set_pattern("[%l] %v");
    return created;
  }();
  return *logger;
}

}  // namespace pazz

#endif  // PAZZ_COMMON_LOG_HPP_
