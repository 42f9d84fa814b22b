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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dockmock/variables.hpp"

namespace dockmock {

enum class Toolchain { Ruby, Go };

using Version = std::vector<int>;

/// Leading dotted number of `text`: "2.6.5-slim" -> {2, 6, 5}.
std::optional<Version> parse_version_prefix(std::string_view text);
std::string version_text(const Version& v);

struct VersionRequirement {
  /// One of = != > >= < <= ~>
  std::string op = "=";
  Version version;
};

/// `ruby '~> 2.7'` lines of a Gemfile; empty when there is none.
std::vector<VersionRequirement> gemfile_ruby_requirements(std::string_view gemfile);
/// The `go 1.x` directive of go.mod as a minimum requirement.
std::vector<VersionRequirement> gomod_go_requirements(std::string_view gomod);

/// Toolchain version shipped by an image, from a precise RUBY_VERSION /
/// GOLANG_VERSION variable or else from the tag of an official image.
std::optional<Version> image_toolchain_version(Toolchain tc, std::string_view image_ref,
                                               const VariableMap& vars);

/// Whether the toolchain is what the image is built around.
bool image_provides(Toolchain tc, std::string_view image_ref, const VariableMap& vars);

/// `image` is a version prefix standing for every release below it, so
/// "2.6" covers 2.6.0 up to (excluding) 2.7. Returns the first requirement
/// no such release can satisfy.
std::optional<VersionRequirement> unsatisfiable_requirement(
    const Version& image, const std::vector<VersionRequirement>& reqs);

std::string_view toolchain_name(Toolchain tc);
/// "Gemfile" or "go.mod".
std::string_view manifest_name(Toolchain tc);

}  // namespace dockmock
