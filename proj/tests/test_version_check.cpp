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

#include <gtest/gtest.h>

#include <random>

#include "dockmock/version_check.hpp"

namespace dockmock {
namespace {

int cmp(const Version& a, const Version& b) {
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    int x = i < a.size() ? a[i] : 0;
    int y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

bool satisfies(const Version& c, const VersionRequirement& r) {
  const Version& v = r.version;
  if (r.op == "=") return std::equal(v.begin(), v.end(), c.begin());
  if (r.op == ">=") return cmp(c, v) >= 0;
  if (r.op == ">") return cmp(c, v) > 0;
  if (r.op == "<=") return cmp(c, v) <= 0;
  if (r.op == "<") return cmp(c, v) < 0;
  if (r.op == "~>") {
    Version cap(v.begin(), v.end() - (v.size() > 1 ? 1 : 0));
    ++cap.back();
    return cmp(c, v) >= 0 && cmp(c, cap) < 0;
  }
  return true;
}

// Concrete three-part releases a floating image tag may stand for.
std::vector<Version> releases(const Version& image) {
  std::vector<Version> out;
  if (image.size() >= 3) return {image};
  for (int a = 0; a < 15; ++a) {
    if (image.size() == 2) {
      out.push_back({image[0], image[1], a});
      continue;
    }
    for (int b = 0; b < 15; ++b) out.push_back({image[0], a, b});
  }
  return out;
}

TEST(VersionCheck, ParsePrefix) {
  EXPECT_EQ(parse_version_prefix("2.7.1-alpine"), (Version{2, 7, 1}));
  EXPECT_EQ(parse_version_prefix("1.15"), (Version{1, 15}));
  EXPECT_EQ(parse_version_prefix("3."), (Version{3}));
  EXPECT_FALSE(parse_version_prefix("latest").has_value());
  EXPECT_EQ(version_text({1, 15, 2}), "1.15.2");
}

TEST(VersionCheck, Gemfile) {
  auto reqs = gemfile_ruby_requirements("source 'https://rubygems.org'\nruby '2.7.1'\ngem 'rails'\n");
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].op, "=");
  EXPECT_EQ(reqs[0].version, (Version{2, 7, 1}));
  auto multi = gemfile_ruby_requirements("ruby \">= 2.5\", \"< 3.0\"\n");
  ASSERT_EQ(multi.size(), 2u);
  EXPECT_EQ(multi[1].op, "<");
  EXPECT_TRUE(gemfile_ruby_requirements("gem 'ruby-progressbar'\n").empty());
  EXPECT_TRUE(gemfile_ruby_requirements("# ruby '2.7'\n").empty());
}

TEST(VersionCheck, GoMod) {
  auto reqs = gomod_go_requirements("module example.com/app\n\ngo 1.15\n\nrequire x v1.0.0\n");
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].op, ">=");
  EXPECT_EQ(reqs[0].version, (Version{1, 15}));
  EXPECT_TRUE(gomod_go_requirements("module m\n").empty());
}

TEST(VersionCheck, ImageVersion) {
  VariableMap vars;
  EXPECT_EQ(image_toolchain_version(Toolchain::Ruby, "ruby:2.6-slim", vars), (Version{2, 6}));
  EXPECT_EQ(image_toolchain_version(Toolchain::Go, "golang:1.13", vars), (Version{1, 13}));
  EXPECT_EQ(image_toolchain_version(Toolchain::Go, "docker.io/library/golang:1.15-alpine", vars),
            (Version{1, 15}));
  EXPECT_FALSE(image_toolchain_version(Toolchain::Ruby, "ruby:latest", vars).has_value());
  EXPECT_FALSE(image_toolchain_version(Toolchain::Ruby, "node:12", vars).has_value());
  vars.set_precise("RUBY_VERSION", "2.7.2");
  EXPECT_EQ(image_toolchain_version(Toolchain::Ruby, "ruby:latest", vars), (Version{2, 7, 2}));
  EXPECT_TRUE(image_provides(Toolchain::Ruby, "custom/img", vars));
  EXPECT_FALSE(image_provides(Toolchain::Go, "custom/img", vars));
}

TEST(VersionCheck, Examples) {
  EXPECT_TRUE(unsatisfiable_requirement({2, 6}, {{"=", {2, 7}}}).has_value());
  EXPECT_FALSE(unsatisfiable_requirement({2, 7}, {{"=", {2, 7, 1}}}).has_value());
  EXPECT_TRUE(unsatisfiable_requirement({1, 13}, {{">=", {1, 15}}}).has_value());
  EXPECT_FALSE(unsatisfiable_requirement({1, 15}, {{">=", {1, 13}}}).has_value());
  EXPECT_FALSE(unsatisfiable_requirement({1, 15}, {{">=", {1, 15, 3}}}).has_value());
  EXPECT_FALSE(unsatisfiable_requirement({}, {{"=", {9}}}).has_value());
}

TEST(VersionCheck, AgreesWithEnumeration) {
  std::mt19937 rng(31);
  const std::vector<std::string> ops = {"=", ">=", ">", "<=", "<", "~>", "!="};
  for (int iter = 0; iter < 5000; ++iter) {
    Version image;
    int len = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < len; ++i) image.push_back(static_cast<int>(rng() % 4));
    std::vector<VersionRequirement> reqs;
    int n = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < n; ++k) {
      VersionRequirement r;
      r.op = ops[rng() % ops.size()];
      int vlen = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < vlen; ++i) r.version.push_back(static_cast<int>(rng() % 4));
      reqs.push_back(r);
    }
    // Each requirement is checked on its own against the release set.
    bool expected_conflict = false;
    for (const auto& r : reqs) {
      bool any = false;
      for (const auto& c : releases(image)) any = any || satisfies(c, r);
      expected_conflict = expected_conflict || !any;
    }
    std::string desc = version_text(image);
    for (const auto& r : reqs) desc += " " + r.op + version_text(r.version);
    EXPECT_EQ(unsatisfiable_requirement(image, reqs).has_value(), expected_conflict) << desc;
  }
}

}  // namespace
}  // namespace dockmock
