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

#include <ostream>

#include "dockmock/prior.hpp"

namespace dockmock {

/// Entry point of the `dockmock` tool. Returns 0 when nothing reaches the
/// --fail-on threshold, 1 when something does, 2 on usage or I/O errors.
/// `runtime` serves `capture`; nullptr selects the docker CLI.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            RuntimeInvoker* runtime = nullptr);

}  // namespace dockmock
