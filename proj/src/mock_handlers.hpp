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

#include "dockmock/mocks.hpp"

namespace dockmock::handlers {

#define DOCKMOCK_HANDLER(name) \
  MockResult name(const CommandCall& call, Context& ctx, ShellSession& session)

// Complete mocks.
DOCKMOCK_HANDLER(cd);
DOCKMOCK_HANDLER(chmod);
DOCKMOCK_HANDLER(cp);
DOCKMOCK_HANDLER(echo);
DOCKMOCK_HANDLER(env);
DOCKMOCK_HANDLER(export_);
DOCKMOCK_HANDLER(mv);
DOCKMOCK_HANDLER(mkdir);
DOCKMOCK_HANDLER(pwd);
DOCKMOCK_HANDLER(rm);

// Partial mocks.
DOCKMOCK_HANDLER(dot);
DOCKMOCK_HANDLER(apt);
DOCKMOCK_HANDLER(bundle);
DOCKMOCK_HANDLER(git);
DOCKMOCK_HANDLER(go);
DOCKMOCK_HANDLER(ls);
DOCKMOCK_HANDLER(ln);
DOCKMOCK_HANDLER(npm);
DOCKMOCK_HANDLER(pip);
DOCKMOCK_HANDLER(python);
DOCKMOCK_HANDLER(touch);

// Commands that only read the context.
DOCKMOCK_HANDLER(succeed);
DOCKMOCK_HANDLER(uncertain);
DOCKMOCK_HANDLER(set);
DOCKMOCK_HANDLER(unset);
DOCKMOCK_HANDLER(which);
DOCKMOCK_HANDLER(command);

#undef DOCKMOCK_HANDLER

}  // namespace dockmock::handlers
