// Copyright 2026 The FrontierFuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bundled target documents, addressable as `builtin:NAME`.

#ifndef FRONTIERFUZZ_BUILTIN_TARGETS_H_
#define FRONTIERFUZZ_BUILTIN_TARGETS_H_

#include <memory>
#include <span>
#include <string_view>

#include "absl/status/statusor.h"
#include "frontierfuzz/guard_program.h"

namespace frontierfuzz {

struct BuiltinTarget {
  std::string_view name;
  std::string_view document;
  // Every guard is a linear integer or byte-string comparison.
  bool linear;
  // Part of the desk-scale evaluation suite.
  bool in_suite;
};

std::span<const BuiltinTarget> BuiltinTargets();

// Looks up a builtin by name and loads it.
absl::StatusOr<GuardProgram> LoadBuiltin(std::string_view name);

// Resolves "builtin:NAME" or a filesystem path to a program.
absl::StatusOr<std::shared_ptr<const GuardProgram>> ResolveTarget(
    std::string_view spec);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_BUILTIN_TARGETS_H_
