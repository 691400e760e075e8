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

// Stacked random byte-level mutation in the style of AFL's havoc stage.

#ifndef FRONTIERFUZZ_HAVOC_H_
#define FRONTIERFUZZ_HAVOC_H_

#include <cstddef>
#include <cstdint>

#include "frontierfuzz/types.h"

namespace frontierfuzz {

enum class HavocOp : uint8_t {
  kBitFlip,
  kByteSet,
  kByteArith,       // +/- 1..35
  kInteresting,     // 8/16/32-bit boundary values
  kBlockOverwrite,  // random bytes or a copy of another block
  kByteSwap,
  kBlockInsert,  // resizing
  kBlockDelete,  // resizing
};

struct HavocOptions {
  size_t stack_max = 4;
  size_t bytes_per_op = 4;
  // Permits kBlockInsert / kBlockDelete. Total length change per mutation
  // stays within `bytes_per_op`, and within [1, max_len].
  bool allow_resize = false;
  size_t max_len = 0;
};

// Applies one operator in place. `data` must be nonempty. Returns false if
// the operator could not apply (e.g. a resize with no room).
bool ApplyHavocOp(HavocOp op, Bytes &data, const HavocOptions &opts, Rng &rng,
                  size_t *resize_budget = nullptr);

// Applies 1..stack_max random operators to a copy of `seed`.
Bytes HavocMutate(ByteSpan seed, const HavocOptions &opts, Rng &rng);

// Hamming distance over positions, counting length difference as changed.
size_t ByteDistance(ByteSpan a, ByteSpan b);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_HAVOC_H_
