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

#include "frontierfuzz/havoc.h"

#include <algorithm>
#include <cstdint>
#include <cstring>

namespace frontierfuzz {
namespace {

constexpr int8_t kInteresting8[] = {-128, -1, 0, 1, 16, 32, 64, 100, 127};
constexpr int16_t kInteresting16[] = {-32768, -129, 128,  255,  256,
                                      512,    1000, 1024, 4096, 32767};
constexpr int32_t kInteresting32[] = {INT32_MIN, -100663046, -32769, 32768,
                                      65535,     65536,      100663045, INT32_MAX};
constexpr int kArithMax = 35;

template <typename T, size_t N>
T Pick(const T (&arr)[N], Rng &rng) {
  return arr[RandBelow(rng, N)];
}

void Store(Bytes &data, size_t pos, uint32_t value, size_t width, bool big) {
  for (size_t i = 0; i < width; ++i) {
    size_t shift = big ? 8 * (width - 1 - i) : 8 * i;
    data[pos + i] = static_cast<uint8_t>(value >> shift);
  }
}

}  // namespace

bool ApplyHavocOp(HavocOp op, Bytes &data, const HavocOptions &opts, Rng &rng,
                  size_t *resize_budget) {
  const size_t n = data.size();
  if (n == 0) return false;
  const size_t max_block = std::max<size_t>(1, opts.bytes_per_op);
  switch (op) {
    case HavocOp::kBitFlip: {
      const size_t bit = RandBelow(rng, n * 8);
      data[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
      return true;
    }
    case HavocOp::kByteSet: {
      data[RandBelow(rng, n)] = static_cast<uint8_t>(rng());
      return true;
    }
    case HavocOp::kByteArith: {
      const size_t pos = RandBelow(rng, n);
      const int delta = 1 + static_cast<int>(RandBelow(rng, kArithMax));
      data[pos] = static_cast<uint8_t>(rng() & 1 ? data[pos] + delta
                                                 : data[pos] - delta);
      return true;
    }
    case HavocOp::kInteresting: {
      size_t width = size_t{1} << RandBelow(rng, 3);  // 1, 2 or 4
      while (width > std::min(n, max_block)) width /= 2;
      const size_t pos = RandBelow(rng, n - width + 1);
      const bool big = rng() & 1;
      uint32_t value;
      if (width == 1) {
        value = static_cast<uint8_t>(Pick(kInteresting8, rng));
      } else if (width == 2) {
        value = static_cast<uint16_t>(Pick(kInteresting16, rng));
      } else {
        value = static_cast<uint32_t>(Pick(kInteresting32, rng));
      }
      Store(data, pos, value, width, big);
      return true;
    }
    case HavocOp::kBlockOverwrite: {
      const size_t len = 1 + RandBelow(rng, std::min(n, max_block));
      const size_t dst = RandBelow(rng, n - len + 1);
      if (rng() & 1) {
        const size_t src = RandBelow(rng, n - len + 1);
        std::memmove(&data[dst], &data[src], len);
      } else {
        for (size_t i = 0; i < len; ++i) data[dst + i] = static_cast<uint8_t>(rng());
      }
      return true;
    }
    case HavocOp::kByteSwap: {
      const size_t a = RandBelow(rng, n), b = RandBelow(rng, n);
      std::swap(data[a], data[b]);
      return true;
    }
    case HavocOp::kBlockInsert: {
      size_t room = opts.max_len > n ? opts.max_len - n : 0;
      room = std::min(room, max_block);
      if (resize_budget) room = std::min(room, *resize_budget);
      if (!opts.allow_resize || room == 0) return false;
      const size_t len = 1 + RandBelow(rng, room);
      const size_t pos = RandBelow(rng, n + 1);
      Bytes block(len);
      for (auto &b : block) b = static_cast<uint8_t>(rng());
      data.insert(data.begin() + static_cast<ptrdiff_t>(pos), block.begin(),
                  block.end());
      if (resize_budget) *resize_budget -= len;
      return true;
    }
    case HavocOp::kBlockDelete: {
      size_t room = std::min(n - 1, max_block);
      if (resize_budget) room = std::min(room, *resize_budget);
      if (!opts.allow_resize || room == 0) return false;
      const size_t len = 1 + RandBelow(rng, room);
      const size_t pos = RandBelow(rng, n - len + 1);
      data.erase(data.begin() + static_cast<ptrdiff_t>(pos),
                 data.begin() + static_cast<ptrdiff_t>(pos + len));
      if (resize_budget) *resize_budget -= len;
      return true;
    }
  }
  return false;
}

Bytes HavocMutate(ByteSpan seed, const HavocOptions &opts, Rng &rng) {
  Bytes out(seed.begin(), seed.end());
  if (out.empty()) return out;
  const size_t ops = 1 + RandBelow(rng, std::max<size_t>(1, opts.stack_max));
  const size_t kinds = opts.allow_resize ? 8 : 6;
  size_t resize_budget = opts.bytes_per_op;
  for (size_t i = 0; i < ops; ++i) {
    const auto op = static_cast<HavocOp>(RandBelow(rng, kinds));
    ApplyHavocOp(op, out, opts, rng, &resize_budget);
  }
  return out;
}

size_t ByteDistance(ByteSpan a, ByteSpan b) {
  const size_t common = std::min(a.size(), b.size());
  size_t d = std::max(a.size(), b.size()) - common;
  for (size_t i = 0; i < common; ++i) d += a[i] != b[i];
  return d;
}

}  // namespace frontierfuzz
