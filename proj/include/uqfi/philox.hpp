// Copyright 2026 The uqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace uqfi {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
/// A pure function of (counter, key): identical inputs give identical words
/// on every platform.
class Philox4x32
{
public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key)
  {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      std::uint64_t const p0 = std::uint64_t(kMul0) * ctr[0];
      std::uint64_t const p1 = std::uint64_t(kMul1) * ctr[2];
      ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1), std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
    }
    return ctr;
  }

private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Stream of uniform doubles in [0, 1) addressed by (seed, stream). Each
/// Philox block yields two 53-bit doubles.
class UniformStream
{
public:
  UniformStream(std::uint64_t seed, std::uint64_t stream)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}
    , stream_(stream)
  {
  }

  double next()
  {
    if (slot_ == 2) {
      buffer_ = Philox4x32::block({std::uint32_t(index_), std::uint32_t(index_ >> 32), std::uint32_t(stream_), std::uint32_t(stream_ >> 32)}, key_);
      ++index_;
      slot_ = 0;
    }
    std::uint64_t const hi = buffer_[2 * slot_], lo = buffer_[2 * slot_ + 1];
    ++slot_;
    return double(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

private:
  Philox4x32::Key     key_;
  std::uint64_t       stream_;
  std::uint64_t       index_ = 0;
  Philox4x32::Counter buffer_{};
  int                 slot_ = 2;
};

} // namespace uqfi
