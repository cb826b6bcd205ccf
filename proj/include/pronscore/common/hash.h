// include/pronscore/common/hash.h

// Copyright 2026  The pronscore Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PRONSCORE_COMMON_HASH_H_
#define PRONSCORE_COMMON_HASH_H_

#include <cstdint>
#include <cstddef>
#include <string>

namespace pronscore {

// 64-bit FNV-1a. Used for config hashes, cache keys and record checksums;
// not a cryptographic hash.
inline uint64_t fnv1a64(const void* data, size_t n,
                        uint64_t seed = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

std::string hash_hex(uint64_t h);

}  // namespace pronscore

#endif  // PRONSCORE_COMMON_HASH_H_
