// src/common/log.cc

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

#include "pronscore/common/log.h"

#include <atomic>
#include <iostream>

#include "pronscore/common/hash.h"

#include <cstdio>

namespace pronscore {

namespace {
std::atomic<bool> g_quiet{false};
}

void set_log_quiet(bool quiet) { g_quiet.store(quiet); }

void log_info(const std::string& msg) {
  if (!g_quiet.load()) std::cerr << "INFO (pronscore): " << msg << "\n";
}

void log_warn(const std::string& msg) {
  if (!g_quiet.load()) std::cerr << "WARNING (pronscore): " << msg << "\n";
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pronscore
