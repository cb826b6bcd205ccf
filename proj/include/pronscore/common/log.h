// include/pronscore/common/log.h

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

#ifndef PRONSCORE_COMMON_LOG_H_
#define PRONSCORE_COMMON_LOG_H_

#include <string>

namespace pronscore {

void log_info(const std::string& msg);
void log_warn(const std::string& msg);

// Suppress info/warn output (tests use this to keep ctest logs quiet).
void set_log_quiet(bool quiet);

}  // namespace pronscore

#endif  // PRONSCORE_COMMON_LOG_H_
