// include/pronscore/nn/serialize.h

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

#ifndef PRONSCORE_NN_SERIALIZE_H_
#define PRONSCORE_NN_SERIALIZE_H_

#include <string>
#include <utility>
#include <vector>

#include "pronscore/nn/tape.h"

namespace pronscore::nn {

struct TensorFile {
  std::string meta_json;
  std::vector<std::pair<std::string, Matrix>> tensors;
};

// Named-tensor checkpoint container: "PSTN" magic, version, JSON metadata
// blob, then (name, rows, cols, float64 row-major data) per tensor, with a
// trailing FNV-1a checksum over everything before it.
void write_tensor_file(const std::string& path, const TensorFile& file);
TensorFile read_tensor_file(const std::string& path);

// Hash of a parameter set; identifies loaded weights in cache keys.
uint64_t parameters_hash(const std::vector<const Parameter*>& params);

}  // namespace pronscore::nn

#endif  // PRONSCORE_NN_SERIALIZE_H_
