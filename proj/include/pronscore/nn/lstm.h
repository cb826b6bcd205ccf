// include/pronscore/nn/lstm.h

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

#ifndef PRONSCORE_NN_LSTM_H_
#define PRONSCORE_NN_LSTM_H_

#include <string>
#include <vector>

#include "pronscore/common/rng.h"
#include "pronscore/nn/tape.h"

namespace pronscore::nn {

// One direction of an LSTM. Gate rows are packed [input; forget; cell; output].
struct LstmParams {
  Parameter w_x;  // 4H x I
  Parameter w_h;  // 4H x H
  Parameter b;    // 4H x 1

  int hidden = 0;
  int in_dim = 0;

  void init(const std::string& prefix, int in, int h, Rng& rng);
  std::vector<Parameter*> parameters();
};

// Runs the recurrence over the columns of input (I x T). reverse=true scans
// right to left. Returns the H x T matrix of hidden states in input order.
Tape::Var lstm_states(Tape& tape, Tape::Var input, LstmParams& params,
                      bool reverse);

// Forward and backward passes concatenated per frame: 2H x T.
Tape::Var blstm_states(Tape& tape, Tape::Var input, LstmParams& fwd,
                       LstmParams& bwd);

// Dense layer y = Wx + b.
struct LinearParams {
  Parameter w;  // out x in
  Parameter b;  // out x 1

  void init(const std::string& prefix, int in, int out, Rng& rng);
  std::vector<Parameter*> parameters();
};

Tape::Var linear(Tape& tape, Tape::Var input, LinearParams& params);

}  // namespace pronscore::nn

#endif  // PRONSCORE_NN_LSTM_H_
