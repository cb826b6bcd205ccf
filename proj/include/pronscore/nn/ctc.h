// include/pronscore/nn/ctc.h

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

#ifndef PRONSCORE_NN_CTC_H_
#define PRONSCORE_NN_CTC_H_

#include <vector>

#include "pronscore/nn/tape.h"

namespace pronscore::nn {

// True when the label sequence admits at least one alignment into T frames
// (T >= labels + one separator blank per adjacent repeat).
bool ctc_alignment_feasible(int num_frames, const std::vector<int>& labels);

// Negative log likelihood of `labels` under per-frame logits (V x T) with
// softmax applied internally. Returns +inf when no alignment is feasible.
// grad_out, when non-null, receives dL/dlogits (zeros for +inf).
double ctc_loss_value(const Matrix& logits, const std::vector<int>& labels,
                      int blank, Matrix* grad_out);

// Tape node for the same loss; throws ValidationError when infeasible.
Tape::Var ctc_loss(Tape& tape, Tape::Var logits,
                   const std::vector<int>& labels, int blank);

// Per-frame argmax over logits columns.
std::vector<int> ctc_greedy_path(const Matrix& logits);

// Collapse repeats, then drop blanks.
std::vector<int> ctc_collapse(const std::vector<int>& path, int blank);

}  // namespace pronscore::nn

#endif  // PRONSCORE_NN_CTC_H_
