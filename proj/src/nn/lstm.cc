// src/nn/lstm.cc

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

#include "pronscore/nn/lstm.h"

#include <cmath>

namespace pronscore::nn {

namespace {

Matrix uniform_init(int rows, int cols, double bound, Rng& rng) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.uniform(-bound, bound);
  return m;
}

}  // namespace

void LstmParams::init(const std::string& prefix, int in, int h, Rng& rng) {
  in_dim = in;
  hidden = h;
  const double bound = 1.0 / std::sqrt(static_cast<double>(h));
  w_x = Parameter(prefix + ".w_x", uniform_init(4 * h, in, bound, rng));
  w_h = Parameter(prefix + ".w_h", uniform_init(4 * h, h, bound, rng));
  Matrix bias = Matrix::Zero(4 * h, 1);
  bias.middleRows(h, h).setConstant(1.0);  // forget gate open at init
  b = Parameter(prefix + ".b", bias);
}

std::vector<Parameter*> LstmParams::parameters() { return {&w_x, &w_h, &b}; }

Tape::Var lstm_states(Tape& tape, Tape::Var input, LstmParams& params,
                      bool reverse) {
  const int h = params.hidden;
  const auto T = static_cast<int>(tape.value(input).cols());

  Tape::Var w_x = tape.param(params.w_x);
  Tape::Var w_h = tape.param(params.w_h);
  Tape::Var bias = tape.param(params.b);

  // Input projections for all frames at once.
  Tape::Var xz = tape.add_colvec(tape.matmul(w_x, input), bias);

  Tape::Var h_prev = tape.input(Matrix::Zero(h, 1));
  Tape::Var c_prev = tape.input(Matrix::Zero(h, 1));

  std::vector<Tape::Var> states(T);
  for (int step = 0; step < T; ++step) {
    const int t = reverse ? T - 1 - step : step;
    Tape::Var z =
        tape.add(tape.cols(xz, t, 1), tape.matmul(w_h, h_prev));
    Tape::Var gi = tape.sigmoid(tape.rows(z, 0, h));
    Tape::Var gf = tape.sigmoid(tape.rows(z, h, h));
    Tape::Var gc = tape.tanh(tape.rows(z, 2 * h, h));
    Tape::Var go = tape.sigmoid(tape.rows(z, 3 * h, h));
    Tape::Var c = tape.add(tape.cmul(gf, c_prev), tape.cmul(gi, gc));
    Tape::Var ht = tape.cmul(go, tape.tanh(c));
    states[t] = ht;
    h_prev = ht;
    c_prev = c;
  }
  return tape.concat_cols(states);
}

Tape::Var blstm_states(Tape& tape, Tape::Var input, LstmParams& fwd,
                       LstmParams& bwd) {
  Tape::Var f = lstm_states(tape, input, fwd, false);
  Tape::Var b = lstm_states(tape, input, bwd, true);
  return tape.concat_rows(f, b);
}

void LinearParams::init(const std::string& prefix, int in, int out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  w = Parameter(prefix + ".w", uniform_init(out, in, bound, rng));
  b = Parameter(prefix + ".b", Matrix::Zero(out, 1));
}

std::vector<Parameter*> LinearParams::parameters() { return {&w, &b}; }

Tape::Var linear(Tape& tape, Tape::Var input, LinearParams& params) {
  return tape.add_colvec(tape.matmul(tape.param(params.w), input),
                         tape.param(params.b));
}

}  // namespace pronscore::nn
