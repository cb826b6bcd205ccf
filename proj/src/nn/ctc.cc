// src/nn/ctc.cc

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

#include "pronscore/nn/ctc.h"

#include <cmath>
#include <limits>

#include "pronscore/common/error.h"

namespace pronscore::nn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

bool ctc_alignment_feasible(int num_frames, const std::vector<int>& labels) {
  int required = static_cast<int>(labels.size());
  for (size_t i = 1; i < labels.size(); ++i)
    if (labels[i] == labels[i - 1]) ++required;
  return num_frames >= required;
}

double ctc_loss_value(const Matrix& logits, const std::vector<int>& labels,
                      int blank, Matrix* grad_out) {
  const int V = static_cast<int>(logits.rows());
  const int T = static_cast<int>(logits.cols());
  if (grad_out != nullptr) *grad_out = Matrix::Zero(V, T);
  if (!ctc_alignment_feasible(T, labels))
    return std::numeric_limits<double>::infinity();

  // Log-softmax per frame.
  Matrix lp(V, T);
  Matrix prob(V, T);
  for (int t = 0; t < T; ++t) {
    const double mx = logits.col(t).maxCoeff();
    Eigen::ArrayXd e = (logits.col(t).array() - mx).exp();
    const double z = e.sum();
    prob.col(t) = (e / z).matrix();
    lp.col(t) = (logits.col(t).array() - mx - std::log(z)).matrix();
  }

  // Extended sequence: blanks interleaved around every label.
  const int U = static_cast<int>(labels.size());
  const int S = 2 * U + 1;
  std::vector<int> ext(S, blank);
  for (int u = 0; u < U; ++u) ext[2 * u + 1] = labels[u];

  auto skip_ok = [&](int s) {
    // s-2 -> s allowed unless s is a blank or equals the label two back.
    return s >= 2 && ext[s] != blank && ext[s] != ext[s - 2];
  };

  Matrix alpha = Matrix::Constant(S, T, kNegInf);
  alpha(0, 0) = lp(ext[0], 0);
  if (S > 1) alpha(1, 0) = lp(ext[1], 0);
  for (int t = 1; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      double a = alpha(s, t - 1);
      if (s >= 1) a = log_add(a, alpha(s - 1, t - 1));
      if (skip_ok(s)) a = log_add(a, alpha(s - 2, t - 1));
      if (a != kNegInf) alpha(s, t) = a + lp(ext[s], t);
    }
  }

  double log_p = alpha(S - 1, T - 1);
  if (S > 1) log_p = log_add(log_p, alpha(S - 2, T - 1));
  if (log_p == kNegInf) return std::numeric_limits<double>::infinity();

  if (grad_out != nullptr) {
    Matrix beta = Matrix::Constant(S, T, kNegInf);
    beta(S - 1, T - 1) = lp(ext[S - 1], T - 1);
    if (S > 1) beta(S - 2, T - 1) = lp(ext[S - 2], T - 1);
    for (int t = T - 2; t >= 0; --t) {
      for (int s = S - 1; s >= 0; --s) {
        double b = beta(s, t + 1);
        if (s + 1 < S) b = log_add(b, beta(s + 1, t + 1));
        if (s + 2 < S && skip_ok(s + 2)) b = log_add(b, beta(s + 2, t + 1));
        if (b != kNegInf) beta(s, t) = b + lp(ext[s], t);
      }
    }

    // dL/dlogits = softmax - state posteriors summed per symbol.
    *grad_out = prob;
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        const double g = alpha(s, t) + beta(s, t) - lp(ext[s], t) - log_p;
        if (g != kNegInf && !std::isnan(g))
          (*grad_out)(ext[s], t) -= std::exp(g);
      }
    }
  }
  return -log_p;
}

Tape::Var ctc_loss(Tape& tape, Tape::Var logits,
                   const std::vector<int>& labels, int blank) {
  Matrix grad;
  const double loss =
      ctc_loss_value(tape.value(logits), labels, blank, &grad);
  if (std::isinf(loss))
    throw ValidationError("CTC: no feasible alignment (" +
                          std::to_string(labels.size()) + " labels into " +
                          std::to_string(tape.value(logits).cols()) +
                          " frames)");
  Matrix out(1, 1);
  out(0, 0) = loss;
  return tape.custom(out, {logits},
                     [logits, grad](Tape& t, const Matrix& out_grad) {
                       if (t.needs_grad(logits))
                         t.grad_ref(logits) += out_grad(0, 0) * grad;
                     });
}

std::vector<int> ctc_greedy_path(const Matrix& logits) {
  std::vector<int> path(logits.cols());
  for (int t = 0; t < logits.cols(); ++t) {
    Eigen::Index best;
    logits.col(t).maxCoeff(&best);
    path[t] = static_cast<int>(best);
  }
  return path;
}

std::vector<int> ctc_collapse(const std::vector<int>& path, int blank) {
  std::vector<int> out;
  int prev = -1;
  for (int v : path) {
    if (v != prev && v != blank) out.push_back(v);
    prev = v;
  }
  return out;
}

}  // namespace pronscore::nn
