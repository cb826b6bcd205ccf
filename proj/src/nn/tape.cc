// src/nn/tape.cc

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

#include "pronscore/nn/tape.h"

#include <cassert>
#include <stdexcept>

#include "pronscore/common/error.h"

namespace pronscore::nn {

Tape::Var Tape::push(Matrix value, bool needs_grad,
                     std::function<void(Tape&, const Matrix&)> backward,
                     Parameter* bound) {
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  n.bound = bound;
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return static_cast<Var>(nodes_.size() - 1);
}

Matrix& Tape::grad_ref(Var v) {
  Node& n = nodes_[v];
  if (!n.grad_alloc) {
    n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
    n.grad_alloc = true;
  }
  return n.grad;
}

Tape::Var Tape::input(Matrix v) { return push(std::move(v), false, nullptr); }

Tape::Var Tape::param(Parameter& p) {
  return push(p.value, true, nullptr, &p);
}

Tape::Var Tape::matmul(Var a, Var b) {
  const Matrix& va = nodes_[a].value;
  const Matrix& vb = nodes_[b].value;
  if (va.cols() != vb.rows())
    throw FatalError("matmul shape mismatch: " + std::to_string(va.cols()) +
                     " vs " + std::to_string(vb.rows()));
  Matrix out = va * vb;
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) t.grad_ref(a).noalias() += g * t.value(b).transpose();
    if (t.needs_grad(b)) t.grad_ref(b).noalias() += t.value(a).transpose() * g;
  });
}

Tape::Var Tape::add(Var a, Var b) {
  Matrix out = nodes_[a].value + nodes_[b].value;
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) t.grad_ref(a) += g;
    if (t.needs_grad(b)) t.grad_ref(b) += g;
  });
}

Tape::Var Tape::add_colvec(Var a, Var b) {
  const Matrix& va = nodes_[a].value;
  const Matrix& vb = nodes_[b].value;
  assert(vb.cols() == 1 && vb.rows() == va.rows());
  Matrix out = va.colwise() + Eigen::VectorXd(vb.col(0));
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) t.grad_ref(a) += g;
    if (t.needs_grad(b)) t.grad_ref(b) += g.rowwise().sum();
  });
}

Tape::Var Tape::sub(Var a, Var b) {
  Matrix out = nodes_[a].value - nodes_[b].value;
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) t.grad_ref(a) += g;
    if (t.needs_grad(b)) t.grad_ref(b) -= g;
  });
}

Tape::Var Tape::cmul(Var a, Var b) {
  Matrix out = nodes_[a].value.cwiseProduct(nodes_[b].value);
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) t.grad_ref(a) += g.cwiseProduct(t.value(b));
    if (t.needs_grad(b)) t.grad_ref(b) += g.cwiseProduct(t.value(a));
  });
}

Tape::Var Tape::scale(Var a, double s) {
  Matrix out = nodes_[a].value * s;
  return push(std::move(out), nodes_[a].needs_grad,
              [a, s](Tape& t, const Matrix& g) {
                if (t.needs_grad(a)) t.grad_ref(a) += g * s;
              });
}

Tape::Var Tape::tanh(Var a) {
  Matrix out = nodes_[a].value.array().tanh().matrix();
  Var self = push(out, nodes_[a].needs_grad, nullptr);
  nodes_[self].backward = [a, self](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) {
      const Matrix& y = t.value(self);
      t.grad_ref(a).array() += g.array() * (1.0 - y.array().square());
    }
  };
  return self;
}

Tape::Var Tape::sigmoid(Var a) {
  Matrix out = (1.0 / (1.0 + (-nodes_[a].value.array()).exp())).matrix();
  Var self = push(out, nodes_[a].needs_grad, nullptr);
  nodes_[self].backward = [a, self](Tape& t, const Matrix& g) {
    if (t.needs_grad(a)) {
      const Matrix& y = t.value(self);
      t.grad_ref(a).array() += g.array() * y.array() * (1.0 - y.array());
    }
  };
  return self;
}

Tape::Var Tape::relu(Var a) {
  Matrix out = nodes_[a].value.cwiseMax(0.0);
  return push(std::move(out), nodes_[a].needs_grad,
              [a](Tape& t, const Matrix& g) {
                if (!t.needs_grad(a)) return;
                t.grad_ref(a).array() +=
                    g.array() * (t.value(a).array() > 0.0).cast<double>();
              });
}

Tape::Var Tape::rows(Var a, int r0, int n) {
  Matrix out = nodes_[a].value.middleRows(r0, n);
  return push(std::move(out), nodes_[a].needs_grad,
              [a, r0, n](Tape& t, const Matrix& g) {
                if (t.needs_grad(a)) t.grad_ref(a).middleRows(r0, n) += g;
              });
}

Tape::Var Tape::cols(Var a, int c0, int n) {
  Matrix out = nodes_[a].value.middleCols(c0, n);
  return push(std::move(out), nodes_[a].needs_grad,
              [a, c0, n](Tape& t, const Matrix& g) {
                if (t.needs_grad(a)) t.grad_ref(a).middleCols(c0, n) += g;
              });
}

Tape::Var Tape::concat_cols(const std::vector<Var>& parts) {
  assert(!parts.empty());
  Eigen::Index rows = nodes_[parts[0]].value.rows();
  Eigen::Index total = 0;
  bool ng = false;
  for (Var p : parts) {
    total += nodes_[p].value.cols();
    ng = ng || nodes_[p].needs_grad;
  }
  Matrix out(rows, total);
  Eigen::Index at = 0;
  for (Var p : parts) {
    const Matrix& v = nodes_[p].value;
    out.middleCols(at, v.cols()) = v;
    at += v.cols();
  }
  std::vector<Var> ps = parts;
  return push(std::move(out), ng, [ps](Tape& t, const Matrix& g) {
    Eigen::Index at = 0;
    for (Var p : ps) {
      const Eigen::Index c = t.value(p).cols();
      if (t.needs_grad(p)) t.grad_ref(p) += g.middleCols(at, c);
      at += c;
    }
  });
}

Tape::Var Tape::concat_rows(Var a, Var b) {
  const Matrix& va = nodes_[a].value;
  const Matrix& vb = nodes_[b].value;
  Matrix out(va.rows() + vb.rows(), va.cols());
  out.topRows(va.rows()) = va;
  out.bottomRows(vb.rows()) = vb;
  const bool ng = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(out), ng, [a, b](Tape& t, const Matrix& g) {
    const Eigen::Index ra = t.value(a).rows();
    if (t.needs_grad(a)) t.grad_ref(a) += g.topRows(ra);
    if (t.needs_grad(b)) t.grad_ref(b) += g.bottomRows(t.value(b).rows());
  });
}

Tape::Var Tape::mean_cols(Var a) {
  const Matrix& va = nodes_[a].value;
  const double inv = 1.0 / static_cast<double>(va.cols());
  Matrix out = va.rowwise().mean();
  return push(std::move(out), nodes_[a].needs_grad,
              [a, inv](Tape& t, const Matrix& g) {
                if (!t.needs_grad(a)) return;
                Matrix& ga = t.grad_ref(a);
                for (Eigen::Index c = 0; c < ga.cols(); ++c)
                  ga.col(c) += g.col(0) * inv;
              });
}

Tape::Var Tape::sum_all(Var a) {
  Matrix out(1, 1);
  out(0, 0) = nodes_[a].value.sum();
  return push(std::move(out), nodes_[a].needs_grad,
              [a](Tape& t, const Matrix& g) {
                if (t.needs_grad(a))
                  t.grad_ref(a).array() += g(0, 0);
              });
}

Tape::Var Tape::softmax_weights(Var logits) {
  const Matrix& z = nodes_[logits].value;
  assert(z.cols() == 1);
  Eigen::ArrayXd e = (z.col(0).array() - z.col(0).maxCoeff()).exp();
  Matrix out = (e / e.sum()).matrix();
  Var self = push(out, nodes_[logits].needs_grad, nullptr);
  nodes_[self].backward = [logits, self](Tape& t, const Matrix& g) {
    if (!t.needs_grad(logits)) return;
    const Eigen::ArrayXd y = t.value(self).col(0).array();
    const Eigen::ArrayXd gy = g.col(0).array();
    const double dot = (y * gy).sum();
    t.grad_ref(logits).col(0).array() += y * (gy - dot);
  };
  return self;
}

Tape::Var Tape::custom(
    Matrix value, const std::vector<Var>& parents,
    std::function<void(Tape&, const Matrix& out_grad)> backward) {
  bool ng = false;
  for (Var p : parents) ng = ng || nodes_[p].needs_grad;
  return push(std::move(value), ng, std::move(backward));
}

Tape::Var Tape::mse(Var pred, Var target) {
  Var d = sub(pred, target);
  Var sq = cmul(d, d);
  Var s = sum_all(sq);
  const double n = static_cast<double>(nodes_[pred].value.size());
  return scale(s, 1.0 / n);
}

void Tape::backward(Var loss) {
  if (nodes_[loss].value.size() != 1)
    throw FatalError("backward() requires a scalar loss node");
  grad_ref(loss)(0, 0) = 1.0;
  for (int i = loss; i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.needs_grad || !n.grad_alloc) continue;
    if (n.backward) n.backward(*this, n.grad);
    if (n.bound != nullptr) n.bound->grad += n.grad;
  }
}

}  // namespace pronscore::nn
