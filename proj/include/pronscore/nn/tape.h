// include/pronscore/nn/tape.h

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

#ifndef PRONSCORE_NN_TAPE_H_
#define PRONSCORE_NN_TAPE_H_

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace pronscore::nn {

using Matrix = Eigen::MatrixXd;

// A named trainable tensor. Gradients accumulate across forward passes
// until the optimizer steps and clears them.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
  Matrix adam_m;
  Matrix adam_v;

  Parameter() = default;
  Parameter(std::string n, Matrix v)
      : name(std::move(n)),
        value(std::move(v)),
        grad(Matrix::Zero(value.rows(), value.cols())),
        adam_m(Matrix::Zero(value.rows(), value.cols())),
        adam_v(Matrix::Zero(value.rows(), value.cols())) {}

  void zero_grad() { grad.setZero(); }
};

// Reverse-mode autodiff over double matrices. One Tape records one forward
// pass; backward() walks the nodes in reverse and accumulates gradients
// into bound Parameters. Tapes are cheap, single-use and not thread-safe;
// concurrent training shards build one Tape per worker.
class Tape {
 public:
  using Var = int;

  Var input(Matrix v);          // constant leaf, no gradient
  Var param(Parameter& p);      // leaf bound to a Parameter

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);        // same shape
  Var add_colvec(Var a, Var b); // a: m x n, b: m x 1 broadcast over columns
  Var sub(Var a, Var b);
  Var cmul(Var a, Var b);       // elementwise
  Var scale(Var a, double s);
  Var tanh(Var a);
  Var sigmoid(Var a);
  Var relu(Var a);
  Var rows(Var a, int r0, int n);
  Var cols(Var a, int c0, int n);
  Var concat_cols(const std::vector<Var>& parts);
  Var concat_rows(Var a, Var b);
  Var mean_cols(Var a);         // m x n -> m x 1
  Var sum_all(Var a);           // -> 1 x 1
  Var softmax_weights(Var logits);  // n x 1 -> n x 1 simplex point

  // Custom node: arbitrary value with a hand-written backward. The
  // backward callback receives this node's output gradient and must add
  // contributions into grad_ref() of its parents.
  Var custom(Matrix value, const std::vector<Var>& parents,
             std::function<void(Tape&, const Matrix& out_grad)> backward);

  // Mean squared error between same-shape matrices, as a 1x1 node.
  Var mse(Var pred, Var target);

  const Matrix& value(Var v) const { return nodes_[v].value; }
  Matrix& grad_ref(Var v);
  bool needs_grad(Var v) const { return nodes_[v].needs_grad; }

  // Seeds d(loss)/d(loss) = 1 and propagates. loss must be 1x1.
  void backward(Var loss);

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;          // lazily sized on first touch
    bool needs_grad = false;
    bool grad_alloc = false;
    Parameter* bound = nullptr;
    std::function<void(Tape&, const Matrix&)> backward;
  };

  Var push(Matrix value, bool needs_grad,
           std::function<void(Tape&, const Matrix&)> backward,
           Parameter* bound = nullptr);

  std::vector<Node> nodes_;
};

}  // namespace pronscore::nn

#endif  // PRONSCORE_NN_TAPE_H_
