// src/nn/adam.cc

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

#include "pronscore/nn/adam.h"

#include <cmath>

namespace pronscore::nn {

void Adam::step(double lr) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (Parameter* p : params_) {
    p->adam_m = beta1_ * p->adam_m + (1.0 - beta1_) * p->grad;
    p->adam_v =
        beta2_ * p->adam_v.array() + (1.0 - beta2_) * p->grad.array().square();
    const Matrix m_hat = p->adam_m / bc1;
    const Matrix v_hat = p->adam_v / bc2;
    p->value.array() -= lr * m_hat.array() / (v_hat.array().sqrt() + eps_);
  }
}

void Adam::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

}  // namespace pronscore::nn
