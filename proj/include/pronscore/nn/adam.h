// include/pronscore/nn/adam.h

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

#ifndef PRONSCORE_NN_ADAM_H_
#define PRONSCORE_NN_ADAM_H_

#include <vector>

#include "pronscore/nn/tape.h"

namespace pronscore::nn {

// Adam with bias correction. Hyperparameters beyond the learning rate use
// the common defaults (beta1 0.9, beta2 0.999, eps 1e-8); the step learning
// rate comes from the caller so schedules stay outside the optimizer.
class Adam {
 public:
  Adam(double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void register_parameter(Parameter* p) { params_.push_back(p); }
  void register_parameters(const std::vector<Parameter*>& ps) {
    for (Parameter* p : ps) params_.push_back(p);
  }

  void step(double lr);
  void zero_grad();

  const std::vector<Parameter*>& parameters() const { return params_; }

 private:
  double beta1_, beta2_, eps_;
  long long t_ = 0;
  std::vector<Parameter*> params_;
};

}  // namespace pronscore::nn

#endif  // PRONSCORE_NN_ADAM_H_
