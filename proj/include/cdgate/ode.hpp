// Copyright 2026 The cdgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Adaptive Dormand-Prince 8(5,3) integrator for complex-valued ODEs.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cdgate/numerics.hpp"

namespace cdgate {

struct StepControl {
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  double max_step = 0.0;  // 0 means unbounded
  std::size_t max_steps = 50'000'000;
};

class Dop853 {
 public:
  using Rhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;
  // Runs after every accepted step; returns true if it modified y.
  using StepHook = std::function<bool(double t, std::vector<Complex>& y)>;

  Dop853(Rhs rhs, std::size_t dim, StepControl control);

  // Integrates y from t to t_end (t_end > t). The step size is carried over
  // between calls so consecutive segments cost no restarts.
  // Throws StepUnderflow if the step collapses or max_steps is exhausted.
  void advance(double& t, std::vector<Complex>& y, double t_end, const StepHook& after_step = {});

  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

 private:
  // Combined 5th/3rd order error estimate, scaled so that <= 1 accepts.
  double error_norm(double h, std::span<const Complex> y, std::span<const Complex> y_new) const;

  Rhs rhs_;
  std::size_t dim_;
  StepControl control_;
  double h_ = 0.0;
  bool f_valid_ = false;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  std::vector<std::vector<Complex>> k_;  // 13 stage derivatives, the last is f(y_new)
  std::vector<Complex> tmp_, y_new_;
};

}  // namespace cdgate
