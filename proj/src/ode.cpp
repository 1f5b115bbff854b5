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

#include "cdgate/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cdgate/errors.hpp"
#include "dop853_tableau.hpp"

namespace cdgate {

namespace {

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kExponent = -1.0 / 8.0;

}  // namespace

Dop853::Dop853(Rhs rhs, std::size_t dim, StepControl control)
    : rhs_(std::move(rhs)),
      dim_(dim),
      control_(control),
      k_(dop853::kStages + 1, std::vector<Complex>(dim)),
      tmp_(dim),
      y_new_(dim) {}

double Dop853::error_norm(double h, std::span<const Complex> y, std::span<const Complex> y_new) const {
  double e5 = 0.0;
  double e3 = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex s5{};
    Complex s3{};
    for (int s = 0; s <= dop853::kStages; ++s) {
      s5 += dop853::kE5[s] * k_[s][i];
      s3 += dop853::kE3[s] * k_[s][i];
    }
    const double sre = control_.abs_tol +
                       control_.rel_tol * std::max(std::abs(y[i].real()), std::abs(y_new[i].real()));
    const double sim = control_.abs_tol +
                       control_.rel_tol * std::max(std::abs(y[i].imag()), std::abs(y_new[i].imag()));
    e5 += std::pow(s5.real() / sre, 2) + std::pow(s5.imag() / sim, 2);
    e3 += std::pow(s3.real() / sre, 2) + std::pow(s3.imag() / sim, 2);
  }
  if (e5 == 0.0 && e3 == 0.0) return 0.0;
  const double denom = e5 + 0.01 * e3;
  return h * e5 / std::sqrt(denom * 2.0 * static_cast<double>(dim_));
}

void Dop853::advance(double& t, std::vector<Complex>& y, double t_end, const StepHook& after_step) {
  if (!(t_end > t)) return;
  const double span = t_end - t;
  const double max_step = control_.max_step > 0.0 ? control_.max_step : span;
  if (h_ <= 0.0) h_ = std::min(max_step, 1e-3 * span);

  if (!f_valid_) {
    rhs_(t, y, k_[0]);
    f_valid_ = true;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  while (t < t_end) {
    const double remaining = t_end - t;
    bool last = false;
    double h = std::min(h_, max_step);
    if (h >= remaining * (1.0 - 1e-12)) {
      h = remaining;
      last = true;
    }
    if (h < 16.0 * eps * std::max(std::abs(t), std::abs(t_end))) {
      throw StepUnderflow("Dop853: step size " + num(h) + " underflowed at t = " + num(t));
    }
    if (accepted_ + rejected_ >= control_.max_steps) {
      throw StepUnderflow("Dop853: step budget of " + num(control_.max_steps) + " exhausted at t = " +
                          num(t));
    }

    for (int s = 1; s < dop853::kStages; ++s) {
      for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc{};
        for (int j = 0; j < s; ++j) acc += dop853::kA[s][j] * k_[j][i];
        tmp_[i] = y[i] + h * acc;
      }
      rhs_(t + dop853::kC[s] * h, tmp_, k_[s]);
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      Complex acc{};
      for (int j = 0; j < dop853::kStages; ++j) acc += dop853::kB[j] * k_[j][i];
      y_new_[i] = y[i] + h * acc;
    }
    const double t_next = last ? t_end : t + h;
    rhs_(t_next, y_new_, k_[dop853::kStages]);
    const double err = error_norm(h, y, y_new_);

    if (err <= 1.0) {
      ++accepted_;
      t = t_next;
      y.swap(y_new_);
      if (after_step && after_step(t, y)) {
        rhs_(t, y, k_[0]);
      } else {
        k_[0].swap(k_[dop853::kStages]);
      }
      const double factor = err == 0.0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(err, kExponent));
      // A clipped final step only bounds the natural step size from above.
      if (!last) {
        h_ = h * factor;
      } else if (factor < 1.0) {
        h_ = std::min(h_, h * factor);
      }
    } else {
      ++rejected_;
      h_ = h * std::max(kMinFactor, kSafety * std::pow(err, kExponent));
    }
  }
}

}  // namespace cdgate
