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

#include <concepts>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cdgate {

// Number formatting for error messages.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
template <std::integral T>
std::string num(T v) {
  return std::to_string(v);
}

// Base class for every error raised by the library. Callers that only care
// about "something went wrong" catch this; the subclasses name the failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CDGATE_DEFINE_ERROR(Name)      \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

// numerics
CDGATE_DEFINE_ERROR(DimensionMismatch);
CDGATE_DEFINE_ERROR(NotHermitian);
CDGATE_DEFINE_ERROR(NoConvergence);

// model
CDGATE_DEFINE_ERROR(NonPositiveTau);
CDGATE_DEFINE_ERROR(GapCollision);
CDGATE_DEFINE_ERROR(DimensionTooLarge);
CDGATE_DEFINE_ERROR(InvalidParams);

// dynamics
CDGATE_DEFINE_ERROR(StepUnderflow);
CDGATE_DEFINE_ERROR(NormDriftExceeded);
CDGATE_DEFINE_ERROR(TraceDriftExceeded);
CDGATE_DEFINE_ERROR(PositivityViolation);
CDGATE_DEFINE_ERROR(InvalidSampleCount);
CDGATE_DEFINE_ERROR(InvalidDensityMatrix);

// observables
CDGATE_DEFINE_ERROR(NotNormalized);

// experiments
CDGATE_DEFINE_ERROR(NoInteriorMaximum);
CDGATE_DEFINE_ERROR(InvalidGrid);

#undef CDGATE_DEFINE_ERROR

}  // namespace cdgate
