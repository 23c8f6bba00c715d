// Copyright 2026 The orthofact authors.
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

#include <string>
#include <vector>

#include "orthofact/matrix.hpp"

namespace orthofact {

enum class Termination {
  Tolerance,  // gradient-based stopping test satisfied
  Stall,      // relative progress below the stall tolerance (or inner loop gave up)
  MaxIters,
  TimeLimit,
};

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

// Outcome of one solver run. The traces include the initial point, so their
// length is iterations + 1.
struct SolveReport {
  NonNegMatrix G;
  NonNegMatrix H;
  std::vector<double> rse_trace;
  std::vector<double> infeas_trace;
  std::vector<double> objective_trace;
  long iterations = 0;
  double wall_seconds = 0.0;
  Termination termination = Termination::MaxIters;

  double final_rse() const { return rse_trace.back(); }
  double final_infeas() const { return infeas_trace.back(); }
};

}  // namespace orthofact
