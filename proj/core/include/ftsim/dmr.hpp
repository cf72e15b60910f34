// Copyright 2026 The ftsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FTSIM_DMR_HPP_
#define FTSIM_DMR_HPP_

#include <optional>

#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/scheme.hpp"

namespace ftsim {

struct CommitMismatch {
  CommitRecord a;
  CommitRecord b;
};

// Mismatch iff the records retire different static instructions or carry
// different results. Throws std::logic_error when the sequence numbers
// differ, which means the caller paired the wrong records.
std::optional<CommitMismatch> CompareCommits(const CommitRecord& a, const CommitRecord& b);

// Lockstep dual-core execution. The main core takes the fault, the shadow
// core stays clean; commits are compared in the cycle they retire and the
// first mismatch stops the run.
SchemeRunResult RunDmr(const Program& program, const MachineLimits& limits,
                       const std::optional<FaultSpec>& fault = std::nullopt);

}  // namespace ftsim

#endif  // FTSIM_DMR_HPP_
