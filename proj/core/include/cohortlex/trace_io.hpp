// Copyright 2026 The cohortlex Authors.
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

#include <iosfwd>
#include <span>

#include "cohortlex/metrics.hpp"

namespace cohortlex {

enum class OutputFormat { kCsv, kJsonLines };

// Columns: position, phoneme, switch_surprisal, acoustic_surprisal,
// switch_entropy, acoustic_entropy, switch_cohort_size, joint_cohort_size.
// With include_word a leading `word` column (or field) names the trace.
void write_traces(std::ostream& out, std::span<const MetricTrace> traces,
                  OutputFormat format, bool include_word);

}  // namespace cohortlex
