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

#include "cohortlex/trace_io.hpp"

#include <ostream>

#include "cohortlex/format.hpp"

namespace cohortlex {

void write_traces(std::ostream& out, std::span<const MetricTrace> traces,
                  OutputFormat format, bool include_word) {
  if (format == OutputFormat::kCsv) {
    if (include_word) out << "word,";
    out << "position,phoneme,switch_surprisal,acoustic_surprisal,switch_entropy,"
           "acoustic_entropy,switch_cohort_size,joint_cohort_size\n";
    for (const auto& trace : traces) {
      for (const auto& p : trace.points) {
        if (include_word) out << trace.word.orthography << ',';
        out << p.position << ',' << p.phoneme.symbol() << ','
            << format_fixed(p.switch_surprisal) << ',' << format_fixed(p.acoustic_surprisal)
            << ',' << format_fixed(p.switch_entropy) << ','
            << format_fixed(p.acoustic_entropy) << ',' << p.switch_cohort_size << ','
            << p.joint_cohort_size << '\n';
      }
    }
    return;
  }

  for (const auto& trace : traces) {
    for (const auto& p : trace.points) {
      out << '{';
      if (include_word) out << "\"word\":" << json_quote(trace.word.orthography) << ',';
      out << "\"position\":" << p.position << ",\"phoneme\":" << json_quote(p.phoneme.symbol())
          << ",\"switch_surprisal\":" << format_fixed(p.switch_surprisal)
          << ",\"acoustic_surprisal\":" << format_fixed(p.acoustic_surprisal)
          << ",\"switch_entropy\":" << format_fixed(p.switch_entropy)
          << ",\"acoustic_entropy\":" << format_fixed(p.acoustic_entropy)
          << ",\"switch_cohort_size\":" << p.switch_cohort_size
          << ",\"joint_cohort_size\":" << p.joint_cohort_size << "}\n";
    }
  }
}

}  // namespace cohortlex
