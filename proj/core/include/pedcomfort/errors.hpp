// Copyright 2026 The pedcomfort Authors
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

#include <stdexcept>
#include <string>

namespace pedcomfort {

enum class Errc {
  // input and dataset errors
  io_failure,
  bad_format,
  missing_column,
  bad_field,
  non_monotone_time,
  comfort_out_of_range,
  trial_index_out_of_range,
  duplicate_trial_id,
  unknown_speed_group,
  invalid_config,
  // computation errors
  too_few_samples,
  no_temporal_overlap,
  empty_series,
  never_approaching,
  degenerate_trajectory,
  heading_unavailable,
  length_mismatch,
  zero_marginal,
  undefined_metric,
  missing_value,
  out_of_range,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::io_failure: return "IoFailure";
    case Errc::bad_format: return "BadFormat";
    case Errc::missing_column: return "MissingColumn";
    case Errc::bad_field: return "BadField";
    case Errc::non_monotone_time: return "NonMonotoneTime";
    case Errc::comfort_out_of_range: return "ComfortOutOfRange";
    case Errc::trial_index_out_of_range: return "TrialIndexOutOfRange";
    case Errc::duplicate_trial_id: return "DuplicateTrialId";
    case Errc::unknown_speed_group: return "UnknownSpeedGroup";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::no_temporal_overlap: return "NoTemporalOverlap";
    case Errc::empty_series: return "EmptySeries";
    case Errc::never_approaching: return "NeverApproaching";
    case Errc::degenerate_trajectory: return "DegenerateTrajectory";
    case Errc::heading_unavailable: return "HeadingUnavailable";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::zero_marginal: return "ZeroMarginal";
    case Errc::undefined_metric: return "UndefinedMetric";
    case Errc::missing_value: return "MissingValue";
    case Errc::out_of_range: return "OutOfRange";
  }
  return "Unknown";
}

// Input errors map to CLI exit code 2, everything else to 3.
inline bool is_input_error(Errc code) {
  switch (code) {
    case Errc::io_failure:
    case Errc::bad_format:
    case Errc::missing_column:
    case Errc::bad_field:
    case Errc::non_monotone_time:
    case Errc::comfort_out_of_range:
    case Errc::trial_index_out_of_range:
    case Errc::duplicate_trial_id:
    case Errc::unknown_speed_group:
    case Errc::invalid_config:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace pedcomfort
