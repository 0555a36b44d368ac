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

#include <filesystem>

#include "pedcomfort/trial.hpp"

namespace pedcomfort {

// Two on-disk layouts carry the same content:
//
//  trials_csv:  one `trials.csv` with columns
//               trial_id,participant_id,trial_index,speed_group,
//               reported_comfort,lateral_valid,robot_file,pedestrian_file
//               where the *_file columns point to trajectory CSVs relative
//               to the metadata file.
//
//  trials_dir:  one subdirectory per trial holding meta.json, robot.csv
//               and pedestrian.csv. A `pedestrian_frame: "robot"` entry in
//               meta.json marks robot-relative pedestrian coordinates that
//               ingest converts to the world frame.
//
// Trajectory CSVs use columns t,x,y,vx,vy,heading; vx, vy and heading may
// be empty. UTF-8, '.' decimal point, seconds and meters.
enum class DatasetFormat { trials_csv, trials_dir };

// Picks trials_csv when the path is a trials.csv file or a directory
// containing one, trials_dir otherwise.
DatasetFormat detect_format(const std::filesystem::path& path);

// Loads and validates; any invalid trial rejects the whole load with an
// error naming the trial. Never mutates on-disk data.
EncounterDataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
EncounterDataset load_dataset(const std::filesystem::path& path);  // auto-detect

void save_dataset(const EncounterDataset& dataset, const std::filesystem::path& directory,
                  DatasetFormat format);

Trajectory load_trajectory_csv(const std::filesystem::path& path);
void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

}  // namespace pedcomfort
