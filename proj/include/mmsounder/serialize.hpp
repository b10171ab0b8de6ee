// SPDX-License-Identifier: Apache-2.0
//
// mmsounder: directional mmWave channel sounder simulator
// Copyright (C) 2026 The mmsounder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMSOUNDER_SERIALIZE_HPP
#define MMSOUNDER_SERIALIZE_HPP

#include "mmsounder/runner.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace mmsounder
{

using Json = nlohmann::json;

// JSON conversions. Readers fill absent keys with the struct defaults and throw ConfigError on
// wrong types, unknown enum names and unknown keys.
Json to_json(const Vec3 &v);
Json to_json(const Orientation &o);
Json to_json(const AntennaPattern &p);
Json to_json(const Surface &s);
Json to_json(const ReflectorSpec &r);
Json to_json(const RepeaterSpec &r);
Json to_json(const Scene &s);
Json to_json(const SounderConfig &c);
Json to_json(const ExtractionConfig &c);
Json to_json(const TimingModel &t);
Json to_json(const Mpc &m);
Json to_json(const MeasurementRecord &r);
Json to_json(const ScenarioConfig &c);
Json to_json(const ScenarioResult &r);
Json to_json(const RecordSet &r);

Vec3 vec3_from_json(const Json &j);
Orientation orientation_from_json(const Json &j);
// Accepts a preset name ("horn", "phased_array_tx", "phased_array_rx") or an object whose optional
// "preset" key selects the base pattern and whose remaining keys override it.
AntennaPattern pattern_from_json(const Json &j);
Surface surface_from_json(const Json &j);
ReflectorSpec reflector_from_json(const Json &j);
RepeaterSpec repeater_from_json(const Json &j);
Scene scene_from_json(const Json &j);
SounderConfig sounder_from_json(const Json &j);
ExtractionConfig extraction_from_json(const Json &j);
TimingModel timing_from_json(const Json &j);
Mpc mpc_from_json(const Json &j);
MeasurementRecord record_from_json(const Json &j);
ScenarioConfig scenario_from_json(const Json &j);
RecordSet record_set_from_json(const Json &j);

// File helpers: IoError when the file cannot be read or written, ConfigError for malformed JSON.
Json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
ScenarioConfig load_scenario(const std::filesystem::path &path);

// Deterministic text form used for every JSON artifact.
std::string dump(const Json &j);

} // namespace mmsounder

#endif
