// Copyright 2026 The Collide Authors
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

#pragma once

#include <map>
#include <string>

#include "collide/harness.hpp"

namespace collide {

/// Parses the flat `key = value` format (with [dims], [coupling], [rounds]
/// sections) or, when the text starts with '{', the equivalent JSON.
/// Errors are InvalidArgument naming the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical flat text that parse_config reads back to the same config.
std::string format_config(const ExperimentConfig& config);

std::string to_string(CollisionOrder order);

}  // namespace collide
