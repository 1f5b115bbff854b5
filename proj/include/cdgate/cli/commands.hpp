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

// Command dispatch for the cdgate executable.

#include <iosfwd>
#include <string>
#include <vector>

#include "cdgate/cli/config.hpp"
#include "cdgate/cli/output.hpp"

namespace cdgate::cli {

// Runs one validated command, writes its files under cfg.output and
// returns the manifest (already written). Progress and warnings go to log.
OutputManifest run_command(const RunConfig& cfg, std::ostream& log);

// Full CLI entry: parse, run, map failures to exit codes.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cdgate::cli
