// Copyright 2026 The noiseless-privacy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISELESS_CONFIG_HPP_
#define NOISELESS_CONFIG_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noiseless/model.hpp"

namespace noiseless {

// Why a config was rejected; doubles as the process exit code so scripted
// callers can tell a typo from a malformed file from an inconsistent model.
enum class ConfigErrorKind {
  kParse = 2,      // unreadable file or invalid syntax
  kSchema = 3,     // valid syntax, wrong structure (keys, types, families)
  kInvariant = 4,  // well-formed but semantically inconsistent values
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ConfigErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ConfigErrorKind kind_;
};

// A parsed configuration: the data vector, the adversary, and the extras
// closed-form bounds may need. `notes` carries non-fatal caveats such as
// record groups fitted from raw data columns.
struct IngestResult {
  DataVectorSpec data;
  AdversaryModel adversary;
  std::optional<double> remaining_total_variance;
  std::vector<std::string> notes;
};

// Reads and validates a JSON configuration file (see docs/config-schema.md).
// Throws ConfigError with the kind matching what went wrong.
IngestResult ingest_config(const std::string& path);

// Same, from an in-memory JSON document.
IngestResult ingest_config_text(const std::string& json_text);

}  // namespace noiseless

#endif  // NOISELESS_CONFIG_HPP_
