// Copyright 2026 The summrank Authors.
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

#ifndef SUMMRANK_IO_H_
#define SUMMRANK_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace summrank {

// Written as the first line (JSONL), first key (JSON) or first comment line
// (CSV, text) of every artifact.
struct Provenance {
  std::string tool_version;
  std::string config_digest;
  std::string input_digest;

  bool operator==(const Provenance&) const = default;
};

// "summrank <version>".
std::string ToolVersion();

// One-line JSON rendering: {"provenance":{...}}.
std::string ProvenanceLine(const Provenance& provenance);

// Writes "summrank: warning: <message>" to stderr.
void LogWarning(std::string_view message);

// Reads a whole file; throws ValidationError if it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place, so readers
// never observe a partially written artifact.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

}  // namespace summrank

#endif  // SUMMRANK_IO_H_
