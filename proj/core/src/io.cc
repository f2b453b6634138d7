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

#include "summrank/io.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "summrank/errors.h"

#ifndef SUMMRANK_VERSION
#define SUMMRANK_VERSION "0.0.0"
#endif

namespace summrank {

std::string ToolVersion() { return std::string("summrank ") + SUMMRANK_VERSION; }

std::string ProvenanceLine(const Provenance& provenance) {
  nlohmann::ordered_json j;
  j["provenance"]["tool_version"] = provenance.tool_version;
  j["provenance"]["config_digest"] = provenance.config_digest;
  j["provenance"]["input_digest"] = provenance.input_digest;
  return j.dump();
}

void LogWarning(std::string_view message) {
  std::cerr << "summrank: warning: " << message << '\n';
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw ValidationError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot move " + tmp.string() + " into place: " +
                          ec.message());
  }
}

}  // namespace summrank
