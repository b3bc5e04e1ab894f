// Copyright 2026 The ordsup Authors.
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

#ifndef ORDSUP_IO_H_
#define ORDSUP_IO_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ordsup {

inline constexpr std::string_view kToolName = "ordsup";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Provenance block embedded in (or written next to) every output file:
// tool, version, subcommand and the full flag echo, seeds included.
nlohmann::ordered_json MakeMetadata(std::string_view command,
                                    const nlohmann::ordered_json& args);

// Streams into "<path>.tmp" and renames onto `path` on Commit(). A writer
// destroyed without Commit() removes the temporary, so a failed run leaves
// no partial output behind.
class AtomicWriter {
 public:
  explicit AtomicWriter(std::string path);
  ~AtomicWriter();
  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  std::ostream& stream() { return out_; }
  void Commit();

 private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteFileAtomic(const std::string& path, std::string_view content);
std::string ReadFile(const std::string& path);

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes);

}  // namespace ordsup

#endif  // ORDSUP_IO_H_
