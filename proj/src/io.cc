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

#include "ordsup/io.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "ordsup/errors.h"

namespace ordsup {

nlohmann::ordered_json MakeMetadata(std::string_view command,
                                    const nlohmann::ordered_json& args) {
  nlohmann::ordered_json meta;
  meta["tool"] = std::string(kToolName);
  meta["version"] = std::string(kToolVersion);
  meta["command"] = std::string(command);
  meta["args"] = args;
  return meta;
}

AtomicWriter::AtomicWriter(std::string path)
    : path_(std::move(path)), tmp_path_(path_ + ".tmp") {
  out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open " + tmp_path_ + " for writing");
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_path_, ec);
  }
}

void AtomicWriter::Commit() {
  out_.flush();
  if (!out_) throw IoError("write to " + tmp_path_ + " failed");
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_path_, path_, ec);
  if (ec) {
    throw IoError("cannot rename " + tmp_path_ + " to " + path_ + ": " +
                  ec.message());
  }
  committed_ = true;
}

void WriteFileAtomic(const std::string& path, std::string_view content) {
  AtomicWriter w(path);
  w.stream() << content;
  w.Commit();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ordsup
