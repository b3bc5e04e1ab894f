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

#ifndef ORDSUP_ERRORS_H_
#define ORDSUP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordsup {

// Base of every data error raised by the library. The CLI maps these to exit
// code 2; anything else escaping a subcommand is an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotABijection : public Error {
 public:
  NotABijection(std::size_t position, const std::string& what)
      : Error(what), position_(position) {}
  // 1-indexed position of the offending entry.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidLehmerCode : public Error {
 public:
  using Error::Error;
};

class InvalidHammingEmbedding : public Error {
 public:
  using Error::Error;
};

class SetSizeTooLarge : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class StepCountMismatch : public Error {
 public:
  using Error::Error;
};

class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteLoss : public Error {
 public:
  NonFiniteLoss(long step, const std::string& what)
      : Error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class KeyMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ordsup

#endif  // ORDSUP_ERRORS_H_
