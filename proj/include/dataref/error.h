// Copyright 2026 The dataref Authors
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

#ifndef DATAREF_ERROR_H_
#define DATAREF_ERROR_H_

#include <stdexcept>
#include <string>

namespace dataref {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (e.g. idf with df > N).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

}  // namespace dataref

#endif  // DATAREF_ERROR_H_
