// Copyright 2026 The actag Authors.
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

#ifndef ACTAG_ERROR_H_
#define ACTAG_ERROR_H_

#include <stdexcept>
#include <string>

namespace actag {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed resource or data file, unknown tag, misaligned evaluation input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Model file written by an incompatible format version.
class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

// A class sequence that has zero probability under the model.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace actag

#endif  // ACTAG_ERROR_H_
