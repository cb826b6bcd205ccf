// include/pronscore/common/error.h

// Copyright 2026  The pronscore Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PRONSCORE_COMMON_ERROR_H_
#define PRONSCORE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace pronscore {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data or configuration. CLI exit code 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Unrecoverable condition. CLI exit code 3.
class FatalError : public Error {
 public:
  explicit FatalError(const std::string& msg) : Error(msg) {}
};

// Some units of work failed but others completed. CLI exit code 2.
class PartialFailure : public Error {
 public:
  explicit PartialFailure(const std::string& msg) : Error(msg) {}
};

// Audio shorter than one encoder frame.
class TooShortAudioError : public ValidationError {
 public:
  explicit TooShortAudioError(const std::string& msg) : ValidationError(msg) {}
};

// Pearson correlation requested on a zero-variance argument.
class UndefinedCorrelationError : public ValidationError {
 public:
  explicit UndefinedCorrelationError(const std::string& msg)
      : ValidationError(msg) {}
};

}  // namespace pronscore

#endif  // PRONSCORE_COMMON_ERROR_H_
