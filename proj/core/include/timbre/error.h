// Copyright 2026 The Timbre Align Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TIMBRE_ERROR_H_
#define TIMBRE_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace timbre {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input (manifests, audio, tensors). `source` names
// the offending file and `field` the offending key or record when known.
class InputError : public Error {
 public:
  InputError(std::string source, std::string field, const std::string& what)
      : Error(source + (field.empty() ? "" : " [" + field + "]") + ": " + what),
        source_(std::move(source)),
        field_(std::move(field)) {}

  const std::string& source() const { return source_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::string field_;
};

// Operands with incompatible shapes or dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A length strategy or operation that does not apply to a representation.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace timbre

#endif  // TIMBRE_ERROR_H_
