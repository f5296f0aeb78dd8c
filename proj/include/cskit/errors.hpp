// Copyright (c) 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSKIT_ERRORS_HPP_
#define CSKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cskit {

// Base class for all toolkit errors. Every failure mode a caller is meant
// to handle has its own subclass so tests and the CLI can branch on type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input (bad magic, malformed header, truncated body).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input in a shape this toolkit does not handle.
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public Error {
 public:
  using Error::Error;
};

class MissingAlignment : public Error {
 public:
  using Error::Error;
};

class AlignmentMismatch : public Error {
 public:
  using Error::Error;
};

// Numerically unusable data (NaN/Inf, zero norms, degenerate matrices).
class DataError : public Error {
 public:
  using Error::Error;
};

class DegenerateData : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyPool : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class MissingAsset : public Error {
 public:
  using Error::Error;
};

class CollisionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cskit

#endif  // CSKIT_ERRORS_HPP_
