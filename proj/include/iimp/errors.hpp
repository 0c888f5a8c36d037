// Copyright 2026 The iimp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace iimp {

/// Error categories. The numeric values are mirrored by iimp_status in the C API.
enum class ErrorCode : int {
  Shape = 1,
  Sizing = 2,
  Numerical = 3,
  Parameter = 4,
  DegenerateReference = 5,
  UndetectableOrder = 6,
  OrderMismatch = 7,
  Underflow = 8,
  Step = 9,
  Truncation = 10,
  Config = 11,
  Io = 12,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorCode::Shape, what) {}
};

class SizingError : public Error {
 public:
  explicit SizingError(const std::string& what) : Error(ErrorCode::Sizing, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCode::Numerical, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorCode::Parameter, what) {}
};

class DegenerateReferenceError : public Error {
 public:
  explicit DegenerateReferenceError(const std::string& what)
      : Error(ErrorCode::DegenerateReference, what) {}
};

class UndetectableOrderError : public Error {
 public:
  explicit UndetectableOrderError(const std::string& what)
      : Error(ErrorCode::UndetectableOrder, what) {}
};

/// Which side of a target/reference pair had a vanishing derivative.
enum class Side { Target, Reference };

class OrderMismatchError : public Error {
 public:
  OrderMismatchError(Side vanished, int order, const std::string& what)
      : Error(ErrorCode::OrderMismatch, what), vanished_(vanished), order_(order) {}
  Side vanished() const noexcept { return vanished_; }
  /// Order at which the other side was first nonzero.
  int order() const noexcept { return order_; }

 private:
  Side vanished_;
  int order_;
};

class UnderflowError : public Error {
 public:
  explicit UnderflowError(const std::string& what) : Error(ErrorCode::Underflow, what) {}
};

class StepError : public Error {
 public:
  explicit StepError(const std::string& what) : Error(ErrorCode::Step, what) {}
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error(ErrorCode::Truncation, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace iimp
