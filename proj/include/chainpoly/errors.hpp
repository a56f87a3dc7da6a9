// Copyright 2026 The chainpoly Authors.
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chainpoly {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a precondition (wrong subset width, out-of-range id, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a configured work or size budget.
class SizeCapError : public Error {
 public:
  SizeCapError(const std::string& what, std::uint64_t required,
               std::uint64_t cap)
      : Error(what), required_(required), cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// An operation's mathematical hypothesis does not hold for its input
/// (element is a loop or coloop, matroid or graph is not simple).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input. `path()` locates the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace chainpoly
