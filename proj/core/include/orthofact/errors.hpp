// Copyright 2026 The orthofact authors.
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

namespace orthofact {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-conforming matrix shapes (hard error, never a silent broadcast).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Negative entries where non-negativity is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed numeric data or ragged rows in a matrix file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Instance filename does not match the dataset naming grammar.
class FilenameError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace orthofact
