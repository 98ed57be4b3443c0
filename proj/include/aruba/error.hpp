/*
 * Copyright 2026 The Aruba Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace aruba {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid configuration or hyperparameter (maps to a usage error in the CLI).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structurally malformed input (e.g. broken JSON); carries a byte offset
/// where the parser gave up.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parses but violates the expected schema (missing key, wrong type).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A single record is invalid; the message names the file/line or record id.
class RecordError : public Error {
 public:
  using Error::Error;
};

/// The data as a whole cannot be processed (empty dataset, duplicate ids,
/// diverged computation).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace aruba
