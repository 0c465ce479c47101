/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef CBNORM_ERROR_HPP_
#define CBNORM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cbnorm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated: shape mismatch, non-unit vector, non-Hermitian input.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative decomposition did not produce a usable result.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (JSON syntax, wrong value types).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input whose contents are inconsistent (e.g. wrong dimensions).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A configured enumeration or size cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cbnorm

#endif  // CBNORM_ERROR_HPP_
