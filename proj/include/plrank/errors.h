// Copyright 2026 The plrank Authors
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

#ifndef PLRANK_ERRORS_H_
#define PLRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace plrank {

// Argument violates a precondition (bad index, duplicate, out of bounds).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request exceeds what the input can supply (too few pixels, K too large).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares alignment has a singular normal matrix.
class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric has no retained terms to average over.
class UndefinedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plrank

#endif  // PLRANK_ERRORS_H_
