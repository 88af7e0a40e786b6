/*
 * Copyright 2026 The VCLP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VCLP_ERRORS_H_
#define VCLP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vclp {

// Malformed or semantically invalid input data (event files, reports,
// model dumps).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A learning task that cannot be fit: no positive instances or a single
// class.
class UntrainableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vclp

#endif  // VCLP_ERRORS_H_
