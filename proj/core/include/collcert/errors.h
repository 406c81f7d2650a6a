// Copyright 2026 The collcert Authors
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

#ifndef COLLCERT_ERRORS_H_
#define COLLCERT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace collcert {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input: bad files, violated invariants,
// out-of-range parameters. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// The base-certificate oracle handed to the front computation contradicted
// the monotonicity assumption.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

}  // namespace collcert

#endif  // COLLCERT_ERRORS_H_
