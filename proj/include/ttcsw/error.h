// Copyright 2026 The ttcsw Authors.
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

#ifndef TTCSW_ERROR_H_
#define TTCSW_ERROR_H_

#include <stdexcept>
#include <string>

namespace ttcsw {

// Process exit statuses shared by every CLI verb.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitBackend = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Bad command line or configuration.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what, kExitUsage) {}
};

// Missing or malformed input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what, kExitData) {}
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what) : Error(what, kExitBackend) {}
};

// Network failure or timeout after all retries were spent.
class TransportError : public BackendError {
 public:
  using BackendError::BackendError;
};

// The peer answered, but not in the wire format (or with 422).
class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Replay mode found no cached response for a request.
class CacheMissError : public BackendError {
 public:
  using BackendError::BackendError;
};

}  // namespace ttcsw

#endif  // TTCSW_ERROR_H_
