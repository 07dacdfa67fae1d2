// Copyright 2026 The vrpq Authors
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

#include "vrpq/errors.hpp"

namespace vrpq {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Format: return "format error";
    case ErrorKind::Resource: return "resource error";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Contract: return "contract error";
  }
  return "error";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace vrpq
