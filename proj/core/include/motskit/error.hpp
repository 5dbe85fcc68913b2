// Copyright 2026 The motskit Authors
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

#ifndef MOTSKIT_ERROR_HPP_
#define MOTSKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mots {

// Raised when external input (RLE strings, annotation files, PFM/flo/JSON
// payloads) is malformed. Distinct from std::invalid_argument, which is
// reserved for violated call contracts.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when structurally valid data breaks a domain invariant, e.g.
// overlapping instance masks in one frame or mismatched frame ranges
// between ground truth and predictions.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mots

#endif  // MOTSKIT_ERROR_HPP_
