// Copyright 2026 The latentprop Authors
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

#ifndef LATENTPROP_ERROR_HPP_
#define LATENTPROP_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latentprop {

// Error categories. The numeric values are mirrored by lprop_status in the
// C API header; keep them in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kIo = 3,
  kNotFound = 4,
  kEmpty = 5,
  kDimensionMismatch = 6,
  kMissingFeature = 7,
  kRankDeficient = 8,
  kInfeasible = 9,
  kUndefined = 10,
  kInternal = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RankDeficientError : public Error {
 public:
  RankDeficientError(std::size_t achieved, std::size_t requested)
      : Error(ErrorCode::kRankDeficient,
              "correspondence analysis achieved rank " +
                  std::to_string(achieved) + " but " +
                  std::to_string(requested) + " dimensions were requested"),
        achieved_(achieved) {}
  std::size_t achieved_rank() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

}  // namespace latentprop

#endif  // LATENTPROP_ERROR_HPP_
