/*
 * Copyright 2026 The WGPOM Authors
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

#ifndef WGPOM_COMMON_H_
#define WGPOM_COMMON_H_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace wgpom {

using Point2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;
using Matrix3 = Eigen::Matrix3d;

enum class ErrorCode {
  kInvalidInput,
  kIllConditioned,
  kOptimizationFailed,
  kNoBracket,
  kEmptyDataset,
  kUndefinedAuc,
  kInvalidState,
  kInvalidPose,
  kIo,
  kConfig,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kIllConditioned: return "ill-conditioned";
    case ErrorCode::kOptimizationFailed: return "optimization failed";
    case ErrorCode::kNoBracket: return "no bracket";
    case ErrorCode::kEmptyDataset: return "empty dataset";
    case ErrorCode::kUndefinedAuc: return "undefined AUC";
    case ErrorCode::kInvalidState: return "invalid state";
    case ErrorCode::kInvalidPose: return "invalid pose";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kConfig: return "config error";
  }
  return "error";
}

// All library failures are reported through this type; `code()` identifies
// the failure class so callers can map it to exit codes or table cells.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline bool IsFinite(const Point2& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y());
}

// SplitMix64 step; used to derive independent per-entry seeds.
inline uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  return MixSeed(MixSeed(MixSeed(seed) ^ a) ^ b);
}

}  // namespace wgpom

#endif  // WGPOM_COMMON_H_
