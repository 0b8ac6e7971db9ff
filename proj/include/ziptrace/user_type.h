// Copyright 2026 The ziptrace Authors
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

#ifndef ZIPTRACE_USER_TYPE_H_
#define ZIPTRACE_USER_TYPE_H_

#include <array>
#include <optional>
#include <string_view>

namespace ziptrace {

// Behavioural class from predictability (P / nP) and mixing (M / nM).
enum class UserType {
  kPredictableMixing = 0,       // P/M
  kUnpredictableMixing = 1,     // nP/M
  kPredictableNonMixing = 2,    // P/nM
  kUnpredictableNonMixing = 3,  // nP/nM
};

inline constexpr std::array<UserType, 4> kAllUserTypes = {
    UserType::kPredictableMixing, UserType::kUnpredictableMixing,
    UserType::kPredictableNonMixing, UserType::kUnpredictableNonMixing};

inline constexpr bool IsPredictable(UserType t) {
  return t == UserType::kPredictableMixing ||
         t == UserType::kPredictableNonMixing;
}

inline constexpr bool IsMixing(UserType t) {
  return t == UserType::kPredictableMixing ||
         t == UserType::kUnpredictableMixing;
}

inline constexpr UserType MakeUserType(bool predictable, bool mixing) {
  if (predictable) {
    return mixing ? UserType::kPredictableMixing
                  : UserType::kPredictableNonMixing;
  }
  return mixing ? UserType::kUnpredictableMixing
                : UserType::kUnpredictableNonMixing;
}

inline constexpr std::string_view UserTypeLabel(UserType t) {
  switch (t) {
    case UserType::kPredictableMixing:
      return "P/M";
    case UserType::kUnpredictableMixing:
      return "nP/M";
    case UserType::kPredictableNonMixing:
      return "P/nM";
    case UserType::kUnpredictableNonMixing:
      return "nP/nM";
  }
  return "?";
}

inline std::optional<UserType> ParseUserType(std::string_view label) {
  for (UserType t : kAllUserTypes) {
    if (UserTypeLabel(t) == label) return t;
  }
  return std::nullopt;
}

// Fractions indexed by `UserType`.
using TypeMix = std::array<double, 4>;

}  // namespace ziptrace

#endif  // ZIPTRACE_USER_TYPE_H_
