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

#ifndef ZIPTRACE_STATUS_MACROS_H_
#define ZIPTRACE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define ZT_RETURN_IF_ERROR(expr)             \
  do {                                       \
    const absl::Status _zt_status = (expr);  \
    if (!_zt_status.ok()) return _zt_status; \
  } while (0)

#define ZT_CONCAT_INNER(a, b) a##b
#define ZT_CONCAT(a, b) ZT_CONCAT_INNER(a, b)

#define ZT_ASSIGN_OR_RETURN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                             \
  if (!statusor.ok()) return statusor.status();        \
  lhs = std::move(statusor).value()

#define ZT_ASSIGN_OR_RETURN(lhs, rexpr) \
  ZT_ASSIGN_OR_RETURN_IMPL(ZT_CONCAT(_zt_statusor_, __LINE__), lhs, rexpr)

#endif  // ZIPTRACE_STATUS_MACROS_H_
