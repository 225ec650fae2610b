// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace finconsist {

#ifdef FINCONSIST_VERSION
inline constexpr std::string_view kVersion = FINCONSIST_VERSION;
#else
inline constexpr std::string_view kVersion = "0.0.0";
#endif

inline constexpr std::string_view kToolName = "finconsist";

}  // namespace finconsist
