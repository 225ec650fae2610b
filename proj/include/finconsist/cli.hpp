// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <span>
#include <string>

namespace finconsist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or data failure
inline constexpr int kExitUsage = 2;

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnv = "FINCONSIST_CONFIG";

/// Runs one subcommand. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace finconsist::cli
