// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace finconsist {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Lowercase hex SHA-256 of a file's bytes. Throws Error(kIo).
std::string sha256_file(const std::filesystem::path& path);

}  // namespace finconsist
