// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace finconsist {

/// Whole file as bytes. Throws Error(kIo).
std::string read_file(const std::filesystem::path& path);

/// Replaces the file's contents. Throws Error(kIo).
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace finconsist
