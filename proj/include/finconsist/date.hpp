// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace finconsist {

using Date = std::chrono::year_month_day;

/// Strict `YYYY-MM-DD`. Returns nullopt for anything else, including
/// impossible dates such as 2017-02-30.
std::optional<Date> parse_iso_date(std::string_view text);

std::string to_iso(Date date);

/// Signed number of calendar days from `from` to `to`.
int days_between(Date from, Date to);

Date add_days(Date date, int days);

}  // namespace finconsist
