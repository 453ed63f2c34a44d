// Copyright 2026 The qteleport Authors
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


// Byte-stable number formatting shared by CSV writers and session logs.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <system_error>

#include "qteleport/errors.hpp"

namespace qtele {

/// Shortest general-format rendering with 12 significant digits. Never
/// emits "-0"; non-finite input is rejected.
inline std::string format_number(double x, int digits = 12) {
  detail::require(std::isfinite(x), "format_number: non-finite value");
  if (x == 0.0) x = 0.0;  // folds -0.0
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  detail::require(res.ec == std::errc{}, "format_number: conversion failed");
  std::string s(buf, res.ptr);
  if (s == "-0") s = "0";
  return s;
}

inline std::string format_hex_byte(std::uint8_t b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  return std::string{'0', 'x', kDigits[b >> 4], kDigits[b & 0xF]};
}

}  // namespace qtele
