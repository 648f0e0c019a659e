// Copyright 2026 The nfpol Authors
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

#include "nfpol/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace nfpol {

std::string format_number(double value, int digits) {
    if (value == 0.0) return "0";
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
    if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out), columns_(header.size()) {
    bool first = true;
    for (const auto name : header) {
        if (!first) out_ << ',';
        out_ << name;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    if (values.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    bool first = true;
    for (const double v : values) {
        if (!first) out_ << ',';
        out_ << format_number(v);
        first = false;
    }
    out_ << '\n';
}

}  // namespace nfpol
