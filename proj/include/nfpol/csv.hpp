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

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace nfpol {

/// Locale-independent rendering with `digits`
/// significant digits (printf %g semantics). Negative zero prints as "0".
std::string format_number(double value, int digits = 9);

/// Comma-separated rows terminated by LF.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

    /// Throws std::logic_error when the value count differs from the header.
    void row(std::initializer_list<double> values);

private:
    std::ostream& out_;
    std::size_t columns_;
};

}  // namespace nfpol
