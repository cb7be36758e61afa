// Copyright 2026 The ACE Authors.
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

#ifndef ACE_CORE_CSV_HPP_
#define ACE_CORE_CSV_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ace::csv {

// 17 significant digits so every double round-trips. Non-finite values
// print as "nan", "inf" and "-inf".
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);
std::string format_optional(const std::optional<std::int64_t>& value);

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are wrapped
// in double quotes with inner quotes doubled.
std::string escape(std::string_view field);

// Writes one CRLF-terminated record.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Splits RFC 4180 text into records. Used by audits that read traces back.
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace ace::csv

#endif  // ACE_CORE_CSV_HPP_
