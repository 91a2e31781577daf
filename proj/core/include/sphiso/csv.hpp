/*
   Copyright 2026 The sphiso Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace sphiso {

//! Shortest round-trip-safe text for a double: 17 significant digits
std::string format_double(double value);

using CsvCell = std::variant<std::int64_t, double, bool, std::string>;

//! Header plus rows; booleans print as 0/1 and strings are quoted as needed.
struct CsvTable
{
    std::vector<std::string> columns;
    std::vector<std::vector<CsvCell>> rows;

    void add_row(std::vector<CsvCell> row);
    void write(std::ostream& os) const;
    std::string str() const;
};

}  // namespace sphiso
