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

#include "sphiso/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sphiso {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string quote(std::string const& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CellPrinter
{
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(std::string const& v) const { return quote(v); }
};

}  // namespace

void CsvTable::add_row(std::vector<CsvCell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << quote(columns[i]);
    os << '\n';
    for (auto const& row : rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << std::visit(CellPrinter{}, row[i]);
        os << '\n';
    }
}

std::string CsvTable::str() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace sphiso
