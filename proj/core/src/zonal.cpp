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

#include "sphiso/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sphiso/csv.hpp"

namespace sphiso {

LatitudeGrid::LatitudeGrid(Sphere sphere, int cells) : sphere_(sphere)
{
    if (cells < 1)
        throw DomainError("LatitudeGrid: need at least one cell");
    double const n = cells;
    boundaries_.resize(cells + 1);
    midpoints_.resize(cells);
    boundaries_.front() = 0;
    boundaries_.back() = pi;
    for (int k = 1; k < cells; ++k)
        boundaries_[k] = cap_angle(sphere_, k / n);
    for (int k = 0; k < cells; ++k)
        midpoints_[k] = cap_angle(sphere_, (k + 0.5) / n);
    log_cell_ = LogMeasure{log_sphere_area(sphere_).log_value - std::log(n)};
}

GridPtr make_grid(Sphere sphere, int cells)
{
    return std::make_shared<LatitudeGrid const>(sphere, cells);
}

//---------------------------------------------------------------------------//

double pairwise_sum(std::span<double const> values)
{
    if (values.size() <= 16)
    {
        double sum = 0;
        for (double v : values)
            sum += v;
        return sum;
    }
    auto const half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ZonalFunction::ZonalFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (!grid_)
        throw DomainError("ZonalFunction: missing grid");
    if (values_.size() != static_cast<std::size_t>(grid_->size()))
        throw DomainError("ZonalFunction: value count must equal the cell count");
    for (double v : values_)
    {
        if (!std::isfinite(v))
            throw DomainError("ZonalFunction: values must be finite");
    }
}

ZonalFunction::ZonalFunction(GridPtr grid, double value)
    : ZonalFunction(grid, std::vector<double>(grid ? grid->size() : 0, value))
{
}

double ZonalFunction::integral() const
{
    return integral_prefix(size());
}

double ZonalFunction::integral_prefix(int cells) const
{
    cells = std::clamp(cells, 0, size());
    return pairwise_sum(std::span(values_).first(cells)) * grid_->cell_measure();
}

double ZonalFunction::max_abs() const
{
    double result = 0;
    for (double v : values_)
        result = std::max(result, std::fabs(v));
    return result;
}

void require_same_grid(ZonalFunction const& a, ZonalFunction const& b)
{
    if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid()))
        throw DomainError("zonal functions live on different grids");
}

void write_zonal_csv(std::ostream& os, ZonalFunction const& f)
{
    CsvTable table;
    table.columns = {"cell_index", "latitude_midpoint", "value"};
    auto mids = f.grid().midpoints();
    for (int i = 0; i < f.size(); ++i)
        table.add_row({std::int64_t{i}, mids[i], f[i]});
    table.write(os);
}

}  // namespace sphiso
