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

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "sphiso/specfun.hpp"

namespace sphiso {

//---------------------------------------------------------------------------//
/*!
 * Partition of latitude [0, pi] into cells of equal nu-measure.
 *
 * Boundary k is cap_angle(k/N) and the representative latitude of cell k is
 * its nu-median cap_angle((k + 1/2)/N). Every cell carries mu(S)/N, so a
 * symmetric decreasing rearrangement on this grid is a plain sort.
 */
class LatitudeGrid
{
  public:
    LatitudeGrid(Sphere sphere, int cells);

    Sphere const& sphere() const noexcept { return sphere_; }
    int size() const noexcept { return static_cast<int>(midpoints_.size()); }

    std::span<double const> boundaries() const noexcept { return boundaries_; }
    std::span<double const> midpoints() const noexcept { return midpoints_; }

    LogMeasure log_cell_measure() const noexcept { return log_cell_; }
    double cell_measure() const { return log_cell_.value(); }

    friend bool operator==(LatitudeGrid const& a, LatitudeGrid const& b)
    {
        return a.sphere_ == b.sphere_ && a.size() == b.size();
    }

  private:
    Sphere sphere_;
    std::vector<double> boundaries_;
    std::vector<double> midpoints_;
    LogMeasure log_cell_;
};

using GridPtr = std::shared_ptr<LatitudeGrid const>;

GridPtr make_grid(Sphere sphere, int cells);

//---------------------------------------------------------------------------//
/*!
 * Function of the angle to a fixed pole, one value per grid cell.
 */
class ZonalFunction
{
  public:
    ZonalFunction(GridPtr grid, std::vector<double> values);
    //! Constant function
    ZonalFunction(GridPtr grid, double value);

    LatitudeGrid const& grid() const noexcept { return *grid_; }
    GridPtr const& grid_ptr() const noexcept { return grid_; }
    std::span<double const> values() const noexcept { return values_; }
    int size() const noexcept { return static_cast<int>(values_.size()); }
    double operator[](std::size_t i) const { return values_[i]; }

    //! Sum of value times cell measure over all cells
    double integral() const;
    //! Same, over the first cells cells only
    double integral_prefix(int cells) const;

    double max_abs() const;

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

//! Pairwise summation in a fixed order, identical run to run
double pairwise_sum(std::span<double const> values);

//! Throws DomainError unless both functions live on the same grid
void require_same_grid(ZonalFunction const& a, ZonalFunction const& b);

//! CSV with columns cell_index, latitude_midpoint, value
void write_zonal_csv(std::ostream& os, ZonalFunction const& f);

}  // namespace sphiso
