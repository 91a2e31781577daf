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

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sphiso/specfun.hpp"

namespace sphiso {

//! Raised by theorem1_V when theta + omega <= pi/2.
class TrivialIntersectionError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//---------------------------------------------------------------------------//
/*!
 * A point on a sphere, stored in ambient coordinates.
 *
 * The Euclidean norm equals R to 1e-9 relative; construction through
 * normalized() rescales arbitrary nonzero vectors onto the sphere.
 */
class SpherePoint
{
  public:
    SpherePoint(Sphere sphere, std::vector<double> coords);

    static SpherePoint normalized(Sphere sphere, std::vector<double> coords);
    //! sign * R * e_k
    static SpherePoint axis(Sphere sphere, int k, int sign = 1);

    Sphere const& sphere() const noexcept { return sphere_; }
    std::span<double const> coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }

    //! Antipode -z
    SpherePoint antipode() const;
    //! Index k when the point is +-R e_k exactly
    std::optional<int> axis_index() const;

  private:
    Sphere sphere_;
    std::vector<double> coords_;
};

//! <z/R, y/R>, clamped to [-1, 1]
double unit_dot(SpherePoint const& z, SpherePoint const& y);

//! Great-circle angle arccos(<z/R, y/R>) in [0, pi]
double geodesic_angle(SpherePoint const& z, SpherePoint const& y);

//! Geodesic ball {z : angle(pole, z) <= theta}
struct CapSpec
{
    SpherePoint pole;
    double theta;

    CapSpec(SpherePoint pole, double theta);
};

//---------------------------------------------------------------------------//
// Cap intersections
//---------------------------------------------------------------------------//

/*!
 * Log of the fraction of the latitude-phi slice about z0 lying in Cap(y0,
 * omega), where angle(z0, y0) = alpha.
 *
 * The slice is an (m-2)-sphere; the fraction is the cap fraction at the
 * half-angle arccos((cos omega - cos phi cos alpha) / (sin phi sin alpha)),
 * clamped to the empty or full slice when the argument leaves [-1, 1].
 */
double log_slice_fraction(Sphere const& sphere, double phi, double alpha, double omega);

//! Normalized measure of Cap(z0, theta) intersect Cap(y0, omega), angle(z0, y0) = alpha
double cap_intersection_fraction(Sphere const& sphere,
                                 double theta,
                                 double omega,
                                 double alpha);
double log_cap_intersection_fraction(Sphere const& sphere,
                                     double theta,
                                     double omega,
                                     double alpha);

/*!
 * Surface measure V of two caps of angles theta and omega with orthogonal
 * poles. Requires theta + omega > pi/2; otherwise the intersection is not the
 * regime of interest and TrivialIntersectionError is thrown.
 */
LogMeasure theorem1_V(Sphere const& sphere, double theta, double omega);

}  // namespace sphiso
