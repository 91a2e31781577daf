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

#include <span>
#include <vector>

#include "sphiso/geometry.hpp"
#include "sphiso/random.hpp"

namespace sphiso {

//! Haar-uniform point: a normalized standard Gaussian vector scaled to R
SpherePoint sample_sphere(Sphere const& sphere, RandomStream& stream);

/*!
 * Uniform point in Cap(pole, theta).
 *
 * The latitude is drawn by inverting the cap CDF at u * cap_fraction(theta)
 * with cap_angle; the direction within the latitude slice is uniform; the
 * frame is then reflected so e_1 lands on the pole.
 */
SpherePoint sample_cap(CapSpec const& cap, RandomStream& stream);

/*!
 * Apply the Householder reflection that maps e_1 to the unit vector pole.
 *
 * The reflection is through the bisector of e_1 and pole, costing O(m).
 */
void reflect_e1_to(std::span<double const> unit_pole, std::span<double> x);

//---------------------------------------------------------------------------//
/*!
 * Repeated uniform sampling from caps of one fixed angle.
 *
 * Produces the same distribution and consumes the same random numbers as
 * sample_cap, but inverts the latitude CDF by safeguarded Newton iteration
 * from a precomputed table instead of bisection, which makes inner Monte
 * Carlo loops affordable. Poles vary per call.
 */
class CapSampler
{
  public:
    CapSampler(Sphere sphere, double theta);

    Sphere const& sphere() const noexcept { return sphere_; }
    double theta() const noexcept { return theta_; }

    //! Latitude whose conditional CDF within the cap equals u
    double latitude(double u) const;

    SpherePoint operator()(SpherePoint const& pole, RandomStream& stream) const;

  private:
    double log_density(double phi) const;

    Sphere sphere_;
    double theta_;
    double log_cap_;
    double log_norm_;
    std::vector<double> table_;
    std::vector<double> slope_;
};

}  // namespace sphiso
