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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sphiso {

//! Raised when an argument lies outside the mathematical domain of an op.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

//---------------------------------------------------------------------------//
/*!
 * The sphere S^{m-1} of radius R embedded in R^m.
 *
 * m is the ambient dimension, so m = 3 is the ordinary 2-sphere. The surface
 * measure is normalized to the usual area, 2 pi^{m/2} / Gamma(m/2) R^{m-1}.
 */
class Sphere
{
  public:
    explicit Sphere(int dim, double radius = 1.0);

    int dim() const noexcept { return dim_; }
    double radius() const noexcept { return radius_; }

    friend bool operator==(Sphere const&, Sphere const&) = default;

  private:
    int dim_;
    double radius_;
};

//---------------------------------------------------------------------------//
/*!
 * Natural log of a nonnegative measure; -inf encodes measure zero.
 *
 * Cap measures underflow double precision long before m reaches 10^3, so
 * every measure crosses module boundaries in this form. Use value() only
 * when the caller knows the result is representable.
 */
struct LogMeasure
{
    double log_value{neg_inf};

    double value() const { return std::exp(log_value); }
    bool is_zero() const { return log_value == neg_inf; }

    static LogMeasure from_value(double v);
};

// Log-domain arithmetic helpers
double log_add_exp(double a, double b);
//! log(exp(a) - exp(b)) for a >= b
double log_sub_exp(double a, double b);
//! log(1 - exp(a)) for a <= 0
double log1m_exp(double a);
//! Thread-safe log|Gamma(x)| for x > 0
double log_gamma(double x);
double log_beta(double a, double b);

//---------------------------------------------------------------------------//
// Measures
//---------------------------------------------------------------------------//

//! log mu(S^{m-1}) = log(2 pi^{m/2} / Gamma(m/2) R^{m-1})
LogMeasure log_sphere_area(Sphere const& sphere);

//! Regularized incomplete beta I_x(a, b)
double reg_inc_beta(double x, double a, double b);
//! log I_x(a, b), accurate when the value underflows
double log_reg_inc_beta(double x, double a, double b);

/*!
 * Normalized measure of a geodesic cap of angle theta.
 *
 * Computed as I_{sin^2 theta}((m-1)/2, 1/2) / 2 for theta <= pi/2 and by
 * antipodal reflection otherwise, so values near 1 carry no cancellation.
 */
double cap_fraction(Sphere const& sphere, double theta);
double log_cap_fraction(Sphere const& sphere, double theta);

//! Angle of the cap with normalized measure p (inverse of cap_fraction)
double cap_angle(Sphere const& sphere, double p);
//! Same as cap_angle, taking log p so tiny measures resolve exactly
double cap_angle_from_log(Sphere const& sphere, double log_p);

//! log of the normalized latitude density sin^{m-2}(phi) / B((m-1)/2, 1/2)
double log_latitude_density(Sphere const& sphere, double phi);

/*!
 * log of the latitude measure density d nu / d phi = A_{m-2}(R sin phi) R.
 *
 * Integrating exp of this over [0, pi] gives the sphere area. Returns -inf at
 * the poles for m >= 3.
 */
LogMeasure nu_log_weight(Sphere const& sphere, double phi);

}  // namespace sphiso
