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

#include "sphiso/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "sphiso/quadrature.hpp"

namespace sphiso {

namespace {

double norm(std::span<double const> v)
{
    double sum = 0;
    for (double x : v)
        sum += x * x;
    return std::sqrt(sum);
}

void check_angle(double x, char const* who)
{
    if (!(x >= 0 && x <= pi))
        throw DomainError(std::string(who) + ": angles must lie in [0, pi]");
}

}  // namespace

SpherePoint::SpherePoint(Sphere sphere, std::vector<double> coords)
    : sphere_(sphere), coords_(std::move(coords))
{
    if (coords_.size() != static_cast<std::size_t>(sphere_.dim()))
        throw DomainError("SpherePoint: coordinate count must equal the ambient dimension");
    double const r = norm(coords_);
    if (!(std::fabs(r - sphere_.radius()) <= 1e-9 * sphere_.radius()))
        throw DomainError("SpherePoint: point does not lie on the sphere");
}

SpherePoint SpherePoint::normalized(Sphere sphere, std::vector<double> coords)
{
    double const r = norm(coords);
    if (!(r > 0) || !std::isfinite(r))
        throw DomainError("SpherePoint: cannot normalize a zero or non-finite vector");
    double const scale = sphere.radius() / r;
    for (double& x : coords)
        x *= scale;
    return SpherePoint(sphere, std::move(coords));
}

SpherePoint SpherePoint::axis(Sphere sphere, int k, int sign)
{
    if (k < 0 || k >= sphere.dim())
        throw DomainError("SpherePoint: axis index out of range");
    if (sign != 1 && sign != -1)
        throw DomainError("SpherePoint: axis sign must be +1 or -1");
    std::vector<double> coords(sphere.dim(), 0.0);
    coords[k] = sign * sphere.radius();
    return SpherePoint(sphere, std::move(coords));
}

SpherePoint SpherePoint::antipode() const
{
    std::vector<double> flipped(coords_.begin(), coords_.end());
    for (double& x : flipped)
        x = -x;
    return SpherePoint(sphere_, std::move(flipped));
}

std::optional<int> SpherePoint::axis_index() const
{
    std::optional<int> found;
    for (std::size_t i = 0; i < coords_.size(); ++i)
    {
        if (coords_[i] == 0)
            continue;
        if (found || std::fabs(coords_[i]) != sphere_.radius())
            return std::nullopt;
        found = static_cast<int>(i);
    }
    return found;
}

double unit_dot(SpherePoint const& z, SpherePoint const& y)
{
    if (!(z.sphere() == y.sphere()))
        throw DomainError("geodesic_angle: points lie on different spheres");
    auto a = z.coords();
    auto b = y.coords();
    double const dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    double const r = z.sphere().radius();
    return std::clamp(dot / (r * r), -1.0, 1.0);
}

double geodesic_angle(SpherePoint const& z, SpherePoint const& y)
{
    return std::acos(unit_dot(z, y));
}

CapSpec::CapSpec(SpherePoint p, double t) : pole(std::move(p)), theta(t)
{
    check_angle(theta, "CapSpec");
}

//---------------------------------------------------------------------------//

double log_slice_fraction(Sphere const& sphere, double phi, double alpha, double omega)
{
    // Nearest and farthest points of the slice from y0
    double const nearest = std::fabs(phi - alpha);
    double const farthest = std::min(phi + alpha, 2 * pi - phi - alpha);
    if (nearest > omega)
        return neg_inf;
    if (farthest <= omega)
        return 0;

    double const denom = std::sin(phi) * std::sin(alpha);
    double const c = (std::cos(omega) - std::cos(phi) * std::cos(alpha)) / denom;
    if (!(c < 1))
        return neg_inf;
    if (!(c > -1))
        return 0;
    if (sphere.dim() == 2)
    {
        // The slice is the 0-sphere: two equally weighted points
        return -std::numbers::ln2;
    }
    return log_cap_fraction(Sphere(sphere.dim() - 1), std::acos(c));
}

double log_cap_intersection_fraction(Sphere const& sphere,
                                     double theta,
                                     double omega,
                                     double alpha)
{
    check_angle(theta, "cap_intersection_fraction");
    check_angle(omega, "cap_intersection_fraction");
    check_angle(alpha, "cap_intersection_fraction");

    if (alpha == 0)
        return log_cap_fraction(sphere, std::min(theta, omega));
    if (alpha == pi)
    {
        // Cap(-z0, omega) is the latitude interval [pi - omega, pi]
        double const lower = pi - omega;
        if (theta <= lower)
            return neg_inf;
        return log_sub_exp(log_cap_fraction(sphere, theta),
                           log_cap_fraction(sphere, lower));
    }

    double const lo = std::max(0.0, alpha - omega);
    double const hi = std::min(theta, alpha + omega);
    if (!(hi > lo))
        return neg_inf;

    std::array<double, 4> const breaks{
        alpha - omega, alpha + omega, omega - alpha, 2 * pi - omega - alpha};
    auto integrand = [&](double phi) {
        double const slice = log_slice_fraction(sphere, phi, alpha, omega);
        if (slice == neg_inf)
            return neg_inf;
        return log_latitude_density(sphere, phi) + slice;
    };
    double const result = log_integrate(integrand, lo, hi, breaks);
    return std::min(result, 0.0);
}

double cap_intersection_fraction(Sphere const& sphere,
                                 double theta,
                                 double omega,
                                 double alpha)
{
    return std::exp(log_cap_intersection_fraction(sphere, theta, omega, alpha));
}

LogMeasure theorem1_V(Sphere const& sphere, double theta, double omega)
{
    check_angle(theta, "theorem1_V");
    check_angle(omega, "theorem1_V");
    if (!(theta + omega > pi / 2))
    {
        throw TrivialIntersectionError(
            "theorem1_V: requires theta + omega > pi/2");
    }
    return LogMeasure{log_cap_intersection_fraction(sphere, theta, omega, pi / 2)
                      + log_sphere_area(sphere).log_value};
}

}  // namespace sphiso
