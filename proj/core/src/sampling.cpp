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

#include "sphiso/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace sphiso {

namespace {

constexpr int table_size = 1024;

double gaussian_fill(std::span<double> out, RandomStream& stream)
{
    double sum = 0;
    for (double& x : out)
    {
        x = stream.normal();
        sum += x * x;
    }
    return std::sqrt(sum);
}

// Point at latitude phi from e_1 in a uniform slice direction, reflected so
// e_1 maps onto the pole.
SpherePoint place_in_cap(SpherePoint const& pole, double phi, RandomStream& stream)
{
    Sphere const& sphere = pole.sphere();
    int const m = sphere.dim();
    std::vector<double> x(m);
    std::span<double> slice(x.data() + 1, m - 1);
    double norm = 0;
    do
    {
        norm = gaussian_fill(slice, stream);
    } while (!(norm > 0));

    double const s = std::sin(phi) / norm;
    x[0] = std::cos(phi);
    for (double& v : slice)
        v *= s;

    double const r = sphere.radius();
    std::vector<double> unit_pole(pole.coords().begin(), pole.coords().end());
    for (double& v : unit_pole)
        v /= r;
    reflect_e1_to(unit_pole, x);
    for (double& v : x)
        v *= r;
    return SpherePoint::normalized(sphere, std::move(x));
}

void check_cap(CapSpec const& cap)
{
    if (!(cap.theta > 0))
        throw DomainError("sample_cap: cap angle must be positive");
}

}  // namespace

void reflect_e1_to(std::span<double const> unit_pole, std::span<double> x)
{
    // v = e_1 - pole; H = I - 2 v v^T / (v^T v) satisfies H e_1 = pole
    double const vv = 2 * (1 - unit_pole[0]);
    if (!(vv > 0))
        return;
    double vx = x[0];
    for (std::size_t i = 0; i < x.size(); ++i)
        vx -= unit_pole[i] * x[i];
    double const scale = 2 * vx / vv;
    x[0] -= scale;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += scale * unit_pole[i];
}

SpherePoint sample_sphere(Sphere const& sphere, RandomStream& stream)
{
    std::vector<double> x(sphere.dim());
    double norm = 0;
    do
    {
        norm = gaussian_fill(x, stream);
    } while (!(norm > 0));
    return SpherePoint::normalized(sphere, std::move(x));
}

SpherePoint sample_cap(CapSpec const& cap, RandomStream& stream)
{
    check_cap(cap);
    Sphere const& sphere = cap.pole.sphere();
    double const log_u = std::log(stream.uniform());
    double const phi = std::min(
        cap.theta,
        cap_angle_from_log(sphere, log_u + log_cap_fraction(sphere, cap.theta)));
    return place_in_cap(cap.pole, phi, stream);
}

//---------------------------------------------------------------------------//

CapSampler::CapSampler(Sphere sphere, double theta)
    : sphere_(sphere), theta_(theta)
{
    if (!(theta > 0 && theta <= pi))
        throw DomainError("CapSampler: cap angle must lie in (0, pi]");
    log_cap_ = log_cap_fraction(sphere_, theta_);
    log_norm_ = log_beta(0.5 * (sphere_.dim() - 1), 0.5);
    table_.resize(table_size + 1);
    table_.front() = 0;
    table_.back() = theta_;
    for (int k = 1; k < table_size; ++k)
    {
        double const log_u = std::log(static_cast<double>(k) / table_size);
        table_[k] = std::min(theta_, cap_angle_from_log(sphere_, log_u + log_cap_));
    }
    // d phi / d u at each node; infinite where the density vanishes
    slope_.resize(table_size + 1);
    for (int k = 0; k <= table_size; ++k)
        slope_[k] = std::exp(log_cap_ - log_density(table_[k])) / table_size;
}

double CapSampler::log_density(double phi) const
{
    if (sphere_.dim() == 2)
        return -log_norm_;
    double const s = std::sin(phi);
    return s > 0 ? (sphere_.dim() - 2) * std::log(s) - log_norm_ : neg_inf;
}

double CapSampler::latitude(double u) const
{
    double const target = std::log(u) + log_cap_;
    auto const k = std::min(static_cast<int>(u * table_size), table_size - 1);
    double lo = table_[k];
    double hi = table_[k + 1];
    double const t = u * table_size - k;
    double phi;
    if (std::isfinite(slope_[k]) && std::isfinite(slope_[k + 1]))
    {
        // Cubic Hermite through the neighboring nodes
        double const t2 = t * t;
        double const t3 = t2 * t;
        phi = (2 * t3 - 3 * t2 + 1) * lo + (t3 - 2 * t2 + t) * slope_[k]
              + (-2 * t3 + 3 * t2) * hi + (t3 - t2) * slope_[k + 1];
        phi = std::clamp(phi, lo, hi);
    }
    else
    {
        phi = lo + t * (hi - lo);
    }

    for (int iter = 0; iter < 60; ++iter)
    {
        double const log_f = log_cap_fraction(sphere_, phi);
        double const h = log_f - target;
        if (h < 0)
            lo = phi;
        else
            hi = phi;
        // Quadratic convergence: one Newton step from a residual this small
        // leaves nothing to fix
        bool const last = std::fabs(h) <= 1e-9;
        double next = phi - h * std::exp(log_f - log_density(phi));
        if (!(next >= lo && next <= hi))
        {
            if (last)
                break;
            next = 0.5 * (lo + hi);
        }
        double const step = std::fabs(next - phi);
        phi = next;
        if (last || step <= 1e-15 * phi || hi - lo <= 1e-15 * hi)
            break;
    }
    return std::min(phi, theta_);
}

SpherePoint CapSampler::operator()(SpherePoint const& pole, RandomStream& stream) const
{
    if (!(pole.sphere() == sphere_))
        throw DomainError("CapSampler: pole lies on a different sphere");
    double const phi = latitude(stream.uniform());
    return place_in_cap(pole, phi, stream);
}

}  // namespace sphiso
