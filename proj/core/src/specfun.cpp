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

#include "sphiso/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace sphiso {

Sphere::Sphere(int dim, double radius) : dim_(dim), radius_(radius)
{
    if (dim < 2)
        throw DomainError("Sphere: ambient dimension must be >= 2, got "
                          + std::to_string(dim));
    if (!(radius > 0) || !std::isfinite(radius))
        throw DomainError("Sphere: radius must be positive and finite");
}

LogMeasure LogMeasure::from_value(double v)
{
    if (v < 0 || std::isnan(v))
        throw DomainError("LogMeasure: negative measure");
    return LogMeasure{v == 0 ? neg_inf : std::log(v)};
}

//---------------------------------------------------------------------------//

double log_add_exp(double a, double b)
{
    if (a == neg_inf)
        return b;
    if (b == neg_inf)
        return a;
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double log1m_exp(double a)
{
    if (a > 0)
        throw DomainError("log1m_exp: argument must be <= 0");
    if (a == 0)
        return neg_inf;
    // Maechler's switch point between the two forms
    if (a > -std::numbers::ln2)
        return std::log(-std::expm1(a));
    return std::log1p(-std::exp(a));
}

double log_sub_exp(double a, double b)
{
    if (b > a)
        throw DomainError("log_sub_exp: result would be negative");
    if (b == neg_inf)
        return a;
    return a + log1m_exp(b - a);
}

double log_gamma(double x)
{
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double log_beta(double a, double b)
{
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

//---------------------------------------------------------------------------//

LogMeasure log_sphere_area(Sphere const& sphere)
{
    double m = sphere.dim();
    return LogMeasure{std::log(2.0) + 0.5 * m * std::log(pi)
                      - log_gamma(0.5 * m)
                      + (m - 1) * std::log(sphere.radius())};
}

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b)
{
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    double const qab = a + b;
    double const qap = a + 1;
    double const qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::fabs(d) < tiny)
        d = tiny;
    d = 1 / d;
    double h = d;
    for (int i = 1; i <= max_iter; ++i)
    {
        double const m2 = 2.0 * i;
        double aa = i * (b - i) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + i) * (qab + i) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1 / d;
        double const del = d * c;
        h *= del;
        if (std::fabs(del - 1) < eps)
            return h;
    }
    return h;
}

// log I_x(a,b) with y = 1 - x passed separately so callers holding an exact
// complement (cos^2 next to sin^2) lose nothing to cancellation.
double log_ibeta_xy(double x, double y, double a, double b)
{
    if (x <= 0)
        return neg_inf;
    if (y <= 0)
        return 0;
    auto log_direct = [](double x, double y, double a, double b) {
        return a * std::log(x) + b * std::log(y) - log_beta(a, b)
               + std::log(beta_continued_fraction(x, a, b)) - std::log(a);
    };
    if (x < (a + 1) / (a + b + 2))
        return log_direct(x, y, a, b);
    return log1m_exp(std::min(0.0, log_direct(y, x, b, a)));
}

void check_ibeta_args(double x, double a, double b)
{
    if (!(x >= 0 && x <= 1))
        throw DomainError("reg_inc_beta: x must lie in [0, 1]");
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("reg_inc_beta: a and b must be positive");
}

void check_angle(double theta, char const* who)
{
    if (!(theta >= 0 && theta <= pi))
        throw DomainError(std::string(who) + ": angle must lie in [0, pi]");
}

}  // namespace

double log_reg_inc_beta(double x, double a, double b)
{
    check_ibeta_args(x, a, b);
    return log_ibeta_xy(x, 1 - x, a, b);
}

double reg_inc_beta(double x, double a, double b)
{
    check_ibeta_args(x, a, b);
    if (x == 0)
        return 0;
    if (x == 1)
        return 1;
    return std::clamp(std::exp(log_ibeta_xy(x, 1 - x, a, b)), 0.0, 1.0);
}

//---------------------------------------------------------------------------//

double log_cap_fraction(Sphere const& sphere, double theta)
{
    check_angle(theta, "cap_fraction");
    if (theta == 0)
        return neg_inf;
    if (theta == pi)
        return 0;
    if (theta > pi / 2)
    {
        // pi - theta is exact here (Sterbenz)
        return log1m_exp(log_cap_fraction(sphere, pi - theta));
    }
    double const s = std::sin(theta);
    double const c = std::cos(theta);
    double const a = 0.5 * (sphere.dim() - 1);
    return -std::numbers::ln2 + log_ibeta_xy(s * s, c * c, a, 0.5);
}

double cap_fraction(Sphere const& sphere, double theta)
{
    return std::exp(log_cap_fraction(sphere, theta));
}

double cap_angle_from_log(Sphere const& sphere, double log_p)
{
    if (std::isnan(log_p) || log_p > 0)
        throw DomainError("cap_angle: probability must lie in [0, 1]");
    if (log_p == neg_inf)
        return 0;
    if (log_p == 0)
        return pi;
    if (log_p > -std::numbers::ln2)
        return pi - cap_angle_from_log(sphere, log1m_exp(log_p));

    // Bisection on [0, pi/2] until the bracket collapses to adjacent doubles.
    double lo = 0;
    double hi = pi / 2;
    for (int iter = 0; iter < 2000; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (log_cap_fraction(sphere, mid) < log_p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double cap_angle(Sphere const& sphere, double p)
{
    if (!(p >= 0 && p <= 1))
        throw DomainError("cap_angle: probability must lie in [0, 1]");
    if (p > 0.5)
        return pi - cap_angle_from_log(sphere, std::log1p(-p));
    return cap_angle_from_log(sphere, p == 0 ? neg_inf : std::log(p));
}

double log_latitude_density(Sphere const& sphere, double phi)
{
    check_angle(phi, "latitude_density");
    double const m = sphere.dim();
    double const log_norm = log_beta(0.5 * (m - 1), 0.5);
    if (sphere.dim() == 2)
        return -log_norm;
    if (phi == 0 || phi == pi)
        return neg_inf;
    return (m - 2) * std::log(std::sin(phi)) - log_norm;
}

LogMeasure nu_log_weight(Sphere const& sphere, double phi)
{
    check_angle(phi, "nu_log_weight");
    double const m = sphere.dim();
    double const r = sphere.radius();
    // log A_{m-2}(1) + log R, then the (R sin phi)^{m-2} factor
    double const log_const = std::log(2.0) + 0.5 * (m - 1) * std::log(pi)
                             - log_gamma(0.5 * (m - 1)) + std::log(r);
    if (sphere.dim() == 2)
        return LogMeasure{log_const};
    if (phi == 0 || phi == pi)
        return LogMeasure{neg_inf};
    return LogMeasure{log_const + (m - 2) * std::log(r * std::sin(phi))};
}

}  // namespace sphiso
