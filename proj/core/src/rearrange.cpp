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

#include "sphiso/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sphiso/geometry.hpp"
#include "sphiso/parallel.hpp"

namespace sphiso {

//---------------------------------------------------------------------------//
// MonotoneKernel
//---------------------------------------------------------------------------//

MonotoneKernel MonotoneKernel::indicator(double angle)
{
    if (!(angle >= 0 && angle <= pi))
        throw DomainError("indicator kernel: angle must lie in [0, pi]");
    MonotoneKernel k;
    k.jumps_.push_back({angle, 1.0});
    return k;
}

MonotoneKernel MonotoneKernel::constant(double value)
{
    if (!std::isfinite(value))
        throw DomainError("constant kernel: value must be finite");
    MonotoneKernel k;
    k.base_ = value;
    return k;
}

MonotoneKernel MonotoneKernel::step(std::vector<double> breakpoints,
                                    std::vector<double> values)
{
    if (values.size() != breakpoints.size() + 1)
        throw DomainError("step kernel: need one more value than breakpoints");
    for (std::size_t j = 0; j < breakpoints.size(); ++j)
    {
        if (!(breakpoints[j] >= -1 && breakpoints[j] <= 1))
            throw DomainError("step kernel: breakpoints must lie in [-1, 1]");
        if (j > 0 && !(breakpoints[j] > breakpoints[j - 1]))
            throw DomainError("step kernel: breakpoints must increase");
    }
    for (std::size_t j = 0; j < values.size(); ++j)
    {
        if (!std::isfinite(values[j]))
            throw DomainError("step kernel: values must be finite");
        if (j > 0 && values[j] < values[j - 1])
            throw DomainError("step kernel: values must be nondecreasing");
    }
    MonotoneKernel k;
    k.base_ = values.front();
    for (std::size_t j = 0; j < breakpoints.size(); ++j)
    {
        double const height = values[j + 1] - values[j];
        if (height > 0)
            k.jumps_.push_back({std::acos(breakpoints[j]), height});
    }
    return k;
}

MonotoneKernel MonotoneKernel::linear(std::vector<double> u, std::vector<double> values)
{
    if (u.size() < 2 || u.size() != values.size())
        throw DomainError("linear kernel: need matching tables of at least two points");
    for (std::size_t j = 0; j < u.size(); ++j)
    {
        if (!(u[j] >= -1 && u[j] <= 1) || !std::isfinite(values[j]))
            throw DomainError("linear kernel: nodes must lie in [-1, 1] with finite values");
        if (j > 0 && (!(u[j] > u[j - 1]) || values[j] < values[j - 1]))
            throw DomainError("linear kernel: must be strictly increasing in u and nondecreasing");
    }
    MonotoneKernel k;
    k.base_ = values.front();
    k.linear_u_ = std::move(u);
    k.linear_values_ = std::move(values);
    return k;
}

double MonotoneKernel::operator()(double u) const
{
    u = std::clamp(u, -1.0, 1.0);
    if (!is_step())
    {
        if (u <= linear_u_.front())
            return linear_values_.front();
        if (u >= linear_u_.back())
            return linear_values_.back();
        auto const it = std::upper_bound(linear_u_.begin(), linear_u_.end(), u);
        auto const j = static_cast<std::size_t>(it - linear_u_.begin());
        double const t = (u - linear_u_[j - 1]) / (linear_u_[j] - linear_u_[j - 1]);
        return linear_values_[j - 1] + t * (linear_values_[j] - linear_values_[j - 1]);
    }
    double value = base_;
    double const angle = std::acos(u);
    for (auto const& jump : jumps_)
    {
        if (angle <= jump.angle)
            value += jump.height;
    }
    return value;
}

double MonotoneKernel::min_value() const
{
    return base_;
}

double MonotoneKernel::max_value() const
{
    if (!is_step())
        return linear_values_.back();
    double value = base_;
    for (auto const& jump : jumps_)
        value += jump.height;
    return value;
}

//---------------------------------------------------------------------------//
// Rearrangement
//---------------------------------------------------------------------------//

ZonalFunction rearrange(ZonalFunction const& f)
{
    std::vector<double> values(f.values().begin(), f.values().end());
    std::sort(values.begin(), values.end(), std::greater<>());
    return ZonalFunction(f.grid_ptr(), std::move(values));
}

LogMeasure super_level_measure(ZonalFunction const& f, double d)
{
    auto const count = std::count_if(
        f.values().begin(), f.values().end(), [d](double v) { return v > d; });
    if (count == 0)
        return LogMeasure{neg_inf};
    return LogMeasure{f.grid().log_cell_measure().log_value
                      + std::log(static_cast<double>(count))};
}

double layer_cake_integral(ZonalFunction const& f, ZonalFunction const& mask)
{
    require_same_grid(f, mask);
    struct Level
    {
        double value;
        bool masked;
    };
    std::vector<Level> levels;
    levels.reserve(f.size());
    for (int i = 0; i < f.size(); ++i)
    {
        if (f[i] < 0)
            throw DomainError("layer_cake_integral: f must be nonnegative");
        levels.push_back({f[i], mask[i] != 0});
    }
    std::sort(levels.begin(), levels.end(), [](Level const& a, Level const& b) {
        return a.value > b.value;
    });

    // Walk the distinct values from the top; between consecutive levels t
    // ranges over [next, current) and |{f > t} and mask| is the masked count
    // seen so far.
    double total = 0;
    std::size_t masked_above = 0;
    std::size_t i = 0;
    while (i < levels.size())
    {
        double const level = levels[i].value;
        while (i < levels.size() && levels[i].value == level)
        {
            masked_above += levels[i].masked ? 1 : 0;
            ++i;
        }
        double const next = (i < levels.size()) ? levels[i].value : 0.0;
        total += (level - next) * static_cast<double>(masked_above);
    }
    return total * f.grid().cell_measure();
}

//---------------------------------------------------------------------------//
// Projected kernel
//---------------------------------------------------------------------------//

namespace {

/*!
 * Average of a piecewise-linear K(cc + ss cos psi) against sin^{dim-3} psi.
 *
 * Between the azimuths where u crosses a knot, K is a + b cos psi. The
 * constant part integrates to a difference of cap fractions of S^{dim-2}
 * and the cosine part to a difference of sin^{dim-2} psi.
 */
double linear_average(MonotoneKernel const& kernel, double cc, double ss, int dim)
{
    std::vector<double> cuts{0.0, pi};
    for (double knot : kernel.knots())
    {
        double const c = (knot - cc) / ss;
        if (c > -1 && c < 1)
            cuts.push_back(std::acos(c));
    }
    std::sort(cuts.begin(), cuts.end());

    Sphere const slice(dim - 1);
    double const k1 = dim - 2;
    double const log_norm = log_beta(0.5 * k1, 0.5);
    double value = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        double const p0 = cuts[i];
        double const p1 = cuts[i + 1];
        if (!(p1 > p0))
            continue;
        double const u0 = cc + ss * std::cos(p0);
        double const u1 = cc + ss * std::cos(p1);
        // Slope in u from the piece midpoint, which no knot can sit on
        double const um = cc + ss * std::cos(0.5 * (p0 + p1));
        double const slope = (u0 != u1) ? (kernel(u0) - kernel(u1)) / (u0 - u1) : 0.0;
        double const at_mid = kernel(um);
        double const constant = at_mid + slope * (cc - um);
        double const mass = cap_fraction(slice, p1) - cap_fraction(slice, p0);
        double const sine = std::exp(k1 * std::log(std::sin(p1)) - log_norm)
                            - std::exp(k1 * std::log(std::sin(p0)) - log_norm);
        value += constant * mass + slope * ss * sine / k1;
    }
    return value;
}

}  // namespace

double projected_kernel(MonotoneKernel const& kernel, double alpha, double phi, int dim)
{
    if (!(alpha >= 0 && alpha <= pi) || !(phi >= 0 && phi <= pi))
        throw DomainError("projected_kernel: latitudes must lie in [0, pi]");
    Sphere const sphere(dim);

    if (kernel.is_step())
    {
        double value = kernel.base();
        for (auto const& jump : kernel.jumps())
        {
            double const log_frac = log_slice_fraction(sphere, phi, alpha, jump.angle);
            if (log_frac != neg_inf)
                value += jump.height * std::exp(log_frac);
        }
        return value;
    }

    double const cc = std::cos(alpha) * std::cos(phi);
    double const ss = std::sin(alpha) * std::sin(phi);
    if (dim == 2)
        return 0.5 * (kernel(cc + ss) + kernel(cc - ss));
    if (!(ss > 0))
        return kernel(cc);
    return linear_average(kernel, cc, ss, dim);
}

ZonalFunction zonal_convolve(ZonalFunction const& f,
                             MonotoneKernel const& kernel,
                             unsigned threads)
{
    auto const& grid = f.grid();
    int const n = grid.size();
    int const dim = grid.sphere().dim();
    auto mids = grid.midpoints();
    double const w = grid.cell_measure();

    std::vector<double> out(n);
    parallel_for(
        n,
        [&](std::size_t j) {
            std::vector<double> terms(n, 0.0);
            for (int i = 0; i < n; ++i)
            {
                if (f[i] != 0)
                    terms[i] = f[i] * projected_kernel(kernel, mids[j], mids[i], dim);
            }
            out[j] = pairwise_sum(terms) * w;
        },
        threads);
    return ZonalFunction(f.grid_ptr(), std::move(out));
}

//---------------------------------------------------------------------------//

KernelMatrix::KernelMatrix(GridPtr grid, MonotoneKernel const& kernel, unsigned threads)
    : grid_(std::move(grid)), n_(grid_->size()), entries_(n_ * n_)
{
    int const dim = grid_->sphere().dim();
    auto mids = grid_->midpoints();
    parallel_for(
        n_,
        [&](std::size_t i) {
            for (std::size_t j = i; j < n_; ++j)
                entries_[i * n_ + j] = projected_kernel(kernel, mids[i], mids[j], dim);
        },
        threads);
    for (std::size_t i = 0; i < n_; ++i)
    {
        for (std::size_t j = 0; j < i; ++j)
            entries_[i * n_ + j] = entries_[j * n_ + i];
    }
}

ZonalFunction KernelMatrix::convolve(ZonalFunction const& f) const
{
    if (!(f.grid() == *grid_))
        throw DomainError("KernelMatrix: function lives on a different grid");
    double const w = grid_->cell_measure();
    std::vector<double> out(n_);
    std::vector<double> terms(n_);
    for (std::size_t j = 0; j < n_; ++j)
    {
        for (std::size_t i = 0; i < n_; ++i)
            terms[i] = f[i] * entries_[j * n_ + i];
        out[j] = pairwise_sum(terms) * w;
    }
    return ZonalFunction(f.grid_ptr(), std::move(out));
}

std::vector<double> KernelMatrix::row_mass() const
{
    double const w = grid_->cell_measure();
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = pairwise_sum(std::span(entries_).subspan(i * n_, n_)) * w;
    return out;
}

namespace {

double pair_integral(ZonalFunction const& psi, ZonalFunction const& g)
{
    std::vector<double> terms(psi.size());
    for (int j = 0; j < psi.size(); ++j)
        terms[j] = psi[j] * g[j];
    return pairwise_sum(terms) * psi.grid().cell_measure();
}

}  // namespace

double riesz_functional(ZonalFunction const& f,
                        ZonalFunction const& g,
                        MonotoneKernel const& kernel,
                        unsigned threads)
{
    require_same_grid(f, g);
    return pair_integral(zonal_convolve(f, kernel, threads), g);
}

double riesz_functional(ZonalFunction const& f,
                        ZonalFunction const& g,
                        KernelMatrix const& matrix)
{
    require_same_grid(f, g);
    return pair_integral(matrix.convolve(f), g);
}

double riesz_grid_tolerance(ZonalFunction const& f,
                            ZonalFunction const& g,
                            MonotoneKernel const& kernel)
{
    double const area = log_sphere_area(f.grid().sphere()).value();
    double const k_max = std::max(std::fabs(kernel.min_value()),
                                  std::fabs(kernel.max_value()));
    return 2.0 / f.size() * f.max_abs() * g.max_abs() * k_max * area * area;
}

//---------------------------------------------------------------------------//
// Proof objects
//---------------------------------------------------------------------------//

int beta_cell(ZonalFunction const& psi_star, double d)
{
    auto v = psi_star.values();
    for (std::size_t i = 1; i < v.size(); ++i)
    {
        if (v[i] > v[i - 1])
            throw DomainError("beta_threshold: profile must be nonincreasing");
    }
    auto const it = std::find_if(v.begin(), v.end(), [d](double x) { return x <= d; });
    return static_cast<int>(it - v.begin());
}

double beta_threshold(ZonalFunction const& psi_star, double d)
{
    return psi_star.grid().boundaries()[beta_cell(psi_star, d)];
}

ProofChainReport proof_chain_check(SphereSet const& set,
                                   double omega,
                                   double eps,
                                   int grid_cells,
                                   unsigned threads)
{
    if (!(eps > 0 && eps < 1))
        throw DomainError("proof_chain_check: eps must lie in (0, 1)");
    if (!(omega > 0 && omega <= pi))
        throw DomainError("proof_chain_check: omega must lie in (0, pi]");
    auto const axis = common_axis(set);
    if (!axis)
        throw UnsupportedShapeError("proof_chain_check: set is not axis-aligned");

    Sphere const& sphere = set.sphere();
    ProofChainReport report;
    report.omega = omega;
    report.eps = eps;
    report.theta = effective_angle(set).theta;
    report.V = theorem1_V(sphere, report.theta, omega).value();
    report.threshold = (1 - eps) * report.V;

    auto const grid = make_grid(sphere, grid_cells);
    auto const kernel = MonotoneKernel::indicator(std::min(omega + eps, pi));
    ZonalFunction const f = zonal_profile(set, grid, axis);
    if (f.max_abs() == 0)
        throw DomainError("proof_chain_check: the set covers no cell midpoint; raise the grid size");
    ZonalFunction const f_star = rearrange(f);
    ZonalFunction const psi = zonal_convolve(f, kernel, threads);
    ZonalFunction const psi_star = rearrange(psi);
    ZonalFunction const psi_bar = zonal_convolve(f_star, kernel, threads);

    report.beta_cell = beta_cell(psi_star, report.threshold);
    report.beta = grid->boundaries()[report.beta_cell];

    report.total_psi_star = psi_star.integral();
    report.total_psi_bar = psi_bar.integral();
    report.prefix_psi_star = psi_star.integral_prefix(report.beta_cell);
    report.prefix_psi_bar = psi_bar.integral_prefix(report.beta_cell);

    double band_min = std::numeric_limits<double>::infinity();
    auto mids = grid->midpoints();
    for (int j = 0; j < grid->size(); ++j)
    {
        if (mids[j] >= pi / 2 - eps && mids[j] <= pi / 2 + eps)
            band_min = std::min(band_min, psi_bar[j]);
    }
    report.min_psi_bar_band = band_min;

    double const area = log_sphere_area(sphere).value();
    double const scale = 2.0 / grid->size() * f.max_abs() * kernel.max_value();
    report.pointwise_tolerance = scale * area;
    report.integral_tolerance = scale * area * area;

    report.layer_cake_ok = std::fabs(report.total_psi_star - report.total_psi_bar)
                           <= report.integral_tolerance;
    report.rearrangement_ok = report.prefix_psi_star
                              <= report.prefix_psi_bar + report.integral_tolerance;
    report.greater_v_ok = band_min >= report.V - report.pointwise_tolerance;

    auto copy = [](ZonalFunction const& z) {
        return std::vector<double>(z.values().begin(), z.values().end());
    };
    report.f = copy(f);
    report.f_star = copy(f_star);
    report.psi = copy(psi);
    report.psi_star = copy(psi_star);
    report.psi_bar = copy(psi_bar);
    return report;
}

}  // namespace sphiso
