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

#include <vector>

#include "sphiso/sets.hpp"
#include "sphiso/zonal.hpp"

namespace sphiso {

//---------------------------------------------------------------------------//
/*!
 * Nondecreasing bounded kernel K(u) of the inner product u in [-1, 1].
 *
 * Step kernels (indicators included) are stored as a base value plus
 * nonnegative jumps, each jump switching on where the angle arccos(u) drops to
 * a threshold. Their azimuthal averages are exact sums of slice cap
 * fractions. Piecewise-linear tables are averaged piece by piece in closed
 * form.
 */
class MonotoneKernel
{
  public:
    struct Jump
    {
        double angle;  //!< jump applies for arccos(u) <= angle
        double height;
    };

    //! K(u) = 1 when arccos(u) <= angle, else 0
    static MonotoneKernel indicator(double angle);
    static MonotoneKernel constant(double value);
    /*!
     * Step table: values[0] below breakpoints[0], values[j] on
     * [breakpoints[j-1], breakpoints[j]), values.back() at and above the last
     * breakpoint. Breakpoints increase strictly inside [-1, 1]; values must
     * be nondecreasing.
     */
    static MonotoneKernel step(std::vector<double> breakpoints, std::vector<double> values);
    //! Linear interpolation through (u_k, values_k), constant outside the table
    static MonotoneKernel linear(std::vector<double> u, std::vector<double> values);

    bool is_step() const noexcept { return linear_u_.empty(); }
    double base() const noexcept { return base_; }
    std::vector<Jump> const& jumps() const noexcept { return jumps_; }
    //! Table nodes in u of a piecewise-linear kernel; empty for step kernels
    std::vector<double> const& knots() const noexcept { return linear_u_; }

    double operator()(double u) const;
    double min_value() const;
    double max_value() const;

  private:
    MonotoneKernel() = default;

    double base_{0};
    std::vector<Jump> jumps_;
    std::vector<double> linear_u_;
    std::vector<double> linear_values_;
};

//---------------------------------------------------------------------------//
// Rearrangement
//---------------------------------------------------------------------------//

//! Symmetric decreasing rearrangement: the values sorted nonincreasing
ZonalFunction rearrange(ZonalFunction const& f);

//! Measure of {f > d}
LogMeasure super_level_measure(ZonalFunction const& f, double d);

/*!
 * Layer-cake form of the integral of a nonnegative f over the cells where
 * mask is nonzero: the integral over t >= 0 of |{f > t} and mask|, evaluated
 * level by level from the sorted values of f.
 */
double layer_cake_integral(ZonalFunction const& f, ZonalFunction const& mask);

//---------------------------------------------------------------------------//
// Convolution with monotone kernels
//---------------------------------------------------------------------------//

/*!
 * Azimuthal average of K(<z/R, y/R>) for z at latitude phi and y at latitude
 * alpha about a common pole, on S^{m-1}.
 *
 * The azimuth psi has density proportional to sin^{m-3} psi; for m = 2 it is
 * two equal atoms at 0 and pi. Symmetric in (alpha, phi).
 */
double projected_kernel(MonotoneKernel const& kernel, double alpha, double phi, int dim);

/*!
 * psi(alpha_j) = sum_i f(phi_i) projected_kernel(alpha_j, phi_i) mu(S)/N.
 *
 * Parallel over output cells; each cell sums in a fixed order so the result
 * does not depend on the thread count.
 */
ZonalFunction zonal_convolve(ZonalFunction const& f,
                             MonotoneKernel const& kernel,
                             unsigned threads = 0);

/*!
 * Dense symmetric matrix of projected kernel values between grid midpoints,
 * for evaluating many functionals against one kernel.
 */
class KernelMatrix
{
  public:
    KernelMatrix(GridPtr grid, MonotoneKernel const& kernel, unsigned threads = 0);

    LatitudeGrid const& grid() const noexcept { return *grid_; }
    double operator()(int i, int j) const { return entries_[i * n_ + j]; }

    ZonalFunction convolve(ZonalFunction const& f) const;
    //! sum_j projected_kernel(phi_i, alpha_j) mu(S)/N for each i
    std::vector<double> row_mass() const;

  private:
    GridPtr grid_;
    std::size_t n_;
    std::vector<double> entries_;
};

//! sum_j zonal_convolve(f, K)(alpha_j) g(alpha_j) mu(S)/N
double riesz_functional(ZonalFunction const& f,
                        ZonalFunction const& g,
                        MonotoneKernel const& kernel,
                        unsigned threads = 0);
double riesz_functional(ZonalFunction const& f,
                        ZonalFunction const& g,
                        KernelMatrix const& matrix);

/*!
 * Discretization slack for functionals of f, g, K on a grid: a one-cell
 * misplacement per function, 2/N max|f| max|g| max|K| mu(S)^2.
 */
double riesz_grid_tolerance(ZonalFunction const& f,
                            ZonalFunction const& g,
                            MonotoneKernel const& kernel);

//---------------------------------------------------------------------------//
// Proof objects
//---------------------------------------------------------------------------//

/*!
 * Left boundary of the first cell where a nonincreasing profile drops to d or
 * below (closed super-level convention); pi if it never does.
 */
double beta_threshold(ZonalFunction const& psi_star, double d);
//! Cell index of beta_threshold (N if never crossed)
int beta_cell(ZonalFunction const& psi_star, double d);

struct ProofChainReport
{
    double theta{};  //!< effective angle of A
    double omega{};
    double eps{};
    double V{};          //!< exact intersection measure
    double threshold{};  //!< (1 - eps) V
    double beta{};
    int beta_cell{};

    // Total masses of psi* and psi-bar (layer cake)
    double total_psi_star{};
    double total_psi_bar{};
    // Integrals over [0, beta]
    double prefix_psi_star{};
    double prefix_psi_bar{};
    // Minimum of psi-bar over midpoints in [pi/2 - eps, pi/2 + eps]
    double min_psi_bar_band{};

    double integral_tolerance{};
    double pointwise_tolerance{};

    bool layer_cake_ok{};
    bool rearrangement_ok{};
    bool greater_v_ok{};

    std::vector<double> f, f_star, psi, psi_star, psi_bar;

    bool all_ok() const { return layer_cake_ok && rearrangement_ok && greater_v_ok; }
};

/*!
 * Build psi = 1_A * K, psi* = rearrange(psi), psi-bar = 1_{A*} * K with K the
 * indicator of angle omega + eps, and check: equal total masses; the
 * rearrangement inequality on [0, beta]; psi-bar >= V near the equator.
 *
 * Requires an axis-aligned A that contains at least one cell midpoint and
 * theta + omega > pi/2.
 */
ProofChainReport proof_chain_check(SphereSet const& set,
                                   double omega,
                                   double eps,
                                   int grid_cells,
                                   unsigned threads = 0);

}  // namespace sphiso
