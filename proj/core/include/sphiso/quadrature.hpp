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

#include <functional>
#include <span>
#include <vector>

namespace sphiso {

struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

//! n-point Gauss-Legendre rule on [-1, 1]
QuadratureRule gauss_legendre(int n);

/*!
 * n-point Gauss rule for the weight (1 - t^2)^a on [-1, 1], a > -1.
 *
 * Weights are normalized to sum to one so the rule evaluates an expectation.
 * Built by Golub-Welsch from the symmetric Jacobi recurrence.
 */
QuadratureRule gauss_gegenbauer(int n, double a);

struct AdaptiveOptions
{
    double abs_tol{1e-12};
    double rel_tol{1e-12};
    int max_depth{50};
};

/*!
 * Adaptive Gauss-Legendre integration of f over [lo, hi].
 *
 * Each panel compares a 20-point estimate against the sum over its two halves
 * and splits until the difference is within the panel's share of the
 * tolerance. Points in breaks that fall strictly inside (lo, hi) become
 * initial panel boundaries.
 */
double integrate(std::function<double(double)> const& f,
                 double lo,
                 double hi,
                 std::span<double const> breaks = {},
                 AdaptiveOptions const& opts = {});

/*!
 * Log of the integral of exp(log_f) over [lo, hi].
 *
 * The integrand is rescaled by its peak over the initial panels before
 * integration, so results far below the double range stay finite. Only the
 * relative tolerance applies. Returns -inf when the integrand vanishes.
 */
double log_integrate(std::function<double(double)> const& log_f,
                     double lo,
                     double hi,
                     std::span<double const> breaks = {},
                     AdaptiveOptions const& opts = {});

}  // namespace sphiso
