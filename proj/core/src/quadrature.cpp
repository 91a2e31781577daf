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

#include "sphiso/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Eigenvalues>

#include "sphiso/specfun.hpp"

namespace sphiso {

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw DomainError("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
                p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            double const dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_gegenbauer(int n, double a)
{
    if (n < 1)
        throw DomainError("gauss_gegenbauer: n must be positive");
    if (!(a > -1))
        throw DomainError("gauss_gegenbauer: exponent must exceed -1");

    // Jacobi matrix of the monic recurrence with alpha = beta = a
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k)
    {
        double const beta = (k == 1) ? 1 / (2 * a + 3)
                                     : k * (k + 2 * a)
                                           / ((2 * k + 2 * a + 1)
                                              * (2 * k + 2 * a - 1));
        sub[k - 1] = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double total = 0;
    for (int i = 0; i < n; ++i)
    {
        double const v0 = solver.eigenvectors()(0, i);
        rule.nodes[i] = solver.eigenvalues()[i];
        rule.weights[i] = v0 * v0;
        total += rule.weights[i];
    }
    for (double& w : rule.weights)
        w /= total;
    return rule;
}

namespace {

QuadratureRule const& panel_rule()
{
    static QuadratureRule const rule = gauss_legendre(20);
    return rule;
}

double panel_estimate(std::function<double(double)> const& f, double a, double b)
{
    auto const& rule = panel_rule();
    double const half = 0.5 * (b - a);
    double const center = 0.5 * (a + b);
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(center + half * rule.nodes[i]);
    return sum * half;
}

double refine(std::function<double(double)> const& f,
              double a,
              double b,
              double whole,
              double tol,
              int depth,
              int max_depth,
              double parent_err)
{
    double const mid = 0.5 * (a + b);
    double const left = panel_estimate(f, a, mid);
    double const right = panel_estimate(f, mid, b);
    double const both = left + right;
    double const err = std::fabs(both - whole);
    // The relative floor stops splitting once the difference is round-off;
    // an error that stops halving means f itself is noisy at this scale.
    if (depth >= max_depth
        || err <= std::max(tol, 1e-14 * std::fabs(both))
        || (depth > 2 && err > 0.5 * parent_err)
        || mid <= a
        || mid >= b)
    {
        return both;
    }
    return refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, err)
           + refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, err);
}

std::vector<double> panel_edges(double lo, double hi, std::span<double const> breaks)
{
    std::vector<double> edges{lo, hi};
    for (double x : breaks)
    {
        if (x > lo && x < hi)
            edges.push_back(x);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

}  // namespace

double integrate(std::function<double(double)> const& f,
                 double lo,
                 double hi,
                 std::span<double const> breaks,
                 AdaptiveOptions const& opts)
{
    if (!(hi > lo))
        return 0;
    auto const edges = panel_edges(lo, hi, breaks);
    std::vector<double> coarse(edges.size() - 1);
    double coarse_total = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        coarse[i] = panel_estimate(f, edges[i], edges[i + 1]);
        coarse_total += coarse[i];
    }
    double const tol = std::max(opts.abs_tol, opts.rel_tol * std::fabs(coarse_total));
    double total = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        double const share = tol * (edges[i + 1] - edges[i]) / (hi - lo);
        total += refine(f, edges[i], edges[i + 1], coarse[i], share, 0, opts.max_depth, INFINITY);
    }
    return total;
}

double log_integrate(std::function<double(double)> const& log_f,
                     double lo,
                     double hi,
                     std::span<double const> breaks,
                     AdaptiveOptions const& opts)
{
    if (!(hi > lo))
        return neg_inf;
    auto const edges = panel_edges(lo, hi, breaks);
    auto const& rule = panel_rule();

    double peak = neg_inf;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        double const half = 0.5 * (edges[i + 1] - edges[i]);
        double const center = 0.5 * (edges[i + 1] + edges[i]);
        for (double t : rule.nodes)
            peak = std::max(peak, log_f(center + half * t));
    }
    if (peak == neg_inf)
        return neg_inf;

    auto scaled = [&](double x) { return std::exp(log_f(x) - peak); };
    AdaptiveOptions relative = opts;
    relative.abs_tol = 0;
    double const value = integrate(scaled, lo, hi, edges, relative);
    if (!(value > 0))
        return neg_inf;
    return peak + std::log(value);
}

}  // namespace sphiso
