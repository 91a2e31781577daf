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

#include "sphiso/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sphiso/parallel.hpp"
#include "sphiso/rearrange.hpp"
#include "sphiso/sampling.hpp"

#ifndef SPHISO_VERSION
#    define SPHISO_VERSION "unknown"
#endif

namespace sphiso {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Sampling is split into this many fixed chunks, each with its own substream,
// so the counts do not depend on the worker count.
constexpr std::uint64_t sample_chunks = 64;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x)
{
    return format_double(x);
}

void require(bool ok, char const* message)
{
    if (!ok)
        throw DomainError(message);
}

void add_check(ExperimentRecord& rec, std::string name, bool passed, std::string detail)
{
    rec.checks.push_back({std::move(name), passed, std::move(detail)});
}

//! Binomial estimate of a hit fraction
MonteCarloEstimate proportion(std::uint64_t hits, std::uint64_t n, std::uint64_t seed)
{
    double const p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(n)), n, seed};
}

template<class T>
T const& lookup(std::vector<std::pair<std::string, T>> const& items,
                std::string const& key,
                char const* what)
{
    for (auto const& [k, v] : items)
    {
        if (k == key)
            return v;
    }
    throw std::out_of_range(std::string("ExperimentRecord: no ") + what + " named " + key);
}

/*!
 * Fraction of the latitude-phi slice about y that lies in a union of closed
 * latitude intervals about an axis at angle alpha from y.
 */
double slice_fraction_in(Sphere const& sphere,
                         std::vector<LatitudeInterval> const& intervals,
                         double phi,
                         double alpha)
{
    auto below = [&](double c) {
        return c <= 0 ? 0.0 : std::exp(log_slice_fraction(sphere, phi, alpha, c));
    };
    double total = 0;
    for (auto const& iv : intervals)
    {
        if (iv.hi >= pi)
        {
            // Measured from the antipodal axis to avoid 1 - (1 - tiny)
            total += std::exp(log_slice_fraction(sphere, phi, pi - alpha, pi - iv.lo));
            continue;
        }
        total += std::max(0.0, below(iv.hi) - below(iv.lo));
    }
    return std::min(total, 1.0);
}

}  // namespace

InnerEstimator parse_inner_estimator(std::string const& name)
{
    if (name == "automatic")
        return InnerEstimator::automatic;
    if (name == "hits")
        return InnerEstimator::hits;
    if (name == "conditional")
        return InnerEstimator::conditional;
    throw std::invalid_argument("unknown inner estimator \"" + name + "\"");
}

char const* to_string(InnerEstimator e)
{
    switch (e)
    {
        case InnerEstimator::automatic:
            return "automatic";
        case InnerEstimator::hits:
            return "hits";
        case InnerEstimator::conditional:
            return "conditional";
    }
    return "unknown";
}

char const* version()
{
    return SPHISO_VERSION;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z)
{
    if (n == 0 || successes > n)
        throw DomainError("wilson_interval: need 0 <= successes <= n and n > 0");
    double const nn = static_cast<double>(n);
    double const p = static_cast<double>(successes) / nn;
    double const z2 = z * z;
    double const denom = 1 + z2 / nn;
    double const center = (p + z2 / (2 * nn)) / denom;
    double const half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

//---------------------------------------------------------------------------//
// ExperimentRecord
//---------------------------------------------------------------------------//

bool ExperimentRecord::all_passed() const
{
    return std::all_of(
        checks.begin(), checks.end(), [](PropertyCheck const& c) { return c.passed; });
}

double ExperimentRecord::exact_value(std::string const& key) const
{
    return lookup(exact, key, "exact reference");
}

double ExperimentRecord::outcome(std::string const& key) const
{
    return lookup(outcomes, key, "outcome");
}

MonteCarloEstimate const& ExperimentRecord::estimate(std::string const& key) const
{
    return lookup(estimates, key, "estimate");
}

bool ExperimentRecord::check(std::string const& name) const
{
    for (auto const& c : checks)
    {
        if (c.name == name)
            return c.passed;
    }
    throw std::out_of_range("ExperimentRecord: no check named " + name);
}

json ExperimentRecord::sidecar(json const& config) const
{
    json j;
    j["experiment"] = experiment;
    j["version"] = version();
    j["config"] = config;
    j["m"] = m;
    j["R"] = R;
    if (set_descriptor)
        j["set"] = *set_descriptor;
    if (theta)
        j["theta"] = *theta;
    if (omega)
        j["omega"] = *omega;
    if (eps)
        j["eps"] = *eps;
    if (seed)
        j["seed"] = *seed;

    json ex = json::object();
    for (auto const& [k, v] : exact)
        ex[k] = v;
    j["exact"] = ex;

    json est = json::object();
    for (auto const& [k, v] : estimates)
        est[k] = {{"mean", v.mean}, {"std_error", v.std_error}, {"n", v.n}, {"seed", v.seed}};
    j["estimates"] = est;

    json out = json::object();
    for (auto const& [k, v] : outcomes)
        out[k] = v;
    j["outcomes"] = out;

    json chk = json::array();
    for (auto const& c : checks)
        chk.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = chk;
    j["warnings"] = warnings;
    for (auto const& [k, v] : notes)
        j["notes"][k] = v;
    j["all_passed"] = all_passed();
    j["rows"] = table.rows.size();
    j["wall_seconds"] = wall_seconds;
    return j;
}

//---------------------------------------------------------------------------//
// Concentration
//---------------------------------------------------------------------------//

ExperimentRecord run_concentration(ConcentrationConfig const& cfg)
{
    auto const start = Clock::now();
    require(cfg.eps > 0 && cfg.eps < pi / 2, "concentration: eps must lie in (0, pi/2)");
    Sphere const sphere(cfg.m, cfg.R);

    ExperimentRecord rec;
    rec.experiment = "concentration";
    rec.m = cfg.m;
    rec.R = cfg.R;
    rec.eps = cfg.eps;

    // 1 - 2 F(pi/2 - eps), with F <= 1/2
    double const log_f = log_cap_fraction(sphere, pi / 2 - cfg.eps);
    double const exact = -std::expm1(std::log(2.0) + log_f);
    rec.exact.emplace_back("probability", exact);
    rec.exact.emplace_back("cap_fraction", std::exp(log_f));
    rec.exact.emplace_back("bound", 1 - cfg.eps);
    add_check(rec,
              "exact_ge_1_minus_eps",
              exact >= 1 - cfg.eps,
              "exact " + fmt(exact) + " vs bound " + fmt(1 - cfg.eps));

    rec.table.columns = {"m", "R", "eps", "exact", "bound", "exact_ge_bound",
                         "estimate", "std_error", "n", "seed"};
    std::vector<CsvCell> row{std::int64_t{cfg.m}, cfg.R, cfg.eps, exact, 1 - cfg.eps,
                             exact >= 1 - cfg.eps};

    if (cfg.samples > 0)
    {
        rec.seed = cfg.seed;
        RandomStream const base(cfg.seed, cfg.stream_id);
        SpherePoint const pole = SpherePoint::axis(sphere, 0);
        std::vector<std::uint64_t> hits(sample_chunks, 0);
        parallel_for(
            sample_chunks,
            [&](std::size_t c) {
                RandomStream s = base.substream(c);
                std::uint64_t const begin = cfg.samples * c / sample_chunks;
                std::uint64_t const end = cfg.samples * (c + 1) / sample_chunks;
                std::uint64_t h = 0;
                for (std::uint64_t i = begin; i < end; ++i)
                {
                    double const angle = geodesic_angle(sample_sphere(sphere, s), pole);
                    h += std::fabs(angle - pi / 2) <= cfg.eps;
                }
                hits[c] = h;
            },
            cfg.threads);
        auto const total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
        auto const est = proportion(total, cfg.samples, cfg.seed);
        rec.estimates.emplace_back("probability", est);

        // Standard error under the exact probability, so a sample with no
        // misses still gets a meaningful band
        double const se = std::sqrt(exact * (1 - exact) / static_cast<double>(cfg.samples));
        double const diff = std::fabs(est.mean - exact);
        add_check(rec,
                  "sample_matches_exact",
                  diff <= 4 * std::max(se, est.std_error),
                  "|estimate - exact| = " + fmt(diff) + ", standard error " + fmt(se));
        row.insert(row.end(),
                   {est.mean, est.std_error, static_cast<std::int64_t>(est.n),
                    static_cast<std::int64_t>(cfg.seed)});
    }
    else
    {
        double const nan = std::numeric_limits<double>::quiet_NaN();
        row.insert(row.end(), {nan, nan, std::int64_t{0}, std::int64_t{0}});
    }
    rec.table.add_row(std::move(row));
    rec.wall_seconds = seconds_since(start);
    return rec;
}

//---------------------------------------------------------------------------//
// Blow-up
//---------------------------------------------------------------------------//

ExperimentRecord run_blowup(BlowupConfig const& cfg)
{
    auto const start = Clock::now();
    require(cfg.eps > 0, "blowup: eps must be positive");
    Sphere const sphere(cfg.m, cfg.R);
    SphereSet const original = parse_set(cfg.set, sphere);
    SphereSet const set = canonicalize(original);
    if (std::holds_alternative<ComplementShape>(set.shape()))
        throw UnsupportedShapeError(
            "blowup: only complements of caps can be rewritten; neighborhoods of "
            "other complements are not supported");

    ExperimentRecord rec;
    rec.experiment = "blowup";
    rec.m = cfg.m;
    rec.R = cfg.R;
    rec.eps = cfg.eps;
    rec.set_descriptor = to_json(original);

    auto const eff = effective_angle(set);
    require(eff.theta > 0, "blowup: the set has zero measure");
    rec.theta = eff.theta;
    if (!eff.exact)
        rec.warnings.push_back("effective angle estimated by sampling");

    // A radius below zero would shrink A; the blow-up of a set with theta
    // beyond pi/2 + eps is A itself
    double const t = std::max(0.0, pi / 2 - eff.theta + cfg.eps);
    SphereSet const blown = neighborhood(set, t);
    SetMeasure const mu_a = measure(set);
    SetMeasure const mu = measure(blown);
    if (!mu.exact)
        rec.warnings.push_back("neighborhood measure estimated by sampling");

    double const p = mu.probability();
    rec.exact.emplace_back("set_probability", mu_a.probability());
    rec.exact.emplace_back("radius", t);
    rec.exact.emplace_back("neighborhood_probability", p);
    rec.exact.emplace_back("bound", 1 - cfg.eps);
    if (!mu.exact)
    {
        rec.estimates.emplace_back(
            "neighborhood_probability",
            MonteCarloEstimate{p, mu.std_error, mu.samples, MeasureOptions{}.seed});
    }
    add_check(rec,
              "neighborhood_ge_1_minus_eps",
              p >= 1 - cfg.eps,
              "P(A_t) " + fmt(p) + " vs bound " + fmt(1 - cfg.eps));

    rec.table.columns = {"m", "R", "eps", "theta", "radius", "set_probability",
                         "neighborhood_probability", "bound", "holds", "exact"};
    rec.table.add_row({std::int64_t{cfg.m}, cfg.R, cfg.eps, eff.theta, t, mu_a.probability(),
                       p, 1 - cfg.eps, p >= 1 - cfg.eps, mu.exact && eff.exact});
    rec.wall_seconds = seconds_since(start);
    return rec;
}

//---------------------------------------------------------------------------//
// Intersection concentration
//---------------------------------------------------------------------------//

ExperimentRecord run_theorem1(Theorem1Config const& cfg)
{
    auto const start = Clock::now();
    require(cfg.omega > 0 && cfg.omega <= pi, "theorem1: omega must lie in (0, pi]");
    require(cfg.eps > 0 && cfg.eps < 1, "theorem1: eps must lie in (0, 1)");
    require(cfg.n_outer >= 100 && cfg.n_inner >= 100,
            "theorem1: n_outer and n_inner must be at least 100");
    Sphere const sphere(cfg.m, cfg.R);
    SphereSet const set = parse_set(cfg.set, sphere);

    ExperimentRecord rec;
    rec.experiment = "theorem1";
    rec.m = cfg.m;
    rec.R = cfg.R;
    rec.omega = cfg.omega;
    rec.eps = cfg.eps;
    rec.seed = cfg.seed;
    rec.set_descriptor = to_json(set);

    auto const eff = effective_angle(set);
    SetMeasure const mu_a = measure(set);
    if (!eff.exact || !mu_a.exact)
        rec.warnings.push_back("set measure estimated by sampling");
    double const theta = eff.theta;
    require(theta > 0, "theorem1: the set has zero measure");
    rec.theta = theta;
    if (!(theta + cfg.omega > pi / 2))
        throw TrivialIntersectionError("theorem1: requires theta + omega > pi/2");

    double const V = theorem1_V(sphere, theta, cfg.omega).value();
    double const threshold = (1 - cfg.eps) * V;
    double const big = std::min(cfg.omega + cfg.eps, pi);
    double const log_area = log_sphere_area(sphere).log_value;
    double const cap_measure = std::exp(log_area + log_cap_fraction(sphere, big));

    rec.exact.emplace_back("V", V);
    rec.exact.emplace_back("threshold", threshold);
    rec.exact.emplace_back("sphere_measure", std::exp(log_area));
    rec.exact.emplace_back("cap_measure", cap_measure);
    rec.exact.emplace_back("set_probability", mu_a.probability());

    CapSampler const sampler(sphere, big);
    RandomStream const base(cfg.seed, cfg.stream_id);
    auto const axis = common_axis(set);

    InnerEstimator estimator = cfg.estimator;
    if (estimator == InnerEstimator::automatic)
        estimator = axis ? InnerEstimator::conditional : InnerEstimator::hits;
    if (estimator == InnerEstimator::conditional && !axis)
        throw UnsupportedShapeError(
            "theorem1: the conditional estimator needs shapes sharing one axis");
    std::vector<LatitudeInterval> const intervals
        = axis ? latitude_intervals(set, *axis) : std::vector<LatitudeInterval>{};
    rec.notes.emplace_back("inner_estimator", to_string(estimator));

    std::size_t const n_outer = cfg.n_outer;
    double const n_inner = static_cast<double>(cfg.n_inner);
    std::vector<double> fraction(n_outer);
    std::vector<double> fraction_se(n_outer);
    std::vector<std::uint64_t> hits(n_outer, 0);
    std::vector<double> latitude(n_outer, std::numeric_limits<double>::quiet_NaN());
    parallel_for(
        n_outer,
        [&](std::size_t i) {
            RandomStream s = base.substream(i);
            SpherePoint const y = sample_sphere(sphere, s);
            if (axis)
                latitude[i] = geodesic_angle(*axis, y);
            if (estimator == InnerEstimator::hits)
            {
                std::uint64_t h = 0;
                for (std::uint64_t k = 0; k < cfg.n_inner; ++k)
                    h += contains(set, sampler(y, s));
                double const p = static_cast<double>(h) / n_inner;
                hits[i] = h;
                fraction[i] = p;
                fraction_se[i] = std::sqrt(p * (1 - p) / n_inner);
                return;
            }
            std::vector<double> w(cfg.n_inner);
            for (double& x : w)
                x = slice_fraction_in(sphere, intervals, sampler.latitude(s.uniform()),
                                      latitude[i]);
            double const mean = pairwise_sum(w) / n_inner;
            for (double& x : w)
                x = (x - mean) * (x - mean);
            fraction[i] = mean;
            fraction_se[i] = std::sqrt(pairwise_sum(w) / (n_inner - 1) / n_inner);
        },
        cfg.threads);

    std::vector<double> estimate(n_outer);
    std::vector<double> inner_se(n_outer);
    std::uint64_t successes = 0;
    std::uint64_t at_least_v = 0;
    for (std::size_t i = 0; i < n_outer; ++i)
    {
        estimate[i] = cap_measure * fraction[i];
        inner_se[i] = cap_measure * fraction_se[i];
        successes += estimate[i] > threshold;
        at_least_v += estimate[i] >= V;
    }

    auto const ci = wilson_interval(successes, cfg.n_outer);
    auto const success = proportion(successes, cfg.n_outer, cfg.seed);
    rec.estimates.emplace_back("success_probability", success);
    rec.estimates.emplace_back("fraction_at_least_V", proportion(at_least_v, cfg.n_outer, cfg.seed));
    rec.outcomes.emplace_back("wilson_lower", ci.lower);
    rec.outcomes.emplace_back("wilson_upper", ci.upper);
    rec.outcomes.emplace_back("successes", static_cast<double>(successes));

    // Mean of the per-Y estimates against mu(Cap(omega + eps)) mu(A)
    double const mean = pairwise_sum(estimate) / static_cast<double>(n_outer);
    std::vector<double> dev2(n_outer);
    for (std::size_t i = 0; i < n_outer; ++i)
        dev2[i] = (estimate[i] - mean) * (estimate[i] - mean);
    double const var = pairwise_sum(dev2) / static_cast<double>(n_outer - 1);
    double const mean_se = std::sqrt(var / static_cast<double>(n_outer));
    rec.estimates.emplace_back(
        "intersection_mean",
        MonteCarloEstimate{mean, mean_se, cfg.n_outer * cfg.n_inner, cfg.seed});

    double const reference = cap_measure * mu_a.probability();
    double const ref_se = cap_measure * mu_a.std_error;
    double const combined = std::hypot(mean_se, ref_se);
    rec.exact.emplace_back("total_mass_reference", reference);
    add_check(rec,
              "total_mass_identity",
              std::fabs(mean - reference) <= 4 * combined,
              "mean " + fmt(mean) + " vs reference " + fmt(reference) + ", combined error "
                  + fmt(combined));
    add_check(rec,
              "success_wilson_lower_ge_1_minus_eps",
              ci.lower >= 1 - cfg.eps,
              "Wilson lower " + fmt(ci.lower) + " vs bound " + fmt(1 - cfg.eps));

    rec.table.columns = {"y_index", "y_latitude", "hits", "n_inner", "fraction", "estimate",
                         "inner_std_error", "success", "threshold", "V", "eps"};
    for (std::size_t i = 0; i < n_outer; ++i)
    {
        rec.table.add_row({static_cast<std::int64_t>(i), latitude[i],
                           static_cast<std::int64_t>(hits[i]),
                           static_cast<std::int64_t>(cfg.n_inner), fraction[i], estimate[i],
                           inner_se[i], estimate[i] > threshold, threshold, V, cfg.eps});
    }
    rec.wall_seconds = seconds_since(start);
    return rec;
}

//---------------------------------------------------------------------------//
// Rearrangement inequality
//---------------------------------------------------------------------------//

namespace {

//! Random 0/1 profile with a random density
ZonalFunction random_indicator(GridPtr const& grid, RandomStream& s)
{
    double const density = s.uniform();
    std::vector<double> v(grid->size());
    for (double& x : v)
        x = s.uniform() < density ? 1.0 : 0.0;
    return ZonalFunction(grid, std::move(v));
}

//! Piecewise constant profile with 2 to 8 pieces of random nonnegative height
ZonalFunction random_step(GridPtr const& grid, RandomStream& s)
{
    int const n = grid->size();
    int const pieces = 2 + static_cast<int>(s.uniform() * 7);
    std::vector<int> cuts{0, n};
    for (int k = 1; k < pieces; ++k)
        cuts.push_back(static_cast<int>(s.uniform() * n));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    {
        double const h = s.uniform();
        std::fill(v.begin() + cuts[k], v.begin() + cuts[k + 1], h);
    }
    return ZonalFunction(grid, std::move(v));
}

//! Indicator of a random angle, or a step table with 1 to 5 random jumps
MonotoneKernel random_kernel(RandomStream& s, std::string& kind)
{
    if (s.uniform() < 0.5)
    {
        kind = "indicator";
        return MonotoneKernel::indicator(pi * (0.02 + 0.96 * s.uniform()));
    }
    kind = "step";
    int const jumps = 1 + static_cast<int>(s.uniform() * 5);
    std::vector<double> breaks;
    for (int k = 0; k < jumps; ++k)
        breaks.push_back(-0.98 + 1.96 * s.uniform());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> values{s.uniform()};
    for (std::size_t k = 0; k < breaks.size(); ++k)
        values.push_back(values.back() + s.uniform());
    return MonotoneKernel::step(std::move(breaks), std::move(values));
}

}  // namespace

ExperimentRecord run_riesz(RieszConfig const& cfg)
{
    auto const start = Clock::now();
    require(cfg.grid_n >= 64, "riesz: grid_n must be at least 64");
    require(cfg.trials >= 0, "riesz: trials must be nonnegative");
    Sphere const sphere(cfg.m, cfg.R);
    GridPtr const grid = make_grid(sphere, cfg.grid_n);

    ExperimentRecord rec;
    rec.experiment = "riesz";
    rec.m = cfg.m;
    rec.R = cfg.R;
    rec.seed = cfg.seed;
    rec.table.columns = {"trial", "case", "f_kind", "g_kind", "kernel_kind",
                         "lhs", "rhs", "margin", "tolerance", "holds"};

    RandomStream const base(cfg.seed, cfg.stream_id);
    double max_violation = -std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int t = 0; t < cfg.trials; ++t)
    {
        RandomStream s = base.substream(static_cast<std::uint64_t>(t));
        bool const f_ind = s.uniform() < 0.5;
        bool const g_ind = s.uniform() < 0.5;
        ZonalFunction const f = f_ind ? random_indicator(grid, s) : random_step(grid, s);
        ZonalFunction const g = g_ind ? random_indicator(grid, s) : random_step(grid, s);
        std::string kernel_kind;
        MonotoneKernel const kernel = random_kernel(s, kernel_kind);

        KernelMatrix const matrix(grid, kernel, cfg.threads);
        double const lhs = riesz_functional(f, g, matrix);
        double const rhs = riesz_functional(rearrange(f), rearrange(g), matrix);
        double const tol = riesz_grid_tolerance(f, g, kernel);
        double const margin = lhs - rhs;
        bool const holds = margin <= tol;
        violations += !holds;
        max_violation = std::max(max_violation, margin - tol);
        rec.table.add_row({std::int64_t{t}, std::string("random"),
                           std::string(f_ind ? "indicator" : "step"),
                           std::string(g_ind ? "indicator" : "step"), kernel_kind, lhs, rhs,
                           margin, tol, holds});
    }
    rec.outcomes.emplace_back("trials", cfg.trials);
    rec.outcomes.emplace_back("violations", violations);
    rec.outcomes.emplace_back("max_violation_margin", max_violation);
    add_check(rec,
              "no_violations",
              violations == 0,
              std::to_string(violations) + " of " + std::to_string(cfg.trials)
                  + " trials exceed tolerance");

    // Equality cases, all against fixed inputs
    constexpr double equality_tol = 1e-9;
    auto equality_row = [&](std::int64_t index,
                            char const* name,
                            ZonalFunction const& f,
                            ZonalFunction const& g,
                            MonotoneKernel const& kernel,
                            char const* kernel_kind) {
        KernelMatrix const matrix(grid, kernel, cfg.threads);
        double const lhs = riesz_functional(f, g, matrix);
        double const rhs = riesz_functional(rearrange(f), rearrange(g), matrix);
        double const scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        bool const holds = std::fabs(lhs - rhs) <= equality_tol * scale;
        rec.table.add_row({index, std::string(name), std::string("fixed"),
                           std::string("fixed"), std::string(kernel_kind), lhs, rhs,
                           lhs - rhs, equality_tol * scale, holds});
        add_check(rec,
                  std::string("equality_") + name,
                  holds,
                  "lhs " + fmt(lhs) + ", rhs " + fmt(rhs));
    };

    RandomStream s = base.substream(static_cast<std::uint64_t>(cfg.trials));
    ZonalFunction const f = random_step(grid, s);
    ZonalFunction const g = random_indicator(grid, s);
    std::int64_t const next = cfg.trials;
    equality_row(next, "constant_kernel", f, g, MonotoneKernel::constant(1.0), "constant");
    equality_row(next + 1,
                 "symmetric_decreasing",
                 rearrange(f),
                 rearrange(g),
                 MonotoneKernel::step({-0.3, 0.4}, {0.2, 0.5, 1.0}),
                 "step");
    equality_row(next + 2,
                 "zero_function",
                 ZonalFunction(grid, 0.0),
                 g,
                 MonotoneKernel::indicator(1.0),
                 "indicator");

    rec.wall_seconds = seconds_since(start);
    return rec;
}

//---------------------------------------------------------------------------//
// Proof chain
//---------------------------------------------------------------------------//

ExperimentRecord run_proof_chain(ProofChainConfig const& cfg)
{
    auto const start = Clock::now();
    Sphere const sphere(cfg.m, cfg.R);
    SphereSet const set = canonicalize(parse_set(cfg.set, sphere));
    ProofChainReport const rep
        = proof_chain_check(set, cfg.omega, cfg.eps, cfg.grid_n, cfg.threads);

    ExperimentRecord rec;
    rec.experiment = "proof-chain";
    rec.m = cfg.m;
    rec.R = cfg.R;
    rec.set_descriptor = to_json(set);
    rec.theta = rep.theta;
    rec.omega = rep.omega;
    rec.eps = rep.eps;

    rec.exact.emplace_back("V", rep.V);
    rec.exact.emplace_back("threshold", rep.threshold);
    rec.outcomes.emplace_back("beta", rep.beta);
    rec.outcomes.emplace_back("beta_cell", rep.beta_cell);
    rec.outcomes.emplace_back("total_psi_star", rep.total_psi_star);
    rec.outcomes.emplace_back("total_psi_bar", rep.total_psi_bar);
    rec.outcomes.emplace_back("prefix_psi_star", rep.prefix_psi_star);
    rec.outcomes.emplace_back("prefix_psi_bar", rep.prefix_psi_bar);
    rec.outcomes.emplace_back("min_psi_bar_band", rep.min_psi_bar_band);
    rec.outcomes.emplace_back("integral_tolerance", rep.integral_tolerance);
    rec.outcomes.emplace_back("pointwise_tolerance", rep.pointwise_tolerance);

    add_check(rec,
              "layer_cake_totals",
              rep.layer_cake_ok,
              "psi* " + fmt(rep.total_psi_star) + ", psi-bar " + fmt(rep.total_psi_bar));
    add_check(rec,
              "rearrangement_on_prefix",
              rep.rearrangement_ok,
              "psi* " + fmt(rep.prefix_psi_star) + " <= psi-bar " + fmt(rep.prefix_psi_bar));
    add_check(rec,
              "psi_bar_ge_V_near_equator",
              rep.greater_v_ok,
              "min " + fmt(rep.min_psi_bar_band) + " vs V " + fmt(rep.V));

    // A cap is its own rearrangement, so the prefix integrals coincide
    if (std::holds_alternative<CapShape>(set.shape()))
    {
        double const gap = std::fabs(rep.prefix_psi_star - rep.prefix_psi_bar);
        double const scale = std::max(1.0, std::fabs(rep.prefix_psi_bar));
        rec.outcomes.emplace_back("equality_gap", gap);
        add_check(rec, "cap_equality", gap <= 1e-9 * scale, "gap " + fmt(gap));
    }

    rec.table.columns = {"cell_index", "latitude_midpoint", "f", "f_star", "psi",
                         "psi_star", "psi_bar", "beta", "V", "threshold"};
    GridPtr const grid = make_grid(sphere, cfg.grid_n);
    for (int i = 0; i < cfg.grid_n; ++i)
    {
        rec.table.add_row({std::int64_t{i}, grid->midpoints()[i], rep.f[i], rep.f_star[i],
                           rep.psi[i], rep.psi_star[i], rep.psi_bar[i], rep.beta, rep.V,
                           rep.threshold});
    }
    rec.wall_seconds = seconds_since(start);
    return rec;
}

}  // namespace sphiso
