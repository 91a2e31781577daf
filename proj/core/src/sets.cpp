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

#include "sphiso/sets.hpp"

#include <algorithm>
#include <cmath>

#include "sphiso/sampling.hpp"

namespace sphiso {

namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double collinear_tol = 1e-12;

void check_same_sphere(Sphere const& a, Sphere const& b)
{
    if (!(a == b))
        throw DomainError("set members must share one sphere");
}

bool collinear(SpherePoint const& a, SpherePoint const& b)
{
    return std::fabs(unit_dot(a, b)) >= 1 - collinear_tol;
}

}  // namespace

//---------------------------------------------------------------------------//

SphereSet::SphereSet(Sphere sphere, Shape shape)
    : sphere_(sphere), shape_(std::move(shape))
{
}

SphereSet SphereSet::cap(CapSpec cap)
{
    Sphere const sphere = cap.pole.sphere();
    return SphereSet(sphere, CapShape{std::move(cap)});
}

SphereSet SphereSet::cap(SpherePoint pole, double theta)
{
    return cap(CapSpec(std::move(pole), theta));
}

SphereSet SphereSet::band(SpherePoint pole, double theta1, double theta2)
{
    if (!(theta1 >= 0 && theta1 <= theta2 && theta2 <= pi))
        throw DomainError("band: require 0 <= theta1 <= theta2 <= pi");
    Sphere const sphere = pole.sphere();
    return SphereSet(sphere, BandShape{std::move(pole), theta1, theta2});
}

SphereSet SphereSet::union_of(std::vector<CapSpec> caps)
{
    if (caps.empty())
        throw DomainError("union: need at least one cap");
    Sphere const sphere = caps.front().pole.sphere();
    for (auto const& c : caps)
        check_same_sphere(sphere, c.pole.sphere());
    return SphereSet(sphere, UnionShape{std::move(caps)});
}

SphereSet SphereSet::complement(SphereSet inner)
{
    Sphere const sphere = inner.sphere();
    return SphereSet(
        sphere, ComplementShape{std::make_shared<SphereSet const>(std::move(inner))});
}

std::vector<SpherePoint> SphereSet::poles() const
{
    return std::visit(
        Overloaded{
            [](CapShape const& s) { return std::vector<SpherePoint>{s.cap.pole}; },
            [](BandShape const& s) { return std::vector<SpherePoint>{s.pole}; },
            [](UnionShape const& s) {
                std::vector<SpherePoint> out;
                for (auto const& c : s.caps)
                    out.push_back(c.pole);
                return out;
            },
            [](ComplementShape const& s) { return s.inner->poles(); },
        },
        shape_);
}

//---------------------------------------------------------------------------//
// Descriptors
//---------------------------------------------------------------------------//

namespace {

using nlohmann::json;

SpherePoint parse_pole(json const& j, Sphere const& sphere)
{
    if (j.contains("pole"))
    {
        auto coords = j.at("pole").get<std::vector<double>>();
        if (coords.size() != static_cast<std::size_t>(sphere.dim()))
            throw DescriptorError("pole: coordinate count must equal m");
        return SpherePoint::normalized(sphere, std::move(coords));
    }
    int const axis = j.value("pole_axis", 0);
    int const sign = j.value("pole_sign", 1);
    if (axis < 0 || axis >= sphere.dim())
        throw DescriptorError("pole_axis out of range for this dimension");
    if (sign != 1 && sign != -1)
        throw DescriptorError("pole_sign must be 1 or -1");
    return SpherePoint::axis(sphere, axis, sign);
}

double parse_angle(json const& j, char const* key)
{
    if (!j.contains(key))
        throw DescriptorError(std::string("missing field \"") + key + "\"");
    double const x = j.at(key).get<double>();
    if (!(x >= 0 && x <= pi))
        throw DescriptorError(std::string("field \"") + key + "\" must lie in [0, pi]");
    return x;
}

CapSpec parse_cap(json const& j, Sphere const& sphere)
{
    if (!j.is_object() || j.value("shape", std::string("cap")) != "cap")
        throw DescriptorError("union members must be cap descriptors");
    return CapSpec(parse_pole(j, sphere), parse_angle(j, "theta"));
}

SphereSet parse_union(json const& members, Sphere const& sphere)
{
    if (!members.is_array() || members.empty())
        throw DescriptorError("union: expected a non-empty array of caps");
    std::vector<CapSpec> caps;
    for (auto const& m : members)
        caps.push_back(parse_cap(m, sphere));
    return SphereSet::union_of(std::move(caps));
}

SphereSet parse_impl(json const& j, Sphere const& sphere)
{
    if (j.is_array())
        return parse_union(j, sphere);
    if (!j.is_object())
        throw DescriptorError("set descriptor must be an object or an array");
    if (!j.contains("shape"))
        throw DescriptorError("set descriptor lacks \"shape\"");
    auto const shape = j.at("shape").get<std::string>();
    if (shape == "cap")
        return SphereSet::cap(parse_cap(j, sphere));
    if (shape == "band")
    {
        double const t1 = parse_angle(j, "theta1");
        double const t2 = parse_angle(j, "theta2");
        if (t1 > t2)
            throw DescriptorError("band: theta1 must not exceed theta2");
        return SphereSet::band(parse_pole(j, sphere), t1, t2);
    }
    if (shape == "union")
    {
        if (j.contains("caps"))
            return parse_union(j.at("caps"), sphere);
        if (j.contains("members"))
            return parse_union(j.at("members"), sphere);
        throw DescriptorError("union: expected \"caps\"");
    }
    if (shape == "complement")
    {
        if (!j.contains("of"))
            throw DescriptorError("complement: expected \"of\"");
        return SphereSet::complement(parse_impl(j.at("of"), sphere));
    }
    throw DescriptorError("unknown shape \"" + shape + "\"");
}

void pole_to_json(json& j, SpherePoint const& pole)
{
    if (auto k = pole.axis_index())
    {
        j["pole_axis"] = *k;
        j["pole_sign"] = pole[*k] > 0 ? 1 : -1;
    }
    else
    {
        j["pole"] = std::vector<double>(pole.coords().begin(), pole.coords().end());
    }
}

json cap_to_json(CapSpec const& c)
{
    json j;
    j["shape"] = "cap";
    pole_to_json(j, c.pole);
    j["theta"] = c.theta;
    return j;
}

}  // namespace

SphereSet parse_set(nlohmann::json const& descriptor, Sphere const& sphere)
{
    try
    {
        return parse_impl(descriptor, sphere);
    }
    catch (nlohmann::json::exception const& e)
    {
        throw DescriptorError(std::string("set descriptor: ") + e.what());
    }
}

nlohmann::json to_json(SphereSet const& set)
{
    return std::visit(
        Overloaded{
            [](CapShape const& s) { return cap_to_json(s.cap); },
            [](BandShape const& s) {
                json j;
                j["shape"] = "band";
                pole_to_json(j, s.pole);
                j["theta1"] = s.theta1;
                j["theta2"] = s.theta2;
                return j;
            },
            [](UnionShape const& s) {
                json j;
                j["shape"] = "union";
                j["caps"] = json::array();
                for (auto const& c : s.caps)
                    j["caps"].push_back(cap_to_json(c));
                return j;
            },
            [](ComplementShape const& s) {
                json j;
                j["shape"] = "complement";
                j["of"] = to_json(*s.inner);
                return j;
            },
        },
        set.shape());
}

//---------------------------------------------------------------------------//
// Membership and measure
//---------------------------------------------------------------------------//

bool contains(SphereSet const& set, SpherePoint const& z)
{
    check_same_sphere(set.sphere(), z.sphere());
    return std::visit(
        Overloaded{
            [&](CapShape const& s) {
                return geodesic_angle(s.cap.pole, z) <= s.cap.theta;
            },
            [&](BandShape const& s) {
                double const lat = geodesic_angle(s.pole, z);
                return lat >= s.theta1 && lat <= s.theta2;
            },
            [&](UnionShape const& s) {
                return std::any_of(s.caps.begin(), s.caps.end(), [&](CapSpec const& c) {
                    return geodesic_angle(c.pole, z) <= c.theta;
                });
            },
            [&](ComplementShape const& s) { return !contains(*s.inner, z); },
        },
        set.shape());
}

double log_band_fraction(Sphere const& sphere, double theta1, double theta2)
{
    if (!(theta1 >= 0 && theta1 <= theta2 && theta2 <= pi))
        throw DomainError("band: require 0 <= theta1 <= theta2 <= pi");
    if (theta1 == theta2)
        return neg_inf;
    // Difference taken on the side of the sphere holding less mass
    if (theta1 + theta2 <= pi)
    {
        return log_sub_exp(log_cap_fraction(sphere, theta2),
                           log_cap_fraction(sphere, theta1));
    }
    return log_sub_exp(log_cap_fraction(sphere, pi - theta1),
                       log_cap_fraction(sphere, pi - theta2));
}

namespace {

SetMeasure from_logs(Sphere const& sphere, double log_p, double log_q)
{
    SetMeasure out;
    out.log_p = std::min(log_p, 0.0);
    out.log_q = std::min(log_q, 0.0);
    out.measure = LogMeasure{out.log_p + log_sphere_area(sphere).log_value};
    return out;
}

double log_sum_over(Sphere const& sphere, std::vector<LatitudeInterval> const& intervals)
{
    double total = neg_inf;
    for (auto const& iv : intervals)
        total = log_add_exp(total, log_band_fraction(sphere, iv.lo, iv.hi));
    return total;
}

std::vector<LatitudeInterval> gaps(std::vector<LatitudeInterval> const& intervals)
{
    std::vector<LatitudeInterval> out;
    double cursor = 0;
    for (auto const& iv : intervals)
    {
        if (iv.lo > cursor)
            out.push_back({cursor, iv.lo});
        cursor = std::max(cursor, iv.hi);
    }
    if (cursor < pi)
        out.push_back({cursor, pi});
    return out;
}

std::vector<LatitudeInterval> merge(std::vector<LatitudeInterval> intervals)
{
    std::sort(intervals.begin(), intervals.end(), [](auto const& a, auto const& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<LatitudeInterval> out;
    for (auto const& iv : intervals)
    {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

bool pairwise_disjoint(std::vector<CapSpec> const& caps)
{
    for (std::size_t i = 0; i < caps.size(); ++i)
    {
        for (std::size_t j = i + 1; j < caps.size(); ++j)
        {
            if (!(geodesic_angle(caps[i].pole, caps[j].pole)
                  > caps[i].theta + caps[j].theta))
            {
                return false;
            }
        }
    }
    return true;
}

SetMeasure estimate_measure(SphereSet const& set, MeasureOptions const& opts)
{
    if (opts.samples == 0)
        throw DomainError("measure: Monte Carlo estimate needs a positive sample count");
    RandomStream stream(opts.seed, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < opts.samples; ++i)
    {
        if (contains(set, sample_sphere(set.sphere(), stream)))
            ++hits;
    }
    double const n = static_cast<double>(opts.samples);
    double const p = hits / n;
    SetMeasure out = from_logs(set.sphere(),
                               hits == 0 ? neg_inf : std::log(p),
                               hits == opts.samples ? neg_inf : std::log1p(-p));
    out.exact = false;
    out.std_error = std::sqrt(p * (1 - p) / n);
    out.samples = opts.samples;
    return out;
}

}  // namespace

SetMeasure measure(SphereSet const& set, MeasureOptions const& opts)
{
    Sphere const& sphere = set.sphere();
    return std::visit(
        Overloaded{
            [&](CapShape const& s) {
                return from_logs(sphere,
                                 log_cap_fraction(sphere, s.cap.theta),
                                 log_cap_fraction(sphere, pi - s.cap.theta));
            },
            [&](BandShape const& s) {
                std::vector<LatitudeInterval> iv{{s.theta1, s.theta2}};
                return from_logs(
                    sphere, log_sum_over(sphere, iv), log_sum_over(sphere, gaps(iv)));
            },
            [&](UnionShape const& s) {
                if (auto axis = common_axis(set))
                {
                    auto const iv = latitude_intervals(set, *axis);
                    return from_logs(
                        sphere, log_sum_over(sphere, iv), log_sum_over(sphere, gaps(iv)));
                }
                if (pairwise_disjoint(s.caps))
                {
                    double log_p = neg_inf;
                    for (auto const& c : s.caps)
                        log_p = log_add_exp(log_p, log_cap_fraction(sphere, c.theta));
                    log_p = std::min(log_p, 0.0);
                    return from_logs(sphere, log_p, log1m_exp(log_p));
                }
                return estimate_measure(set, opts);
            },
            [&](ComplementShape const& s) {
                SetMeasure inner = measure(*s.inner, opts);
                SetMeasure out = from_logs(sphere, inner.log_q, inner.log_p);
                out.exact = inner.exact;
                out.std_error = inner.std_error;
                out.samples = inner.samples;
                return out;
            },
        },
        set.shape());
}

EffectiveAngle effective_angle(SphereSet const& set, MeasureOptions const& opts)
{
    SetMeasure const m = measure(set, opts);
    double theta = (m.log_p <= -std::numbers::ln2)
                       ? cap_angle_from_log(set.sphere(), m.log_p)
                       : pi - cap_angle_from_log(set.sphere(), m.log_q);
    return {theta, m.exact};
}

//---------------------------------------------------------------------------//

SphereSet neighborhood(SphereSet const& set, double t)
{
    if (!(t >= 0))
        throw DomainError("neighborhood: t must be nonnegative");
    return std::visit(
        Overloaded{
            [&](CapShape const& s) {
                return SphereSet::cap(s.cap.pole, std::min(s.cap.theta + t, pi));
            },
            [&](BandShape const& s) {
                return SphereSet::band(
                    s.pole, std::max(s.theta1 - t, 0.0), std::min(s.theta2 + t, pi));
            },
            [&](UnionShape const& s) {
                std::vector<CapSpec> grown;
                for (auto const& c : s.caps)
                    grown.emplace_back(c.pole, std::min(c.theta + t, pi));
                return SphereSet::union_of(std::move(grown));
            },
            [&](ComplementShape const&) -> SphereSet {
                throw UnsupportedShapeError(
                    "neighborhood: complements are not closed under this family");
            },
        },
        set.shape());
}

//---------------------------------------------------------------------------//

std::optional<SpherePoint> common_axis(SphereSet const& set)
{
    auto const poles = set.poles();
    for (std::size_t i = 1; i < poles.size(); ++i)
    {
        if (!collinear(poles.front(), poles[i]))
            return std::nullopt;
    }
    return poles.front();
}

std::vector<LatitudeInterval> latitude_intervals(SphereSet const& set,
                                                 SpherePoint const& axis)
{
    check_same_sphere(set.sphere(), axis.sphere());
    auto orientation = [&](SpherePoint const& pole) {
        double const d = unit_dot(pole, axis);
        if (std::fabs(d) < 1 - collinear_tol)
            throw UnsupportedShapeError("set is not aligned with the reference axis");
        return d > 0;
    };
    auto cap_interval = [&](SpherePoint const& pole, double lo, double hi) {
        return orientation(pole) ? LatitudeInterval{lo, hi}
                                 : LatitudeInterval{pi - hi, pi - lo};
    };
    return std::visit(
        Overloaded{
            [&](CapShape const& s) {
                return std::vector{cap_interval(s.cap.pole, 0, s.cap.theta)};
            },
            [&](BandShape const& s) {
                return std::vector{cap_interval(s.pole, s.theta1, s.theta2)};
            },
            [&](UnionShape const& s) {
                std::vector<LatitudeInterval> all;
                for (auto const& c : s.caps)
                    all.push_back(cap_interval(c.pole, 0, c.theta));
                return merge(std::move(all));
            },
            [&](ComplementShape const& s) {
                return gaps(latitude_intervals(*s.inner, axis));
            },
        },
        set.shape());
}

ZonalFunction zonal_profile(SphereSet const& set,
                            GridPtr grid,
                            std::optional<SpherePoint> const& reference)
{
    if (!grid)
        throw DomainError("zonal_profile: missing grid");
    check_same_sphere(set.sphere(), grid->sphere());
    std::optional<SpherePoint> axis = reference ? reference : common_axis(set);
    if (!axis)
        throw UnsupportedShapeError("zonal_profile: set is not axis-aligned");
    auto const intervals = latitude_intervals(set, *axis);

    std::vector<double> values(grid->size(), 0.0);
    auto mids = grid->midpoints();
    for (int i = 0; i < grid->size(); ++i)
    {
        double const phi = mids[i];
        for (auto const& iv : intervals)
        {
            if (phi >= iv.lo && phi <= iv.hi)
            {
                values[i] = 1;
                break;
            }
        }
    }
    return ZonalFunction(std::move(grid), std::move(values));
}

SphereSet canonicalize(SphereSet const& set)
{
    return std::visit(
        Overloaded{
            [&](CapShape const&) { return set; },
            [&](BandShape const& s) {
                if (s.theta1 == 0)
                    return SphereSet::cap(s.pole, s.theta2);
                return set;
            },
            [&](UnionShape const&) { return set; },
            [&](ComplementShape const& s) {
                SphereSet inner = canonicalize(*s.inner);
                if (auto const* c = std::get_if<ComplementShape>(&inner.shape()))
                    return *c->inner;
                if (auto const* c = std::get_if<CapShape>(&inner.shape()))
                    return SphereSet::cap(c->cap.pole.antipode(), pi - c->cap.theta);
                if (auto const* b = std::get_if<BandShape>(&inner.shape()))
                {
                    if (b->theta2 == pi)
                        return SphereSet::cap(b->pole, b->theta1);
                }
                return SphereSet::complement(std::move(inner));
            },
        },
        set.shape());
}

//---------------------------------------------------------------------------//

SphereSet band_with_effective_angle(SpherePoint const& pole, double theta1, double theta)
{
    Sphere const& sphere = pole.sphere();
    double const log_total = log_add_exp(log_cap_fraction(sphere, theta1),
                                         log_cap_fraction(sphere, theta));
    if (log_total > 0)
        throw DomainError("band_with_effective_angle: band would exceed the sphere");
    double const theta2 = std::max(theta1, cap_angle_from_log(sphere, log_total));
    return SphereSet::band(pole, theta1, theta2);
}

SphereSet antipodal_caps_with_effective_angle(SpherePoint const& pole, double theta)
{
    Sphere const& sphere = pole.sphere();
    double const half = cap_angle_from_log(
        sphere, log_cap_fraction(sphere, theta) - std::numbers::ln2);
    return SphereSet::union_of({CapSpec(pole, half), CapSpec(pole.antipode(), half)});
}

}  // namespace sphiso
