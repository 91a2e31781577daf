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

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sphiso/geometry.hpp"
#include "sphiso/zonal.hpp"

namespace sphiso {

//! Operation not defined for this shape (e.g. neighborhood of a complement)
class UnsupportedShapeError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Malformed JSON set descriptor
class DescriptorError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class SphereSet;

struct CapShape
{
    CapSpec cap;
};

//! Points whose latitude from pole lies in the closed interval [theta1, theta2]
struct BandShape
{
    SpherePoint pole;
    double theta1;
    double theta2;
};

struct UnionShape
{
    std::vector<CapSpec> caps;
};

struct ComplementShape
{
    std::shared_ptr<SphereSet const> inner;
};

//---------------------------------------------------------------------------//
/*!
 * Immutable measurable subset of the sphere with exact zonal arithmetic.
 *
 * Closed sets throughout: cap and band boundaries count as members.
 */
class SphereSet
{
  public:
    using Shape = std::variant<CapShape, BandShape, UnionShape, ComplementShape>;

    static SphereSet cap(CapSpec cap);
    static SphereSet cap(SpherePoint pole, double theta);
    static SphereSet band(SpherePoint pole, double theta1, double theta2);
    static SphereSet union_of(std::vector<CapSpec> caps);
    static SphereSet complement(SphereSet inner);

    Sphere const& sphere() const noexcept { return sphere_; }
    Shape const& shape() const noexcept { return shape_; }

    //! All poles appearing in the set, in definition order
    std::vector<SpherePoint> poles() const;

  private:
    SphereSet(Sphere sphere, Shape shape);

    Sphere sphere_;
    Shape shape_;
};

//---------------------------------------------------------------------------//
// Descriptors
//---------------------------------------------------------------------------//

/*!
 * Parse a JSON set descriptor.
 *
 * Objects carry "shape": "cap" | "band" | "union" | "complement". Poles are
 * given by "pole_axis" (default 0) with optional "pole_sign" (+1 or -1), or
 * by an explicit coordinate array "pole". A bare JSON array is a union of
 * caps; a complement wraps its operand under "of".
 */
SphereSet parse_set(nlohmann::json const& descriptor, Sphere const& sphere);
nlohmann::json to_json(SphereSet const& set);

//---------------------------------------------------------------------------//
// Measures
//---------------------------------------------------------------------------//

struct MeasureOptions
{
    //! Sample count for sets without exact measure arithmetic
    std::uint64_t samples{1'000'000};
    std::uint64_t seed{0x5EEDu};
};

/*!
 * Measure of a set, carrying both P(A) and 1 - P(A) in log form so
 * complements stay accurate when either side is tiny.
 *
 * Overlapping unions of caps with non-collinear poles have no exact formula;
 * those come back as Monte Carlo estimates with exact == false.
 */
struct SetMeasure
{
    LogMeasure measure;
    double log_p{neg_inf};
    double log_q{0};
    bool exact{true};
    double std_error{0};
    std::uint64_t samples{0};

    double probability() const { return std::exp(log_p); }
};

struct EffectiveAngle
{
    double theta;
    bool exact;
};

bool contains(SphereSet const& set, SpherePoint const& z);
SetMeasure measure(SphereSet const& set, MeasureOptions const& opts = {});
EffectiveAngle effective_angle(SphereSet const& set, MeasureOptions const& opts = {});

//! Log of the normalized measure of the latitude band [theta1, theta2]
double log_band_fraction(Sphere const& sphere, double theta1, double theta2);

//! t-neighborhood; complements throw UnsupportedShapeError
SphereSet neighborhood(SphereSet const& set, double t);

//---------------------------------------------------------------------------//
// Zonal structure
//---------------------------------------------------------------------------//

struct LatitudeInterval
{
    double lo;
    double hi;
};

//! Pole shared (up to sign) by every shape in the set, if any
std::optional<SpherePoint> common_axis(SphereSet const& set);

/*!
 * The set as a sorted union of closed latitude intervals about axis.
 *
 * Throws UnsupportedShapeError if some pole is not +-axis.
 */
std::vector<LatitudeInterval> latitude_intervals(SphereSet const& set,
                                                 SpherePoint const& axis);

/*!
 * Indicator profile on a grid: 1 where the cell midpoint lies in the set.
 *
 * Latitude is measured from the set's common axis (its first pole) unless
 * a reference pole is given. Non-axis-aligned sets are rejected.
 */
ZonalFunction zonal_profile(SphereSet const& set,
                            GridPtr grid,
                            std::optional<SpherePoint> const& reference = std::nullopt);

//! Rewrite complements of caps (and of pole-touching bands) as caps
SphereSet canonicalize(SphereSet const& set);

//---------------------------------------------------------------------------//
// Constructors for test families with a prescribed effective angle
//---------------------------------------------------------------------------//

//! Band [theta1, theta2] about pole with theta2 chosen for effective angle theta
SphereSet band_with_effective_angle(SpherePoint const& pole, double theta1, double theta);
//! Two equal caps about pole and its antipode with total effective angle theta
SphereSet antipodal_caps_with_effective_angle(SpherePoint const& pole, double theta);

}  // namespace sphiso
