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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sphiso/csv.hpp"
#include "sphiso/sets.hpp"

namespace sphiso {

char const* version();

//! Sampled quantity with its standard error
struct MonteCarloEstimate
{
    double mean{0};
    double std_error{0};
    std::uint64_t n{0};
    std::uint64_t seed{0};
};

struct WilsonInterval
{
    double lower;
    double upper;
};

//! Wilson score interval; the default z gives 95% coverage
WilsonInterval wilson_interval(std::uint64_t successes,
                               std::uint64_t n,
                               double z = 1.959963984540054);

struct PropertyCheck
{
    std::string name;
    bool passed;
    std::string detail;
};

//---------------------------------------------------------------------------//
/*!
 * Outcome of one verification run.
 *
 * The table is the CSV payload and depends only on the configuration and
 * seed. Wall time and versions go to the sidecar JSON only, so repeated runs
 * produce byte-identical CSV.
 */
struct ExperimentRecord
{
    std::string experiment;
    int m{0};
    double R{1};
    std::optional<nlohmann::json> set_descriptor;
    std::optional<double> theta;
    std::optional<double> omega;
    std::optional<double> eps;
    std::optional<std::uint64_t> seed;

    std::vector<std::pair<std::string, double>> exact;
    std::vector<std::pair<std::string, MonteCarloEstimate>> estimates;
    std::vector<std::pair<std::string, double>> outcomes;
    std::vector<PropertyCheck> checks;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> notes;

    CsvTable table;
    double wall_seconds{0};

    bool all_passed() const;
    double exact_value(std::string const& key) const;
    double outcome(std::string const& key) const;
    MonteCarloEstimate const& estimate(std::string const& key) const;
    bool check(std::string const& name) const;

    //! Config, summary, checks, wall time and version
    nlohmann::json sidecar(nlohmann::json const& config) const;
};

//---------------------------------------------------------------------------//
// Configurations
//---------------------------------------------------------------------------//

struct ConcentrationConfig
{
    int m{128};
    double R{1};
    double eps{0.1};
    //! Haar samples for the empirical estimate; 0 skips sampling
    std::uint64_t samples{0};
    std::uint64_t seed{1};
    std::uint64_t stream_id{0};
    unsigned threads{0};
};

struct BlowupConfig
{
    int m{128};
    double R{1};
    nlohmann::json set;
    double eps{0.1};
};

/*!
 * How the inner loop turns cap samples into an intersection estimate.
 *
 * hits counts samples inside A. conditional keeps each sample's latitude
 * about Y and adds the exact fraction of that latitude slice lying in A; it
 * needs a set whose shapes share an axis and resolves overlaps far below
 * 1/n_inner. automatic picks conditional whenever the set allows it.
 */
enum class InnerEstimator
{
    automatic,
    hits,
    conditional
};

InnerEstimator parse_inner_estimator(std::string const& name);
char const* to_string(InnerEstimator e);

struct Theorem1Config
{
    int m{128};
    double R{1};
    nlohmann::json set;
    double omega{0.9};
    double eps{0.1};
    std::uint64_t n_outer{2000};
    std::uint64_t n_inner{20000};
    InnerEstimator estimator{InnerEstimator::automatic};
    std::uint64_t seed{1};
    std::uint64_t stream_id{0};
    unsigned threads{0};
};

struct RieszConfig
{
    int m{8};
    double R{1};
    int grid_n{512};
    int trials{100};
    std::uint64_t seed{1};
    std::uint64_t stream_id{0};
    unsigned threads{0};
};

struct ProofChainConfig
{
    int m{16};
    double R{1};
    nlohmann::json set;
    double omega{1.0};
    double eps{0.1};
    int grid_n{4096};
    unsigned threads{0};
};

//---------------------------------------------------------------------------//
// Experiments
//---------------------------------------------------------------------------//

/*!
 * Probability that a Haar point lies within eps of the equator of a pole,
 * 1 - 2 cap_fraction(pi/2 - eps), with an optional sampled estimate.
 */
ExperimentRecord run_concentration(ConcentrationConfig const& cfg);

/*!
 * Exact probability of the (pi/2 - theta + eps)-neighborhood of A, where
 * theta is its effective angle. Complements of caps are rewritten as caps.
 */
ExperimentRecord run_blowup(BlowupConfig const& cfg);

/*!
 * For n_outer Haar points Y, estimate mu(A and Cap(Y, omega + eps)) from
 * n_inner uniform samples in the cap and count how often it exceeds
 * (1 - eps) V. One CSV row per Y.
 */
ExperimentRecord run_theorem1(Theorem1Config const& cfg);

/*!
 * Random rearrangement-inequality trials plus the three equality cases
 * (constant kernel, symmetric decreasing inputs, zero function).
 */
ExperimentRecord run_riesz(RieszConfig const& cfg);

//! proof_chain_check serialized as one CSV row per grid cell
ExperimentRecord run_proof_chain(ProofChainConfig const& cfg);

}  // namespace sphiso
