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

#include <array>
#include <cstdint>
#include <limits>

namespace sphiso {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

//! One block of the Philox4x32-10 counter-based generator
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

//! Inverse standard normal CDF (Wichura AS241, about 1e-16 relative)
double normal_quantile(double p);

//---------------------------------------------------------------------------//
/*!
 * Reproducible random stream keyed by (seed, stream_id).
 *
 * Output block i is philox(counter = {i, stream_id}, key = seed), so a stream
 * is a pure function of its identity and position. Distinct stream ids give
 * independent sequences; substream(i) derives child ids for parallel work.
 * A single stream must not be shared between threads.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    //! Child stream for work item index, independent of the parent sequence
    RandomStream substream(std::uint64_t index) const;

    std::uint64_t next_u64();
    //! Uniform on the open interval (0, 1) with 53 random bits
    double uniform();
    //! Standard normal by inversion; consumes exactly one uniform
    double normal();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()() { return next_u64(); }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_{0};
    std::uint64_t buffered_{0};
    bool has_buffered_{false};
};

//! SplitMix64 finalizer (a bijection on 64-bit words)
std::uint64_t mix64(std::uint64_t x);

}  // namespace sphiso
