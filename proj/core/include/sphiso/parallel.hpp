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

#include <cstddef>
#include <functional>

namespace sphiso {

//! Worker count used when a caller passes 0: hardware concurrency, at least 1
unsigned default_threads();

/*!
 * Run body(i) for i in [0, n) on up to threads workers.
 *
 * Indices are split into contiguous blocks. Each index runs exactly once, so
 * bodies writing only to slot i give results independent of the thread
 * count. The first exception thrown by any body is rethrown.
 */
void parallel_for(std::size_t n,
                  std::function<void(std::size_t)> const& body,
                  unsigned threads = 0);

}  // namespace sphiso
