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

#include "sphiso/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphiso {

unsigned default_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n,
                  std::function<void(std::size_t)> const& body,
                  unsigned threads)
{
    if (threads == 0)
        threads = default_threads();
    std::size_t const workers = std::min<std::size_t>(threads, n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    auto run_block = [&](std::size_t begin, std::size_t end) {
        try
        {
            for (std::size_t i = begin; i < end; ++i)
                body(i);
        }
        catch (...)
        {
            std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
        {
            std::size_t const begin = n * w / workers;
            std::size_t const end = n * (w + 1) / workers;
            pool.emplace_back(run_block, begin, end);
        }
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace sphiso
