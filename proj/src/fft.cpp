// Copyright 2026 The qadc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace qadc::detail {
namespace {

// FFTW planning is not thread-safe; execution with new-array plans is.
// Plans are made FFTW_UNALIGNED so any buffer can be fed to them and the
// codelet choice does not depend on the buffer address (keeps output
// bitwise-deterministic across runs).
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int size, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(size, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_complex* scratch = fftw_alloc_complex(static_cast<size_t>(size));
        fftw_plan plan = fftw_plan_dft_1d(size, scratch, scratch, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

void run(std::span<std::complex<double>> data, int sign) {
    if (data.empty()) return;
    fftw_plan plan = PlanCache::instance().get(static_cast<int>(data.size()), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void fft_forward(std::span<std::complex<double>> data) { run(data, FFTW_FORWARD); }

void fft_inverse(std::span<std::complex<double>> data) {
    run(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
}

}  // namespace qadc::detail
