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

#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cstddef>

namespace qadc::detail {

/// Composite 30-point Gauss-Legendre rule over `panels` equal panels.
template <class F>
double integrate(F&& f, double a, double b, std::size_t panels) {
    if (b <= a || panels == 0) return 0.0;
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + static_cast<double>(p) * h;
        total += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, lo + h);
    }
    return total;
}

}  // namespace qadc::detail
