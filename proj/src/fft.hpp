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

#include <complex>
#include <span>

namespace qadc::detail {

// In-place power-of-two transforms over contiguous complex data.
// forward: X[m] = sum_i x[i] exp(-2 pi i m i / M)
// inverse: the exact inverse of forward (includes the 1/M factor).
void fft_forward(std::span<std::complex<double>> data);
void fft_inverse(std::span<std::complex<double>> data);

}  // namespace qadc::detail
