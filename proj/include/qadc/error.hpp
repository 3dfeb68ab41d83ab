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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qadc {

enum class ErrorCode {
    InvalidArgument = 1,
    Leakage = 2,
    NotUnitary = 3,
    DimensionMismatch = 4,
    Precondition = 5,
    Io = 6,
};

/// Every failure raised by the library carries the pipeline stage it came from
/// so that diagnostics read "stage: message".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), code_(code), stage_(std::move(stage)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& stage() const noexcept { return stage_; }

    /// Same error, relabelled with an enclosing stage ("outer/inner").
    Error within(const std::string& outer) const {
        std::string msg = what();
        msg = msg.substr(stage_.size() + 2);
        return Error(code_, outer + "/" + stage_, msg);
    }

private:
    ErrorCode code_;
    std::string stage_;
};

/// Short %g rendering for diagnostics.
inline std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace qadc
