/*
 * Copyright 2026 The chaos-sampler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaos/stats.hpp"

#include "chaos/error.hpp"

namespace chaos {

MeanStderr mean_stderr(std::span<const double> xs) {
    if (xs.empty()) fail(ErrorKind::InvalidArgument, "mean of an empty sample");
    MeanStderr out;
    out.count = xs.size();
    const double n = static_cast<double>(xs.size());
    out.mean = compensated_sum(xs) / n;
    if (xs.size() < 2) return out;
    CompensatedSum ss;
    for (double x : xs) ss.add((x - out.mean) * (x - out.mean));
    out.std_error = std::sqrt(ss.value() / (n - 1.0) / n);
    out.std_error_defined = true;
    return out;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid-dimension";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::UnsupportedSize: return "unsupported-size";
        case ErrorKind::NumericFailure: return "numeric-failure";
        case ErrorKind::DegenerateConditioning: return "degenerate-conditioning";
        case ErrorKind::EmptyRecord: return "empty-record";
        case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InvalidConfig: return "invalid-config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace chaos
