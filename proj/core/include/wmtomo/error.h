// Copyright 2026 The wmtomo Authors
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

#ifndef WMTOMO_ERROR_H
#define WMTOMO_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace wmtomo {

enum class ErrorKind {
    DimensionMismatch,
    InvalidArgument,
    IndexOutOfRange,
    NotHermitian,
    NotPositiveSemidefinite,
    BadTrace,
    EigenSolverFailure,
    ZeroWeightOutcome,
    BadWeights,
    StrengthZeroNotInvertible,
    FrameIncomplete,
    BadConditionalData,
    ZeroProbabilityPostselection,
    SamplingFromQuasiDistribution,
    EmptyPostselection,
    TooFewPoints,
    UnknownScenario,
    Config,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for errors that signal a violated mathematical precondition of the
/// measurement model (as opposed to malformed input or configuration).
bool is_precondition_violation(ErrorKind kind);

/// The single exception type thrown by the library. `kind()` discriminates.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace wmtomo

#endif
