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


#include "wmtomo/error.h"

namespace wmtomo {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
        case ErrorKind::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::NotPositiveSemidefinite:
            return "NotPositiveSemidefinite";
        case ErrorKind::BadTrace:
            return "BadTrace";
        case ErrorKind::EigenSolverFailure:
            return "EigenSolverFailure";
        case ErrorKind::ZeroWeightOutcome:
            return "ZeroWeightOutcome";
        case ErrorKind::BadWeights:
            return "BadWeights";
        case ErrorKind::StrengthZeroNotInvertible:
            return "StrengthZeroNotInvertible";
        case ErrorKind::FrameIncomplete:
            return "FrameIncomplete";
        case ErrorKind::BadConditionalData:
            return "BadConditionalData";
        case ErrorKind::ZeroProbabilityPostselection:
            return "ZeroProbabilityPostselection";
        case ErrorKind::SamplingFromQuasiDistribution:
            return "SamplingFromQuasiDistribution";
        case ErrorKind::EmptyPostselection:
            return "EmptyPostselection";
        case ErrorKind::TooFewPoints:
            return "TooFewPoints";
        case ErrorKind::UnknownScenario:
            return "UnknownScenario";
        case ErrorKind::Config:
            return "Config";
    }
    return "Unknown";
}

bool is_precondition_violation(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::StrengthZeroNotInvertible:
        case ErrorKind::FrameIncomplete:
        case ErrorKind::BadConditionalData:
        case ErrorKind::ZeroProbabilityPostselection:
        case ErrorKind::SamplingFromQuasiDistribution:
        case ErrorKind::EmptyPostselection:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace wmtomo
