// Copyright 2026 The chainlab Authors
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

#include "chainlab/errors.hpp"

namespace chainlab {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonHermitianInput: return "NonHermitianInput";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::InvalidChain: return "InvalidChain";
        case ErrorKind::NoRevivalFound: return "NoRevivalFound";
        case ErrorKind::ExcessiveLeakage: return "ExcessiveLeakage";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::SynthesisFailed: return "SynthesisFailed";
        case ErrorKind::NotDiagonalizableLocally: return "NotDiagonalizableLocally";
        case ErrorKind::InvalidGrouping: return "InvalidGrouping";
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

}  // namespace chainlab
