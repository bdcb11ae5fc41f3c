/*
 Copyright 2026 The niquad Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "niquad/error.hpp"

namespace niquad {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::kSingular: return "SINGULAR";
        case ErrorCode::kNotSimplePole: return "NOT_SIMPLE_POLE";
        case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
        case ErrorCode::kNonuniformSampling: return "NONUNIFORM_SAMPLING";
        case ErrorCode::kNonFinite: return "NON_FINITE";
        case ErrorCode::kConfigInvalid: return "CONFIG_INVALID";
        case ErrorCode::kAttitudeBound: return "ATTITUDE_BOUND";
        case ErrorCode::kParseError: return "PARSE_ERROR";
        case ErrorCode::kValidationError: return "VALIDATION_ERROR";
        case ErrorCode::kIo: return "IO_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace niquad
