/*
Copyright 2026 The dagsched Authors

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

#include "error.hpp"

namespace dagsched {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DuplicateTaskId: return "DuplicateTaskId";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::UnknownEdgeEndpoint: return "UnknownEdgeEndpoint";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::NotReady: return "NotReady";
        case ErrorCode::DuplicateMachineId: return "DuplicateMachineId";
        case ErrorCode::UnknownMachine: return "UnknownMachine";
        case ErrorCode::NoLinkDefined: return "NoLinkDefined";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::NonPositiveSpeed: return "NonPositiveSpeed";
        case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
        case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace dagsched
