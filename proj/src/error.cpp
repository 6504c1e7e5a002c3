#include "curveflow/error.hpp"

namespace curveflow {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::OriginOutside: return "OriginOutside";
        case ErrorCode::NotAnOval: return "NotAnOval";
        case ErrorCode::BlowUp: return "BlowUp";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::CurveCollapsed: return "CurveCollapsed";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::IsoperimetricViolation: return "IsoperimetricViolation";
        case ErrorCode::NotConvexAfterGluing: return "NotConvexAfterGluing";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotAShrinker: return "NotAShrinker";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace curveflow
