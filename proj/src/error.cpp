#include "rainbow/error.hpp"

namespace rainbow {

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
        case ErrorCode::DifferingBitCount: return "DifferingBitCount";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::VertexNotInGraph: return "VertexNotInGraph";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::DisconnectedInput: return "DisconnectedInput";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::EmptyTree: return "EmptyTree";
        case ErrorCode::NotASpider: return "NotASpider";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NoCandidate: return "NoCandidate";
        case ErrorCode::RecursionDepthExceeded: return "RecursionDepthExceeded";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message) :
    std::runtime_error(std::string(to_string(code)) + ": " + message),
    code_(code)
{
}

}  // namespace rainbow
