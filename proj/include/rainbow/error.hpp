#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

enum class ErrorCode {
    DifferingBitCount,
    EmptyGraph,
    VertexNotInGraph,
    InvalidGraph,
    CycleDetected,
    DisconnectedInput,
    IndexOutOfRange,
    EmptyTree,
    NotASpider,
    LimitExceeded,
    PreconditionViolated,
    NoCandidate,
    RecursionDepthExceeded,
    DegreeTooSmall,
    BudgetExceeded,
    ParseError,
    TooLarge,
};

auto to_string(ErrorCode code) -> std::string_view;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    auto code() const noexcept -> ErrorCode { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rainbow
