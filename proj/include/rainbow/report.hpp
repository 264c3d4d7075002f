#pragma once

#include <string>
#include <vector>

namespace rainbow {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;  // empty when passed
};

/// Itemized outcome of a graph validation or an embedding verification.
class VerificationReport {
public:
    void add(std::string name, bool passed, std::string witness = {});

    auto passed() const -> bool;
    auto checks() const -> const std::vector<CheckResult>& { return checks_; }
    auto find(const std::string& name) const -> const CheckResult*;

    /// First failing check, or nullptr.
    auto first_failure() const -> const CheckResult*;

    /// One `name=pass|fail` line per check, witnesses appended after a tab.
    auto to_text() const -> std::string;

private:
    std::vector<CheckResult> checks_;
};

}  // namespace rainbow
