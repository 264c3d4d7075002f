#include "rainbow/report.hpp"

#include <algorithm>

namespace rainbow {

void VerificationReport::add(std::string name, bool passed, std::string witness)
{
    checks_.push_back({std::move(name), passed, passed ? std::string{} : std::move(witness)});
}

auto VerificationReport::passed() const -> bool
{
    return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
}

auto VerificationReport::find(const std::string& name) const -> const CheckResult*
{
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
}

auto VerificationReport::first_failure() const -> const CheckResult*
{
    auto it = std::find_if(checks_.begin(), checks_.end(), [](const CheckResult& c) { return !c.passed; });
    return it == checks_.end() ? nullptr : &*it;
}

auto VerificationReport::to_text() const -> std::string
{
    std::string out;
    for (const auto& c : checks_) {
        out += c.name;
        out += c.passed ? "=pass" : "=fail";
        if (!c.passed && !c.witness.empty()) {
            out += '\t';
            out += c.witness;
        }
        out += '\n';
    }
    return out;
}

}  // namespace rainbow
