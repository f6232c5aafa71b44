#pragma once

#include <string>
#include <utility>
#include <vector>

namespace s3v {

// Outcome of one verification. `locator` carries machine-readable key/value
// pairs identifying where a failure happened (quadruple, class, monomial...).
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string message;
    std::vector<std::pair<std::string, std::string>> locator;

    static CheckResult pass(std::string name, std::string message = {}) {
        return CheckResult{std::move(name), true, std::move(message), {}};
    }
    static CheckResult fail(std::string name, std::string message,
                            std::vector<std::pair<std::string, std::string>> locator = {}) {
        return CheckResult{std::move(name), false, std::move(message), std::move(locator)};
    }
    CheckResult& with(std::string key, std::string value) {
        locator.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

}  // namespace s3v
