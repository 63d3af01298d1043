#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace qdskit {

/// Named pass/fail verdicts produced by the checkers of every module.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    void append(const Report& other, const std::string& prefix = {}) {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.detail});
    }
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::vector<const Check*> failures() const {
        std::vector<const Check*> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(&c);
        return out;
    }
};

}  // namespace qdskit
