// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef MNTGEN_REPORT_HPP
#define MNTGEN_REPORT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace mntgen {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Named pass/fail entries; a failed check never throws.
class VerificationReport {
public:
    void add(std::string name, bool passed, std::string detail = {}) {
        checks_.push_back({std::move(name), passed, std::move(detail)});
    }

    const std::vector<CheckResult> &checks() const { return checks_; }

    bool all_passed() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult &c) { return c.passed; });
    }

    /// Result of the named check, or nullptr when it was never run.
    const CheckResult *find(const std::string &name) const {
        auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult &c) { return c.name == name; });
        return it == checks_.end() ? nullptr : &*it;
    }

    bool passed(const std::string &name) const {
        const CheckResult *c = find(name);
        return c != nullptr && c->passed;
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto &c : checks_) {
            if (!c.passed) {
                out.push_back(c.name);
            }
        }
        return out;
    }

private:
    std::vector<CheckResult> checks_;
};

}  // namespace mntgen

#endif  // MNTGEN_REPORT_HPP
