#pragma once

#include <string>
#include <vector>

#include "qwave/golden.hpp"

namespace qwave {

enum class Status { Pass, Warn, Fail };
std::string status_name(Status s);

struct Check {
    std::string group;
    std::string id;
    Status status = Status::Pass;
    std::string expected;
    std::string actual;
    std::string note;
};

struct VerifyReport {
    std::vector<Check> checks;

    std::size_t count(Status s) const;
    std::size_t count(const std::string& group, Status s) const;
    bool ok() const { return count(Status::Fail) == 0; }
};

struct VerifyOptions {
    bool strict = false;
    /// Mismatching printed refinement coefficients tolerated as WARN.
    std::size_t typo_budget = 2;
    double decimal_tolerance = 1e-3;
};

/// Recomputes every reference entry and compares.  Known anomalies (label
/// mix-ups, isolated coefficient misprints) are WARN, or FAIL with `strict`.
VerifyReport verify(const Golden& g, const VerifyOptions& opt = {});

}  // namespace qwave
