#pragma once

#include <string>
#include <vector>

#include "ndsr/instance.hpp"

namespace ndsr {

struct ValidationReport {
    std::vector<std::string> structural_issues;
    std::vector<char> commodity_feasible;  // one flag per commodity

    bool ok() const {
        if (!structural_issues.empty()) return false;
        for (char f : commodity_feasible)
            if (!f) return false;
        return true;
    }
};

/// Structural checks (self-loops, duplicate arcs, bad endpoints, negative or
/// non-finite data) plus a per-commodity feasibility probe via the
/// constrained shortest path with a zero-cost objective. Violations are
/// report entries, never exceptions.
ValidationReport validate_instance(const Instance& inst);

}  // namespace ndsr
