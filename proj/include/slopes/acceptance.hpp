#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "slopes/certifier.hpp"

namespace slopes {

struct AcceptanceOptions {
    int workers = 1;
    ScaleCaps caps;
    std::set<std::string> disabled; // forwarded to every certificate run
    std::vector<int> determinism_workers = {1, 2, 8};
    std::set<int> only; // criterion ids to run; empty runs all
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double elapsed_ms = 0;
    double budget_ms = 0; // 0 when the criterion has no time budget
    nlohmann::json data;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

using CriterionCallback = std::function<void(const CriterionResult &)>;

/// Runs the eight acceptance criteria in order; `on_result` sees each one as it finishes.
AcceptanceReport run_acceptance(const AcceptanceOptions &options, const CriterionCallback &on_result = {});

/// Certificates and results for the fixed case list; the bytes do not depend on the worker count.
nlohmann::json acceptance_payload(int workers, const ScaleCaps &caps, const std::set<std::string> &disabled);

nlohmann::json to_json(const AcceptanceReport &report, bool with_timing = false);

/// "PASS [3] title (12.3 ms) detail"
std::string format_line(const CriterionResult &result);

} // namespace slopes
