#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "slopes/constraints.hpp"
#include "slopes/enumerate.hpp"
#include "slopes/graph.hpp"

namespace slopes {

std::string_view engine_version();

enum class CertifyMode { automatic, enumeration, counting };

std::string_view to_string(CertifyMode mode);
CertifyMode mode_from_string(std::string_view text);

struct ScaleCaps {
    int s = 4;
    int t = 6;
};

struct CertifyOptions {
    CertifyMode mode = CertifyMode::automatic;
    int workers = 1;
    ScaleCaps caps;
    bool fix_first_offset = true;   // quotient by translation along the S circles
    bool allow_exceptional = false; // route oversized negative families onward instead of rejecting
    std::size_t layout_cap = 1 << 20;
    std::set<std::string> disabled; // constraint names skipped, for fault injection
};

struct LogEntry {
    std::string name;
    std::string anchor;
    std::int64_t applied = 0;
    std::int64_t eliminated = 0;

    friend bool operator==(const LogEntry &, const LogEntry &) = default;
};

struct CaseCertificate {
    CaseParams params;
    CertifyMode mode = CertifyMode::enumeration;
    std::string route;
    bool roles_exchanged = false;
    std::int64_t configurations = 0;
    std::int64_t survivors = 0;
    std::optional<int> delta_bound;
    std::vector<LogEntry> constraint_log;
    double elapsed_ms = 0;
    std::string engine;

    bool empty() const { return survivors == 0; }
};

nlohmann::json to_json(const CaseParams &params);
/// Timing is left out unless asked for, so equal runs give equal bytes.
nlohmann::json to_json(const CaseCertificate &cert, bool with_timing = false);

/// Result of replaying the size regularity argument for Delta >= 6, t >= 3.
struct SizeRegularity {
    bool applicable = false;
    ConstraintVerdict verdict;
    int forced_delta = 0;
    int forced_degree = 0;
    int forced_size = 0;
};

/// With t >= 3 and Delta >= 6: a negative family of size t + 1 would need a
/// vertex of reduced degree <= 4, and 6t <= 4t + 4 fails; so Delta = 6, the
/// reduced graph is 6-regular and every family has size t. Delta > 6 is a
/// contradiction. t < 3 or Delta < 6 is out of domain.
SizeRegularity size_regularity_precondition(int t, int delta);

/// Degree counting for s, t <= 2.
CaseCertificate derive_delta_bound(const CaseParams &params);

/// Exhaustive search over all placements of every 6-regular reduced torus
/// graph for the given case, or the counting bound when s, t <= 2.
/// Throws ScaleLimit past the caps.
CaseCertificate certify_case(const CaseParams &params, const CertifyOptions &options = {});

} // namespace slopes
