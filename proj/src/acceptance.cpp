#include "slopes/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "slopes/constraints.hpp"
#include "slopes/enumerate.hpp"
#include "slopes/homology.hpp"
#include "slopes/perms.hpp"

namespace slopes {

namespace {

    using Clock = std::chrono::steady_clock;

    double millis_since(Clock::time_point start)
    {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }

    CaseParams case_of(int s, int t, int delta, Polarity sp, Polarity tp) { return CaseParams{s, t, delta, sp, tp}; }

    Polarity default_polarity(int n) { return n % 2 == 1 ? Polarity::polarized : Polarity::neutral; }

    CaseParams enumeration_case(int s, int t)
    {
        return case_of(s, t, 6, default_polarity(s), default_polarity(t));
    }

    struct EnumerationTarget {
        int s;
        int t;
        double budget_ms;
    };

    const std::vector<EnumerationTarget> &enumeration_targets()
    {
        static const std::vector<EnumerationTarget> targets = {
            {3, 3, 300e3}, {4, 4, 300e3}, {2, 4, 120e3}, {2, 6, 120e3}, {1, 3, 10e3},
        };
        return targets;
    }

    struct CountingTarget {
        CaseParams params;
        int expected_bound;
    };

    const std::vector<CountingTarget> &counting_targets()
    {
        static const std::vector<CountingTarget> targets = {
            {case_of(2, 2, 6, Polarity::polarized, Polarity::neutral), 6},
            {case_of(2, 2, 6, Polarity::neutral, Polarity::neutral), 8},
            {case_of(1, 2, 6, Polarity::polarized, Polarity::neutral), 8},
        };
        return targets;
    }

    std::int64_t eliminated_by(const CaseCertificate &cert, const std::string &name)
    {
        std::int64_t total = 0;
        for (const auto &e : cert.constraint_log)
            if (e.name == name)
                total += e.eliminated;
        return total;
    }

    std::int64_t eliminated_in_branch(const CaseCertificate &cert, const std::string &branch)
    {
        std::int64_t total = 0;
        for (const auto &e : cert.constraint_log)
            if (e.name.rfind(branch + ":", 0) == 0)
                total += e.eliminated;
        return total;
    }

    CertifyOptions certify_options(int workers, const ScaleCaps &caps, const std::set<std::string> &disabled)
    {
        CertifyOptions opt;
        opt.mode = CertifyMode::enumeration;
        opt.workers = workers;
        opt.caps = caps;
        opt.disabled = disabled;
        return opt;
    }

    nlohmann::json klein_table(long lo, long hi)
    {
        nlohmann::json rows = nlohmann::json::array();
        for (long m = lo; m <= hi; ++m) {
            const auto sol = solve_klein_slopes(m);
            nlohmann::json row = {{"m", m}, {"solution", sol.has_value()}};
            if (sol) {
                row["q"] = sol->q;
                row["distance"] = sol->distance;
                row["alpha"] = {sol->alpha.mu, sol->alpha.lambda};
            }
            rows.push_back(row);
        }
        return rows;
    }

    template <class Body> CriterionResult timed(int id, std::string title, double budget_ms, Body body)
    {
        CriterionResult r;
        r.id = id;
        r.title = std::move(title);
        r.budget_ms = budget_ms;
        const auto start = Clock::now();
        try {
            body(r);
        } catch (const std::exception &e) {
            r.passed = false;
            r.detail = fmt::format("exception: {}", e.what());
        }
        r.elapsed_ms = millis_since(start);
        if (r.passed && budget_ms > 0 && r.elapsed_ms > budget_ms) {
            r.passed = false;
            r.detail += fmt::format("; over budget ({:.0f} ms > {:.0f} ms)", r.elapsed_ms, budget_ms);
        }
        return r;
    }

    // ---- criterion 1 ------------------------------------------------------

    void emptiness(CriterionResult &r, const std::vector<CaseCertificate> &certs,
                   const std::vector<double> &times)
    {
        std::vector<std::string> problems;
        std::vector<std::string> summary;
        const auto &targets = enumeration_targets();
        for (std::size_t i = 0; i < certs.size(); ++i) {
            const auto &c = certs[i];
            const auto tag = fmt::format("s{}t{}", c.params.s, c.params.t);
            summary.push_back(fmt::format("{}: {} configs, {} survivors, {:.0f} ms", tag, c.configurations,
                                          c.survivors, times[i]));
            if (c.survivors != 0)
                problems.push_back(fmt::format("{} has {} survivors", tag, c.survivors));
            if (times[i] > targets[i].budget_ms)
                problems.push_back(fmt::format("{} took {:.0f} ms", tag, times[i]));
            if (c.params.s == 2)
                for (const char *branch : {"sigma-loop", "sigma-identity", "sigma-generic"})
                    if (eliminated_in_branch(c, branch) == 0)
                        problems.push_back(fmt::format("{} logs no elimination in branch {}", tag, branch));
            if (c.params.s == 1 && eliminated_by(c, "negative-size") == 0)
                problems.push_back(fmt::format("{}: the negative size bound eliminates nothing", tag));
        }
        r.passed = problems.empty();
        r.detail = fmt::format("{}", fmt::join(problems.empty() ? summary : problems, "; "));
    }

    // ---- criterion 2 ------------------------------------------------------

    void counting(CriterionResult &r, const std::vector<CaseCertificate> &certs)
    {
        std::vector<std::string> problems, summary;
        const auto &targets = counting_targets();
        for (std::size_t i = 0; i < certs.size(); ++i) {
            const auto &p = targets[i].params;
            const auto tag = fmt::format("s{}t{} {}/{}", p.s, p.t, to_string(p.s_polarity), to_string(p.t_polarity));
            const auto got = certs[i].delta_bound;
            summary.push_back(fmt::format("{} -> {}", tag, got ? fmt::format("{}", *got) : "none"));
            if (!got || *got != targets[i].expected_bound)
                problems.push_back(fmt::format("{}: expected {}, got {}", tag, targets[i].expected_bound,
                                               got ? fmt::format("{}", *got) : "none"));
        }
        r.passed = problems.empty();
        r.detail = fmt::format("{}", fmt::join(problems.empty() ? summary : problems, "; "));
    }

    // ---- criterion 3 ------------------------------------------------------

    void klein(CriterionResult &r)
    {
        const std::map<long, std::pair<long, long>> expected = {{1, {1, 4}}, {2, {1, 2}}, {4, {2, 1}}};
        std::vector<std::string> problems;
        for (long m = 0; m <= 100; ++m) {
            const auto sol = solve_klein_slopes(m);
            const auto it = expected.find(m);
            if (it == expected.end()) {
                if (sol)
                    problems.push_back(fmt::format("m={} has an unexpected solution", m));
                continue;
            }
            if (!sol) {
                problems.push_back(fmt::format("m={} has no solution", m));
                continue;
            }
            if (sol->q != it->second.first || sol->distance != it->second.second)
                problems.push_back(fmt::format("m={}: (q, distance) = ({}, {})", m, sol->q, sol->distance));
            const HomologyClass mu0{Frame::T0, 1, 0};
            if (slope_distance(sol->alpha, mu0) != sol->distance)
                problems.push_back(fmt::format("m={}: distance to mu0 disagrees", m));
        }
        r.passed = problems.empty();
        r.detail = problems.empty() ? "solutions exactly at m = 1, 2, 4" : fmt::format("{}", fmt::join(problems, "; "));
    }

    // ---- criterion 4 ------------------------------------------------------

    int brute_orbits(int n, int alpha, int eps)
    {
        std::vector<char> seen(n, 0);
        int orbits = 0;
        for (int x = 0; x < n; ++x) {
            if (seen[x])
                continue;
            ++orbits;
            for (int y = x; !seen[y]; y = (((alpha - eps * y) % n) + n) % n)
                seen[y] = 1;
        }
        return orbits;
    }

    void orbit_oracle(CriterionResult &r)
    {
        int checked = 0;
        std::vector<std::string> problems;
        for (int n = 1; n <= 24; ++n)
            for (int alpha = 0; alpha < n; ++alpha)
                for (const Sign eps : {Sign::positive, Sign::negative}) {
                    const auto p = make_permutation(n, alpha, eps);
                    const int oracle = brute_orbits(n, alpha, to_int(eps));
                    const int formula = formula_orbit_count(p);
                    const int walked = cycle_orbits(p).count();
                    ++checked;
                    if (formula != oracle || walked != oracle)
                        problems.push_back(fmt::format("n={} alpha={} eps={}: formula {}, walk {}, oracle {}", n,
                                                       alpha, sign_char(eps), formula, walked, oracle));
                }
        r.passed = problems.empty();
        r.detail = problems.empty() ? fmt::format("{} permutations agree", checked)
                                    : fmt::format("{}", fmt::join(problems, "; "));
    }

    // ---- criterion 5 ------------------------------------------------------

    void reduced_torus(CriterionResult &r)
    {
        int graphs = 0, six_regular = 0, triangle_free = 0;
        std::vector<std::string> problems;
        for (int v = 1; v <= 3; ++v) {
            for (const auto &eg : enumerate_reduced_graphs(v, DegreeSpec{std::nullopt, 12}, EnumerationLimits{3})) {
                ++graphs;
                const auto &g = eg.graph;
                const auto faces = face_orbits(g.rotation());
                int min_deg = g.degree(0);
                for (int u = 1; u < g.vertex_count(); ++u)
                    min_deg = std::min(min_deg, g.degree(u));
                if (min_deg >= 6)
                    ++six_regular;
                if (std::none_of(faces.length.begin(), faces.length.end(), [](int n) { return n == 3; }))
                    ++triangle_free;
                const auto verdict = reduced_torus_check(g);
                if (!verdict)
                    problems.push_back(fmt::format("{}-vertex graph: {}", v, verdict.witness.value_or("")));
            }
        }
        if (six_regular == 0 || triangle_free == 0)
            problems.push_back("enumeration produced no instance of one of the two hypotheses");
        r.passed = problems.empty() && graphs > 0;
        r.detail = problems.empty()
                       ? fmt::format("{} graphs, {} with min degree >= 6, {} triangle free", graphs, six_regular,
                                     triangle_free)
                       : fmt::format("{}", fmt::join(problems, "; "));
    }

    // ---- criterion 6 ------------------------------------------------------

    std::vector<std::vector<int>> random_rotation(std::mt19937_64 &rng)
    {
        const int vertices = std::uniform_int_distribution<int>(1, 6)(rng);
        const int edges = std::uniform_int_distribution<int>(std::max(1, vertices - 1), 12)(rng);
        std::vector<std::vector<int>> at(vertices);
        for (int e = 0; e < edges; ++e) {
            int a, b;
            if (e < vertices - 1) {
                a = e + 1;
                b = std::uniform_int_distribution<int>(0, e)(rng);
            } else {
                a = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
                b = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
            }
            at[a].push_back(e);
            at[b].push_back(e);
        }
        for (auto &list : at)
            std::shuffle(list.begin(), list.end(), rng);
        return at;
    }

    /// Faces of a rotation list counted from scratch: darts are (vertex, position).
    int oracle_face_count(const std::vector<std::vector<int>> &at, int edges)
    {
        std::vector<std::pair<int, int>> ends(2 * edges, {-1, -1});
        std::vector<int> seen_first(edges, 0);
        std::vector<int> base(at.size() + 1, 0);
        for (std::size_t v = 0; v < at.size(); ++v)
            base[v + 1] = base[v] + static_cast<int>(at[v].size());
        for (std::size_t v = 0; v < at.size(); ++v)
            for (std::size_t k = 0; k < at[v].size(); ++k) {
                const int e = at[v][k];
                ends[2 * e + seen_first[e]++] = {static_cast<int>(v), static_cast<int>(k)};
            }
        std::vector<int> partner(base.back());
        for (int e = 0; e < edges; ++e) {
            const int x = base[ends[2 * e].first] + ends[2 * e].second;
            const int y = base[ends[2 * e + 1].first] + ends[2 * e + 1].second;
            partner[x] = y;
            partner[y] = x;
        }
        std::vector<int> vertex_of(base.back());
        for (std::size_t v = 0; v < at.size(); ++v)
            for (int d = base[v]; d < base[v + 1]; ++d)
                vertex_of[d] = static_cast<int>(v);
        auto succ = [&](int d) {
            const int v = vertex_of[d];
            const int deg = base[v + 1] - base[v];
            return base[v] + (d - base[v] + 1) % deg;
        };
        std::vector<char> seen(base.back(), 0);
        int faces = 0;
        for (int d = 0; d < base.back(); ++d) {
            if (seen[d])
                continue;
            ++faces;
            for (int x = d; !seen[x]; x = succ(partner[x]))
                seen[x] = 1;
        }
        return faces;
    }

    void euler_invariants(CriterionResult &r)
    {
        std::mt19937_64 rng(0x5eed);
        std::vector<std::string> problems;
        std::map<int, int> genera;
        for (int trial = 0; trial < 10000 && problems.size() < 5; ++trial) {
            const auto at = random_rotation(rng);
            int edges = 0;
            for (const auto &list : at)
                edges += static_cast<int>(list.size());
            edges /= 2;
            const auto g = graph_from_rotation(at);
            const auto faces = trace_faces(g);
            int sides = 0;
            for (const auto &f : faces)
                sides += f.sides();
            const auto data = euler_data(g);
            const int oracle_faces = oracle_face_count(at, edges);
            const int chi = g.vertex_count() - edges + oracle_faces;
            const bool genus_ok = (2 - chi) % 2 == 0 && 2 - chi >= 0 && data.genus() == (2 - chi) / 2;
            if (sides != 2 * edges || data.faces != oracle_faces || data.components != 1 || !genus_ok ||
                euler_characteristic(g) != chi)
                problems.push_back(fmt::format("trial {}: sides {}, 2E {}, faces {} vs {}, chi {}", trial, sides,
                                               2 * edges, data.faces, oracle_faces, chi));
            ++genera[data.genus()];
        }
        r.passed = problems.empty();
        std::vector<std::string> dist;
        for (const auto &[g, n] : genera)
            dist.push_back(fmt::format("g{}:{}", g, n));
        r.detail = problems.empty() ? fmt::format("10000 systems, genus spread {}", fmt::join(dist, " "))
                                    : fmt::format("{}", fmt::join(problems, "; "));
    }

    // ---- criterion 7 ------------------------------------------------------

    void gluing(CriterionResult &r)
    {
        std::vector<std::string> problems;
        std::int64_t checked = 0;
        for (long m = -10; m <= 10 && problems.size() < 5; ++m) {
            const auto phi = make_gluing(m);
            const auto a = phi.action();
            if (phi.determinant() != -1 || a[0][0] * a[1][1] - a[0][1] * a[1][0] != -1)
                problems.push_back(fmt::format("m={}: determinant is not -1", m));
            for (long a1 = -10; a1 <= 10; ++a1)
                for (long b1 = -10; b1 <= 10; ++b1)
                    for (long a2 = -10; a2 <= 10; ++a2)
                        for (long b2 = -10; b2 <= 10; ++b2) {
                            const HomologyClass c{Frame::T1, a1, b1}, d{Frame::T1, a2, b2};
                            ++checked;
                            if (intersection(apply_gluing(phi, c), apply_gluing(phi, d)) != -intersection(c, d))
                                problems.push_back(
                                    fmt::format("m={}: ({},{}).({},{}) keeps its sign", m, a1, b1, a2, b2));
                        }
        }
        r.passed = problems.empty();
        r.detail = problems.empty() ? fmt::format("{} class pairs flip sign", checked)
                                    : fmt::format("{}", fmt::join(problems, "; "));
    }

    nlohmann::json payload_from(const std::vector<CaseCertificate> &enumerated,
                                const std::vector<CaseCertificate> &counted)
    {
        nlohmann::json certs = nlohmann::json::array();
        for (const auto &c : enumerated)
            certs.push_back(to_json(c));
        nlohmann::json bounds = nlohmann::json::array();
        for (const auto &c : counted)
            bounds.push_back(to_json(c));
        return {{"engine", std::string(engine_version())},
                {"certificates", certs},
                {"counting", bounds},
                {"klein", klein_table(0, 100)}};
    }

    std::vector<CaseCertificate> counting_certificates()
    {
        std::vector<CaseCertificate> out;
        for (const auto &t : counting_targets())
            out.push_back(derive_delta_bound(t.params));
        return out;
    }

} // namespace

bool AcceptanceReport::passed() const
{
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult &r) { return r.passed; });
}

nlohmann::json acceptance_payload(int workers, const ScaleCaps &caps, const std::set<std::string> &disabled)
{
    std::vector<CaseCertificate> enumerated;
    const auto opt = certify_options(workers, caps, disabled);
    for (const auto &t : enumeration_targets())
        enumerated.push_back(certify_case(enumeration_case(t.s, t.t), opt));
    return payload_from(enumerated, counting_certificates());
}

AcceptanceReport run_acceptance(const AcceptanceOptions &options, const CriterionCallback &on_result)
{
    AcceptanceReport report;
    auto wanted = [&](int id) { return options.only.empty() || options.only.count(id) > 0; };
    auto record = [&](CriterionResult r) {
        if (on_result)
            on_result(r);
        report.criteria.push_back(std::move(r));
    };

    std::vector<CaseCertificate> enumerated;
    std::vector<CaseCertificate> counted;
    const auto opt = certify_options(options.workers, options.caps, options.disabled);

    if (wanted(1))
        record(timed(1, "emptiness certificates", 0, [&](CriterionResult &r) {
        std::vector<double> times;
        for (const auto &t : enumeration_targets()) {
            const auto start = Clock::now();
            enumerated.push_back(certify_case(enumeration_case(t.s, t.t), opt));
            times.push_back(millis_since(start));
        }
        emptiness(r, enumerated, times);
        for (const auto &c : enumerated)
            r.data.push_back(to_json(c));
    }));
    if (wanted(2))
        record(timed(2, "counting bounds", 1e3, [&](CriterionResult &r) {
        counted = counting_certificates();
        counting(r, counted);
    }));
    if (wanted(3))
        record(timed(3, "klein slope classification", 1e3, klein));
    if (wanted(4))
        record(timed(4, "orbit count oracle", 1e3, orbit_oracle));
    if (wanted(5))
        record(timed(5, "reduced torus degree and face check", 120e3, reduced_torus));
    if (wanted(6))
        record(timed(6, "euler and face invariants", 30e3, euler_invariants));
    if (wanted(7))
        record(timed(7, "gluing algebra", 1e3, gluing));
    if (wanted(8))
        record(timed(8, "determinism across worker counts", 0, [&](CriterionResult &r) {
        const std::string reference = enumerated.size() == enumeration_targets().size() && !counted.empty()
                                          ? payload_from(enumerated, counted).dump()
                                          : acceptance_payload(options.workers, options.caps, options.disabled).dump();
        std::vector<std::string> problems;
        for (const int w : options.determinism_workers) {
            if (w == options.workers)
                continue;
            if (acceptance_payload(w, options.caps, options.disabled).dump() != reference)
                problems.push_back(fmt::format("workers={} differs from workers={}", w, options.workers));
        }
        r.passed = problems.empty();
        r.detail = problems.empty() ? fmt::format("identical bytes for workers {}",
                                                  fmt::join(options.determinism_workers, ", "))
                                    : fmt::format("{}", fmt::join(problems, "; "));
    }));
    return report;
}

nlohmann::json to_json(const AcceptanceReport &report, bool with_timing)
{
    nlohmann::json items = nlohmann::json::array();
    for (const auto &c : report.criteria) {
        nlohmann::json item = {{"id", c.id}, {"title", c.title}, {"passed", c.passed}};
        if (with_timing) {
            item["elapsed_ms"] = c.elapsed_ms;
            item["detail"] = c.detail;
        }
        if (!c.data.is_null())
            item["data"] = c.data;
        items.push_back(item);
    }
    return {{"engine", std::string(engine_version())}, {"passed", report.passed()}, {"criteria", items}};
}

std::string format_line(const CriterionResult &r)
{
    return fmt::format("{} [{}] {} ({:.1f} ms) {}", r.passed ? "PASS" : "FAIL", r.id, r.title, r.elapsed_ms,
                       r.detail);
}

} // namespace slopes
