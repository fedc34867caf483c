#include "slopes/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/core.h>

#include "slopes/intersection.hpp"
#include "slopes/perms.hpp"
#include "slopes/torus.hpp"

#ifndef SLOPES_VERSION
#define SLOPES_VERSION "0.0.0"
#endif

namespace slopes {

std::string_view engine_version() { return "slopes " SLOPES_VERSION; }

std::string_view to_string(CertifyMode mode)
{
    switch (mode) {
    case CertifyMode::automatic:
        return "auto";
    case CertifyMode::enumeration:
        return "enumeration";
    case CertifyMode::counting:
        return "counting";
    }
    return "?";
}

CertifyMode mode_from_string(std::string_view text)
{
    if (text == "auto")
        return CertifyMode::automatic;
    if (text == "enumerate" || text == "enumeration")
        return CertifyMode::enumeration;
    if (text == "count" || text == "counting")
        return CertifyMode::counting;
    throw std::invalid_argument(fmt::format("unknown mode '{}'", text));
}

nlohmann::json to_json(const CaseParams &p)
{
    return {{"s", p.s},
            {"t", p.t},
            {"delta", p.delta},
            {"s_polarity", std::string(to_string(p.s_polarity))},
            {"t_polarity", std::string(to_string(p.t_polarity))}};
}

nlohmann::json to_json(const CaseCertificate &cert, bool with_timing)
{
    nlohmann::json log = nlohmann::json::array();
    for (const auto &entry : cert.constraint_log)
        log.push_back({{"name", entry.name},
                       {"anchor", entry.anchor},
                       {"applied", entry.applied},
                       {"eliminated", entry.eliminated}});
    nlohmann::json out = {{"engine", cert.engine},
                          {"params", to_json(cert.params)},
                          {"mode", std::string(to_string(cert.mode))},
                          {"route", cert.route},
                          {"roles_exchanged", cert.roles_exchanged},
                          {"configurations", cert.configurations},
                          {"survivors", cert.survivors},
                          {"delta_bound", cert.delta_bound ? nlohmann::json(*cert.delta_bound) : nlohmann::json()},
                          {"constraint_log", log}};
    if (with_timing)
        out["elapsed_ms"] = cert.elapsed_ms;
    return out;
}

SizeRegularity size_regularity_precondition(int t, int delta)
{
    SizeRegularity out;
    const std::string name = "size-regularity";
    if (t < 3 || delta < 6) {
        out.verdict = ConstraintVerdict::pass(name);
        return out;
    }
    out.applicable = true;
    // A negative family of size t + 1 makes every disk face even sided, so some
    // reduced vertex has degree p + n <= 4 and 6t <= pt + n(t + 1) <= 4t + 4.
    if (6 * t <= 4 * t + 4) {
        out.verdict = ConstraintVerdict::fail(name, fmt::format("6t = {} <= 4t + 4 = {}", 6 * t, 4 * t + 4));
        return out;
    }
    // All sizes are then at most t, so delta * t <= deg * t with reduced degree
    // at least delta >= 6; a 6-regular torus graph caps the degree at 6.
    if (delta > 6) {
        out.verdict = ConstraintVerdict::fail(
            name, fmt::format("reduced degree would be at least {} but a reduced torus graph of minimum degree 6 "
                              "is 6-regular",
                              delta));
        return out;
    }
    out.verdict = ConstraintVerdict::pass(name);
    out.forced_delta = 6;
    out.forced_degree = 6;
    out.forced_size = t;
    return out;
}

namespace {

    using Clock = std::chrono::steady_clock;

    double millis_since(Clock::time_point start)
    {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }

    // ---- counting mode ----

    CaseCertificate counting_certificate(const CaseParams &params)
    {
        CaseCertificate cert;
        cert.params = params;
        cert.mode = CertifyMode::counting;
        cert.engine = std::string(engine_version());
        cert.configurations = 1;

        const bool s_pol = params.s_polarity == Polarity::polarized;
        const bool t_pol = params.t_polarity == Polarity::polarized;
        auto entry = [&](std::string name, std::string anchor, bool eliminated) {
            cert.constraint_log.push_back(LogEntry{std::move(name), std::move(anchor), 1, eliminated ? 1 : 0});
        };

        // A polarized side makes all its edges positive, hence all partner
        // edges negative, which a polarized partner cannot carry.
        if (s_pol && t_pol) {
            cert.route = "counting-contradiction";
            entry("parity", "an arc is positive in one graph iff negative in the other", true);
            cert.survivors = 0;
            return cert;
        }

        int bound = 0;
        if (s_pol != t_pol) {
            const int x = s_pol ? params.s : params.t;   // polarized side
            const int y = s_pol ? params.t : params.s;   // neutral side, all edges negative
            cert.route = "counting-polarized";
            entry("parity", "a polarized surface leaves only negative edges in the partner graph", false);
            // Negative reduced edges join opposite parities, so there are no
            // loops and no triangles: E <= 2V on the torus and each of the two
            // partner vertices meets every edge.
            const int max_degree = 2 * y;
            entry("reduced-degree", "a triangle free reduced torus graph has E <= 2V", false);
            const auto neg = negative_size_bound(x);
            entry("negative-size", "negative families have at most n + 1 edges", false);
            bound = max_degree * neg.bound / x;
        } else {
            cert.route = "counting-neutral";
            entry("parity", "both surfaces neutral", false);
            // At most two positive and four negative local edges per vertex,
            // positive size at most 4 and negative size at most 2.
            const int p = 2, n = 4, positive_size = 2 * params.t, negative_size = params.t;
            entry("no-double-parallel", "no two edges are parallel in both graphs", false);
            entry("negative-size", "negative families are at most the partner count without polarization", false);
            bound = (p * positive_size + n * negative_size) / params.s;
        }
        cert.delta_bound = bound;
        const bool fits = params.delta <= bound;
        entry("degree-count", fmt::format("n * Delta <= sum of local edges times sizes gives Delta <= {}", bound),
              !fits);
        cert.survivors = fits ? 1 : 0;
        return cert;
    }

    // ---- enumeration mode ----

    enum class Level { partial, config, layout };

    enum class StageId {
        parity,
        loop_sign,
        vertex_type,
        positive_s,
        jn1,
        embedding,
        essential,
        double_parallel,
        cycle_nontrivial,
        negative_t,
        polarization_t,
        positive_t,
        regular_t,
        klein_axiom,
    };

    struct StageInfo {
        const char *name;
        const char *anchor;
        Level level;
    };

    StageInfo info(StageId id)
    {
        switch (id) {
        case StageId::parity:
            return {"parity", "an arc is positive in one graph iff negative in the other (arcs between distinct T circles)",
                    Level::partial};
        case StageId::loop_sign:
            return {"loop-sign", "a loop on an orientable surface is positive, so it is negative in S", Level::partial};
        case StageId::vertex_type:
            return {"vertex-type",
                    "every reduced vertex has one common type (p, n); type (6, 0) leaves an all-negative "
                    "triangulation on the other side",
                    Level::partial};
        case StageId::positive_s:
            return {"positive-size", "a positive family of size t >= 3 forces t even", Level::partial};
        case StageId::jn1:
            return {"jn1", "the six points shared by two circles appear in the same cyclic order on both",
                    Level::config};
        case StageId::embedding:
            return {"embedding", "the rotation system of G_T fits in a torus (total genus at most 1)", Level::config};
        case StageId::essential:
            return {"essential", "every arc is essential, so no monogon bounds a disk", Level::layout};
        case StageId::double_parallel:
            return {"no-double-parallel", "no two edges are parallel in both graphs (axiom)", Level::layout};
        case StageId::cycle_nontrivial:
            return {"cycle-nontrivial",
                    "the edge orbits of a family of t consecutive edges are nontrivial cycles in T (axiom)",
                    Level::layout};
        case StageId::negative_t:
            return {"negative-size",
                    "a negative family has at most s + 1 edges unless the manifold is exceptional (axiom)",
                    Level::layout};
        case StageId::polarization_t:
            return {"polarization",
                    "a negative family of size s + 1 forces a polarized S, one orbit and even sided disk faces",
                    Level::layout};
        case StageId::positive_t:
            return {"positive-size-t", "a positive family of G_T has at most s edges, s even at equality",
                    Level::layout};
        case StageId::regular_t:
            return {"size-regularity-t", "with s >= 3 the reduced G_T is 6-regular with every size s", Level::layout};
        case StageId::klein_axiom:
            return {"klein-bottle",
                    "a positive family of size 4 cobounding three S-cycle faces generates a once punctured Klein "
                    "bottle whose negative edges induce the identity (axiom)",
                    Level::layout};
        }
        throw std::logic_error("unknown stage");
    }

    struct Branch {
        std::string prefix;
        std::vector<StageId> stages;
    };

    struct Route {
        std::string name;
        std::vector<Branch> branches;
    };

    Route make_route(int s)
    {
        using enum StageId;
        if (s >= 3)
            return {"generic",
                    {{"",
                      {parity, loop_sign, vertex_type, positive_s, jn1, embedding, essential, double_parallel,
                       cycle_nontrivial, negative_t, polarization_t, positive_t, regular_t}}}};
        if (s == 2) {
            const std::vector<StageId> common{parity,          loop_sign,        positive_s, jn1,
                                              embedding,       essential,        double_parallel,
                                              cycle_nontrivial, negative_t,      polarization_t};
            auto generic = common;
            generic.push_back(klein_axiom);
            return {"two-vertex", {{"sigma-loop", common}, {"sigma-identity", common}, {"sigma-generic", generic}}};
        }
        return {"one-vertex",
                {{"",
                  {parity, jn1, embedding, essential, negative_t, loop_sign, positive_s, double_parallel,
                   cycle_nontrivial, polarization_t}}}};
    }

    std::string log_name(const Branch &branch, StageId id)
    {
        return branch.prefix.empty() ? info(id).name : branch.prefix + ":" + info(id).name;
    }

    struct ClassData {
        EmbeddedGraph reduced;
        PairBuilder builder;
        std::vector<int> end_a, end_b; // reduced edge endpoints
        int loop0 = -1, loop1 = -1, cross = -1;
    };

    struct Shared {
        int s, t;
        CertifyOptions options;
        Route route;
        std::vector<ClassData> classes;
        std::vector<std::vector<int>> circle_orders;
        int block_vertices = 0;   // vertices whose block offset varies
        std::int64_t full_per_partial = 0;
    };

    struct Task {
        int cls;
        int s_mask;
        std::vector<int> residue; // offset mod t per vertex
    };

    // Histogram of how far each configuration got: depth[b][k] counts those
    // that failed stage k of branch b, depth[b][n] the survivors.
    using Histogram = std::vector<std::vector<std::int64_t>>;

    Sign bit_sign(int mask, int i) { return (mask >> i & 1) ? Sign::negative : Sign::positive; }

    ParallelFamily family_of_expanded(const ClassData &cd, int reduced_edge, int t, const std::vector<int> &labels,
                                      const std::vector<Sign> &parity)
    {
        ParallelFamily f;
        f.size = t;
        f.vertex_a = cd.end_a[reduced_edge];
        f.vertex_b = cd.end_b[reduced_edge];
        f.sign = parity[f.vertex_a] * parity[f.vertex_b];
        for (int l = 0; l < t; ++l) {
            const int e = reduced_edge * t + l;
            f.labels_a.push_back(labels[2 * e]);
            f.labels_b.push_back(labels[2 * e + 1]);
        }
        return f;
    }

    // Branch of the two-vertex case: the family between the vertices induces
    // the same permutation as a loop family, the identity, or neither.
    int two_vertex_branch(const ClassData &cd, int t, const std::vector<int> &labels, const std::vector<Sign> &parity)
    {
        auto sigma = induced_permutation(family_of_expanded(cd, cd.cross, t, labels, parity), t);
        if (cd.end_a[cd.cross] != 0)
            sigma = sigma.inverse();
        const auto sigma1 = induced_permutation(family_of_expanded(cd, cd.loop0, t, labels, parity), t);
        const auto sigma2 = induced_permutation(family_of_expanded(cd, cd.loop1, t, labels, parity), t);
        if (same_action(sigma, sigma1) || same_action(sigma, sigma2))
            return 0;
        if (sigma.is_identity())
            return 1;
        return 2;
    }

    // Darts of one parallel class at its first end, in rotation order.
    std::vector<int> class_chain(const Rotation &rot, const MapData &map, const TorusLayout &layout,
                                 const std::vector<int> &members)
    {
        auto joined = [&](int x) {
            const int w = map.faces.face_of[x ^ 1];
            return map.faces.length[w] == 2 && layout.is_disk(w) && (rot.next[x] >> 1) != (x >> 1);
        };
        int start = -1;
        for (int e : members)
            for (int d : {2 * e, 2 * e + 1})
                if (!joined(rot.prev[d]) && (start < 0 || d < start))
                    start = d;
        if (start < 0)
            start = 2 * members.front();
        std::vector<int> chain{start};
        while (static_cast<int>(chain.size()) < static_cast<int>(members.size()) && joined(chain.back()))
            chain.push_back(rot.next[chain.back()]);
        return chain;
    }

    class Worker {
    public:
        explicit Worker(const Shared &shared) : sh_(shared) {}

        void run(const Task &task, Histogram &hist)
        {
            const ClassData &cd = sh_.classes[task.cls];
            const int s = sh_.s, t = sh_.t;
            std::vector<Sign> s_par(s);
            for (int i = 0; i < s; ++i)
                s_par[i] = bit_sign(task.s_mask, i);
            cd.builder.s_labels(s_par, task.residue, labels_);
            const auto &skel = cd.builder.skeleton();
            const int edges = skel.gs.edge_count();

            int branch = 0;
            if (sh_.route.branches.size() > 1)
                branch = two_vertex_branch(cd, t, labels_, s_par);
            const Branch &br = sh_.route.branches[branch];
            auto &h = hist[branch];

            // Facts that depend on the S side only.
            const bool s_polarized = std::all_of(s_par.begin(), s_par.end(), [&](Sign x) { return x == s_par[0]; });
            bool any_positive = false;
            std::vector<int> positive_ends(s, 0);
            for (std::size_t r = 0; r < cd.end_a.size(); ++r) {
                if (s_par[cd.end_a[r]] == s_par[cd.end_b[r]]) {
                    any_positive = true;
                    ++positive_ends[cd.end_a[r]];
                    ++positive_ends[cd.end_b[r]];
                }
            }
            const bool uniform_type =
                std::all_of(positive_ends.begin(), positive_ends.end(), [&](int p) { return p == positive_ends[0]; }) &&
                positive_ends[0] != 0 && positive_ends[0] != 6;
            const bool positive_ok = !any_positive || positive_size_bound(t).check({t, {}, std::nullopt}).satisfied;

            // Edge orbits of each S family in G_T: vertices are the labels, fixed here.
            std::vector<std::vector<std::vector<int>>> family_cycles;
            {
                Rotation labels_only;
                labels_only.vertex_count = t;
                labels_only.vertex.resize(2 * edges);
                for (int d = 0; d < 2 * edges; ++d)
                    labels_only.vertex[d] = labels_[d] - 1;
                for (std::size_t r = 0; r < cd.end_a.size(); ++r) {
                    std::vector<int> members(t);
                    std::iota(members.begin(), members.end(), static_cast<int>(r) * t);
                    std::vector<std::vector<int>> cycles;
                    for (const auto &orbit : edge_orbit_subgraph(members, labels_only))
                        if (orbit.is_cycle)
                            cycles.push_back(orbit.edges);
                    family_cycles.push_back(std::move(cycles));
                }
            }

            IntersectionPair pair = skel;
            for (int t_mask = 0; t_mask < (1 << t); ++t_mask) {
                std::vector<Sign> t_par(t);
                for (int j = 0; j < t; ++j)
                    t_par[j] = bit_sign(t_mask, j);
                bool parity_ok = true, loop_ok = true;
                for (int e = 0; e < edges && (parity_ok || loop_ok); ++e) {
                    const int ja = labels_[2 * e] - 1, jb = labels_[2 * e + 1] - 1;
                    const Sign ss = s_par[skel.gs.vertex[2 * e]] * s_par[skel.gs.vertex[2 * e + 1]];
                    if (ja == jb) {
                        if (ss != Sign::negative)
                            loop_ok = false;
                    } else if (t_par[ja] * t_par[jb] != -ss) {
                        parity_ok = false;
                    }
                }
                partial_.assign(16, 1);
                partial_[static_cast<int>(StageId::parity)] = parity_ok;
                partial_[static_cast<int>(StageId::loop_sign)] = loop_ok;
                partial_[static_cast<int>(StageId::vertex_type)] = uniform_type;
                partial_[static_cast<int>(StageId::positive_s)] = positive_ok;

                const int n = static_cast<int>(br.stages.size());
                int k = 0;
                for (; k < n && info(br.stages[k]).level == Level::partial; ++k)
                    if (!passes_partial(br.stages[k]))
                        break;
                if (k < n && info(br.stages[k]).level == Level::partial) {
                    h[k] += sh_.full_per_partial;
                    continue;
                }

                ctx_ = Context{&cd, &br, &s_par, &t_par, s_polarized, &family_cycles};
                std::vector<int> block(s, 0);
                for_each_block(block, 0, [&] {
                    std::vector<int> offset(s);
                    for (int i = 0; i < s; ++i)
                        offset[i] = task.residue[i] + block[i] * t;
                    for (const auto &order : sh_.circle_orders)
                        for (int twist : {1, -1}) {
                            Placement placement{order, s_par, offset, twist, t_par};
                            cd.builder.build_t_side(placement, pair);
                            ++h[evaluate(pair, k)];
                        }
                });
            }
        }

    private:
        struct Context {
            const ClassData *cd = nullptr;
            const Branch *branch = nullptr;
            const std::vector<Sign> *s_par = nullptr;
            const std::vector<Sign> *t_par = nullptr;
            bool s_polarized = false;
            const std::vector<std::vector<std::vector<int>>> *family_cycles = nullptr;
        };

        bool disabled(StageId id) const { return sh_.options.disabled.count(info(id).name) > 0; }

        bool passes_partial(StageId id) const { return disabled(id) || partial_[static_cast<int>(id)]; }

        template <class F> void for_each_block(std::vector<int> &block, int v, F &&body)
        {
            if (v == sh_.s) {
                body();
                return;
            }
            const bool varies = v > 0 || !sh_.options.fix_first_offset;
            for (int b = 0; b < (varies ? 6 : 1); ++b) {
                block[v] = b;
                for_each_block(block, v + 1, body);
            }
        }

        // Index of the first stage this configuration fails, or n.
        int evaluate(const IntersectionPair &pair, int from)
        {
            const auto &stages = ctx_.branch->stages;
            const int n = static_cast<int>(stages.size());
            std::optional<MapData> map;
            int k = from;
            for (; k < n; ++k) {
                const StageId id = stages[k];
                if (id == StageId::essential)
                    break;
                if (disabled(id))
                    continue;
                bool ok = true;
                switch (info(id).level) {
                case Level::partial:
                    ok = partial_[static_cast<int>(id)];
                    break;
                case Level::config:
                    if (id == StageId::jn1) {
                        ok = check_jn1(pair).satisfied;
                    } else {
                        if (!map)
                            map = map_data(pair.gt);
                        ok = map->genus_sum() <= 1;
                    }
                    break;
                case Level::layout:
                    throw std::logic_error("layout stage before the layout generator");
                }
                if (!ok)
                    return k;
            }
            if (k == n)
                return n;
            if (!map)
                map = map_data(pair.gt);

            std::vector<int> monogons;
            if (!disabled(StageId::essential))
                for (int w = 0; w < map->faces.count(); ++w)
                    if (map->faces.length[w] == 1)
                        monogons.push_back(w);
            int best = k;
            const int essential = k;
            for_each_torus_layout(*map, monogons, sh_.options.layout_cap, [&](const TorusLayout &layout) {
                int j = essential + 1;
                LayoutFacts facts(pair, *map, layout);
                while (j < n && passes_layout(stages[j], pair, facts))
                    ++j;
                best = std::max(best, j);
                return best < n;
            });
            return best;
        }

        struct LayoutFacts {
            const IntersectionPair &pair;
            const MapData &map;
            const TorusLayout &layout;
            ParallelClasses classes;
            std::vector<std::vector<int>> members;

            LayoutFacts(const IntersectionPair &p, const MapData &m, const TorusLayout &l)
                : pair(p), map(m), layout(l), classes(parallel_classes(p.gt, m, l)), members(classes.count())
            {
                for (int e = 0; e < p.gt.edge_count(); ++e)
                    members[classes.class_of_edge[e]].push_back(e);
            }
            Sign sign(int c) const { return pair.t_sign[members[c].front()]; }
        };

        bool passes_layout(StageId id, const IntersectionPair &pair, LayoutFacts &facts) const
        {
            if (disabled(id))
                return true;
            const int s = sh_.s;
            switch (id) {
            case StageId::parity:
            case StageId::loop_sign:
            case StageId::vertex_type:
            case StageId::positive_s:
                return partial_[static_cast<int>(id)];
            case StageId::jn1:
                return check_jn1(pair).satisfied;
            case StageId::embedding:
            case StageId::essential:
                return true;
            case StageId::double_parallel:
                return check_no_double_parallel(pair.s_family, facts.classes.class_of_edge).satisfied;
            case StageId::cycle_nontrivial:
                for (const auto &cycles : *ctx_.family_cycles)
                    for (const auto &cycle : cycles)
                        if (!cycle_is_essential(pair.gt, facts.map, facts.layout, cycle))
                            return false;
                return true;
            case StageId::negative_t: {
                const auto bound = negative_size_bound(s, sh_.options.allow_exceptional);
                for (int c = 0; c < facts.classes.count(); ++c)
                    if (facts.sign(c) == Sign::negative && !bound.check(facts.classes.size[c]))
                        return false;
                return true;
            }
            case StageId::polarization_t: {
                bool even = true;
                for (int w = 0; w < facts.map.faces.count(); ++w)
                    if (facts.layout.is_disk(w) && facts.map.faces.length[w] % 2 != 0)
                        even = false;
                for (int c = 0; c < facts.classes.count(); ++c) {
                    if (facts.sign(c) != Sign::negative || facts.classes.size[c] < s + 1)
                        continue;
                    const auto family = t_family(pair, facts, c);
                    if (!polarization_consequences(family, s,
                                                   ctx_.s_polarized ? Polarity::polarized : Polarity::neutral, even))
                        return false;
                }
                return true;
            }
            case StageId::positive_t: {
                if (s < 3)
                    return true;
                const auto bound = positive_size_bound(s);
                for (int c = 0; c < facts.classes.count(); ++c) {
                    if (facts.sign(c) != Sign::positive)
                        continue;
                    PositiveFamilyShape shape{facts.classes.size[c], {}, std::nullopt};
                    if (shape.size == s)
                        shape.orbits = edge_orbit_subgraph(facts.members[c], pair.gs);
                    if (!bound.check(shape))
                        return false;
                }
                return true;
            }
            case StageId::regular_t: {
                std::vector<int> degree(sh_.t, 0);
                for (int c = 0; c < facts.classes.count(); ++c) {
                    if (facts.classes.size[c] != s)
                        return false;
                    const int e = facts.members[c].front();
                    ++degree[pair.gt.vertex[2 * e]];
                    ++degree[pair.gt.vertex[2 * e + 1]];
                }
                return std::all_of(degree.begin(), degree.end(), [](int d) { return d == 6; });
            }
            case StageId::klein_axiom:
                for (int c = 0; c < facts.classes.count(); ++c)
                    if (facts.sign(c) == Sign::positive && facts.classes.size[c] == 4 &&
                        three_s_cycles(pair, facts, c))
                        return false;
                return true;
            }
            return true;
        }

        ParallelFamily t_family(const IntersectionPair &pair, const LayoutFacts &facts, int c) const
        {
            const auto chain = class_chain(pair.gt, facts.map, facts.layout, facts.members[c]);
            ParallelFamily f;
            f.size = static_cast<int>(chain.size());
            f.sign = facts.sign(c);
            f.vertex_a = pair.gt.vertex[chain.front()];
            f.vertex_b = pair.gt.vertex[chain.front() ^ 1];
            for (int d : chain) {
                f.labels_a.push_back(pair.t_label[d]);
                f.labels_b.push_back(pair.t_label[d ^ 1]);
            }
            return f;
        }

        bool three_s_cycles(const IntersectionPair &pair, const LayoutFacts &facts, int c) const
        {
            const auto family = t_family(pair, facts, c);
            if (family.size != 4)
                return false;
            const int n = sh_.s;
            auto low_end = [n](int a, int b) -> std::optional<int> {
                if (((b - a) % n + n) % n == 1)
                    return a;
                if (((a - b) % n + n) % n == 1)
                    return b;
                return std::nullopt;
            };
            for (int k = 0; k + 1 < 4; ++k) {
                const auto x = low_end(family.labels_a[k], family.labels_b[k]);
                const auto y = low_end(family.labels_a[k + 1], family.labels_b[k + 1]);
                if (!x || !y || *x != *y)
                    return false;
            }
            return true;
        }

        const Shared &sh_;
        std::vector<int> labels_;
        std::vector<char> partial_;
        Context ctx_;
    };

    CaseCertificate enumeration_certificate(const CaseParams &original, const CertifyOptions &options)
    {
        const auto start = Clock::now();
        CaseCertificate cert;
        cert.params = original;
        cert.mode = CertifyMode::enumeration;
        cert.engine = std::string(engine_version());

        int s = original.s, t = original.t;
        if (s >= 3 && t < 3) {
            std::swap(s, t);
            cert.roles_exchanged = true;
        }
        if (t < 3)
            throw std::invalid_argument("enumeration needs max(s, t) >= 3; use counting mode");
        if (s > options.caps.s || t > options.caps.t)
            throw ScaleLimit(fmt::format("(s, t) = ({}, {}) exceeds the caps ({}, {})", s, t, options.caps.s,
                                         options.caps.t));

        const auto regular = size_regularity_precondition(t, original.delta);
        if (!regular.applicable)
            throw std::invalid_argument("enumeration needs delta >= 6");
        if (!regular.verdict) {
            cert.route = "size-regularity";
            cert.configurations = 1;
            cert.constraint_log.push_back(
                LogEntry{"size-regularity", "delta >= 6 and t >= 3 force delta = 6, degree 6 and size t", 1, 1});
            cert.survivors = 0;
            cert.elapsed_ms = millis_since(start);
            return cert;
        }

        Shared sh{s, t, options, make_route(s), {}, {}, 0, 0};
        cert.route = sh.route.name;
        for (auto &eg : enumerate_reduced_graphs(s, DegreeSpec{6, 3 * s}, EnumerationLimits{options.caps.s})) {
            ClassData cd{eg.graph, PairBuilder(eg.graph, t, 6), {}, {}};
            for (const auto &edge : eg.graph.edges()) {
                cd.end_a.push_back(edge.a.vertex);
                cd.end_b.push_back(edge.b.vertex);
            }
            if (s == 2) {
                for (int r = 0; r < static_cast<int>(cd.end_a.size()); ++r) {
                    if (cd.end_a[r] == cd.end_b[r])
                        (cd.end_a[r] == 0 ? cd.loop0 : cd.loop1) = r;
                    else if (cd.cross < 0)
                        cd.cross = r;
                }
                if (cd.loop0 < 0 || cd.loop1 < 0 || cd.cross < 0)
                    throw std::logic_error("two-vertex reduced graph without a loop at each vertex");
            }
            sh.classes.push_back(std::move(cd));
        }
        std::vector<int> order(s);
        std::iota(order.begin(), order.end(), 0);
        do
            sh.circle_orders.push_back(order);
        while (std::next_permutation(order.begin(), order.end()));
        sh.block_vertices = options.fix_first_offset ? s - 1 : s;
        std::int64_t blocks = 1;
        for (int i = 0; i < sh.block_vertices; ++i)
            blocks *= 6;
        sh.full_per_partial = blocks * static_cast<std::int64_t>(sh.circle_orders.size()) * 2;

        std::vector<Task> tasks;
        for (int c = 0; c < static_cast<int>(sh.classes.size()); ++c)
            for (int mask = 0; mask < (1 << s); ++mask) {
                std::vector<int> residue(s, 0);
                const int free_from = options.fix_first_offset ? 1 : 0;
                std::function<void(int)> fill = [&](int v) {
                    if (v == s) {
                        tasks.push_back(Task{c, mask, residue});
                        return;
                    }
                    for (int o = 0; o < (v >= free_from ? t : 1); ++o) {
                        residue[v] = o;
                        fill(v + 1);
                    }
                };
                fill(0);
            }

        const std::size_t branch_count = sh.route.branches.size();
        auto fresh = [&] {
            Histogram h(branch_count);
            for (std::size_t b = 0; b < branch_count; ++b)
                h[b].assign(sh.route.branches[b].stages.size() + 1, 0);
            return h;
        };
        std::vector<Histogram> results(tasks.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        auto work = [&] {
            Worker worker(sh);
            try {
                for (std::size_t i = next++; i < tasks.size(); i = next++) {
                    results[i] = fresh();
                    worker.run(tasks[i], results[i]);
                }
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = tasks.size();
            }
        };
        const int workers = std::max(1, options.workers);
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);

        Histogram total = fresh();
        for (const auto &h : results)
            for (std::size_t b = 0; b < branch_count; ++b)
                for (std::size_t k = 0; k < h[b].size(); ++k)
                    total[b][k] += h[b][k];

        cert.constraint_log.push_back(LogEntry{"size-regularity",
                                               "delta >= 6 and t >= 3 force delta = 6, degree 6 and size t", 0, 0});
        for (std::size_t b = 0; b < branch_count; ++b) {
            const Branch &br = sh.route.branches[b];
            std::int64_t reached = std::accumulate(total[b].begin(), total[b].end(), std::int64_t{0});
            cert.configurations += reached;
            for (std::size_t k = 0; k < br.stages.size(); ++k) {
                cert.constraint_log.push_back(LogEntry{log_name(br, br.stages[k]), info(br.stages[k]).anchor,
                                                       reached, total[b][k]});
                reached -= total[b][k];
            }
            cert.survivors += total[b].back();
        }
        cert.constraint_log.front().applied = cert.configurations;
        cert.elapsed_ms = millis_since(start);
        return cert;
    }

} // namespace

CaseCertificate derive_delta_bound(const CaseParams &params)
{
    validate(params);
    if (params.s > 2 || params.t > 2)
        throw std::invalid_argument("counting covers s, t <= 2");
    const auto start = Clock::now();
    auto cert = counting_certificate(params);
    cert.elapsed_ms = millis_since(start);
    return cert;
}

CaseCertificate certify_case(const CaseParams &params, const CertifyOptions &options)
{
    validate(params);
    if (params.s > std::max(options.caps.s, options.caps.t) || params.t > std::max(options.caps.s, options.caps.t))
        throw ScaleLimit(fmt::format("(s, t) = ({}, {}) exceeds the caps ({}, {})", params.s, params.t,
                                     options.caps.s, options.caps.t));
    CertifyMode mode = options.mode;
    if (mode == CertifyMode::automatic)
        mode = params.s <= 2 && params.t <= 2 ? CertifyMode::counting : CertifyMode::enumeration;
    if (mode == CertifyMode::counting)
        return derive_delta_bound(params);
    return enumeration_certificate(params, options);
}

} // namespace slopes
