#include "slopes/constraints.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>
#include <fmt/ranges.h>

namespace slopes {

ConstraintVerdict check_parity_rule(const Edge &e, Sign sign_in_s, Sign sign_in_t)
{
    const Sign s = e.is_loop() ? Sign::positive : sign_in_s;
    if (s == -sign_in_t)
        return ConstraintVerdict::pass("parity");
    return ConstraintVerdict::fail("parity", fmt::format("edge ({},{})-({},{}) has sign {} in S and {} in T",
                                                         e.a.vertex, e.a.slot, e.b.vertex, e.b.slot,
                                                         sign_char(s), sign_char(sign_in_t)));
}

ConstraintVerdict check_parity_rule(const IntersectionPair &pair)
{
    for (int e = 0; e < pair.gs.edge_count(); ++e)
        if (pair.s_sign[e] != -pair.t_sign[e])
            return ConstraintVerdict::fail("parity", fmt::format("edge {} has sign {} in both graphs", e,
                                                                 sign_char(pair.s_sign[e])));
    return ConstraintVerdict::pass("parity");
}

ConstraintVerdict check_no_double_parallel(const std::vector<int> &s_class, const std::vector<int> &t_class)
{
    if (s_class.size() != t_class.size())
        throw std::invalid_argument("class vectors differ in length");
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    keyed.reserve(s_class.size());
    for (std::size_t e = 0; e < s_class.size(); ++e)
        keyed.push_back({{s_class[e], t_class[e]}, static_cast<int>(e)});
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t k = 1; k < keyed.size(); ++k)
        if (keyed[k].first == keyed[k - 1].first)
            return ConstraintVerdict::fail(
                "no-double-parallel",
                fmt::format("edges {} and {} are parallel in both graphs", keyed[k - 1].second, keyed[k].second));
    return ConstraintVerdict::pass("no-double-parallel");
}

PositiveSizeBound positive_size_bound(int t)
{
    if (t < 3)
        throw std::invalid_argument("positive size bound needs t >= 3");
    return PositiveSizeBound{t, t};
}

ConstraintVerdict PositiveSizeBound::check(const PositiveFamilyShape &shape) const
{
    const std::string name = "positive-size";
    if (shape.size > bound)
        return ConstraintVerdict::fail(name, fmt::format("positive family of size {} exceeds {}", shape.size, bound));
    if (shape.size < t)
        return ConstraintVerdict::pass(name);
    if (t % 2 != 0)
        return ConstraintVerdict::fail(name, fmt::format("positive family of size {} with t = {} odd", shape.size, t));
    if (!shape.orbits.empty()) {
        const bool two_cycles =
            static_cast<int>(shape.orbits.size()) == t / 2 &&
            std::all_of(shape.orbits.begin(), shape.orbits.end(), [](const EdgeOrbit &o) {
                return o.is_cycle && o.edges.size() == 2 && o.vertices.size() == 2;
            });
        if (!two_cycles)
            return ConstraintVerdict::fail(name, fmt::format("edge orbits are not {} disjoint 2-cycles", t / 2));
    }
    if (shape.min_positive_nonloop && *shape.min_positive_nonloop > 2)
        return ConstraintVerdict::fail(
            name, fmt::format("every partner vertex meets at least {} positive nonloop edges", *shape.min_positive_nonloop));
    return ConstraintVerdict::pass(name);
}

NegativeSizeBound negative_size_bound(int t, bool allow_exceptional)
{
    if (t < 1)
        throw std::invalid_argument("negative size bound needs t >= 1");
    return NegativeSizeBound{t, t + 1, allow_exceptional};
}

NegativeSizeOutcome NegativeSizeBound::classify(int size) const
{
    if (size <= bound)
        return NegativeSizeOutcome::admitted;
    return allow_exceptional ? NegativeSizeOutcome::exceptional : NegativeSizeOutcome::rejected;
}

ConstraintVerdict NegativeSizeBound::check(int size) const
{
    switch (classify(size)) {
    case NegativeSizeOutcome::admitted:
    case NegativeSizeOutcome::exceptional:
        return ConstraintVerdict::pass("negative-size");
    case NegativeSizeOutcome::rejected:
        break;
    }
    return ConstraintVerdict::fail("negative-size",
                                   fmt::format("negative family of size {} >= {} forces an exceptional manifold",
                                               size, t + 2));
}

ConstraintVerdict polarization_consequences(const ParallelFamily &family, int t, Polarity partner,
                                            bool disk_faces_even)
{
    const std::string name = "polarization";
    if (family.sign != Sign::negative || family.size < t + 1)
        throw std::invalid_argument("needs a negative family of size at least t + 1");
    if (partner != Polarity::polarized)
        return ConstraintVerdict::fail(name, "partner surface is not polarized");
    if (t > 1) {
        const auto sigma = induced_permutation(family, t);
        const int orbits = formula_orbit_count(sigma);
        if (orbits != 1)
            return ConstraintVerdict::fail(name, fmt::format("t = {} consecutive members have {} orbits (alpha = {})",
                                                             t, orbits, sigma.alpha));
    }
    if (!disk_faces_even)
        return ConstraintVerdict::fail(name, "some disk face is odd sided");
    return ConstraintVerdict::pass(name);
}

std::vector<SCycle> detect_s_cycles(const EmbeddedGraph &g, const std::vector<char> &is_disk)
{
    std::vector<SCycle> out;
    if (!g.labeled())
        return out;
    const int n = g.frame()->n_opposite;
    const auto faces = trace_faces(g);
    auto step = [n](int a, int b) { return ((b - a) % n + n) % n; };
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const Face &face = faces[f];
        if (face.sides() != 2 || (!is_disk.empty() && !is_disk[f]))
            continue;
        const int e1 = EmbeddedGraph::edge_of(face.darts[0]), e2 = EmbeddedGraph::edge_of(face.darts[1]);
        if (e1 == e2 || g.edges()[e1].sign != Sign::positive || g.edges()[e2].sign != Sign::positive)
            continue;
        // Each edge must run between labels j and j + 1 for one common j.
        std::optional<int> j;
        bool ok = true;
        for (int e : {e1, e2}) {
            const int a = g.edges()[e].a.label, b = g.edges()[e].b.label;
            // With n = 2 both orders qualify; the type is then {1, 2}.
            int low;
            if (step(a, b) == 1 && step(b, a) == 1)
                low = std::min(a, b);
            else if (step(a, b) == 1)
                low = a;
            else if (step(b, a) == 1)
                low = b;
            else {
                ok = false;
                break;
            }
            if (j && *j != low)
                ok = false;
            j = low;
        }
        if (ok && j)
            out.push_back(SCycle{f, *j});
    }
    return out;
}

ConstraintVerdict check_jn1(const std::vector<int> &order_at_u, const std::vector<int> &order_at_v, int delta)
{
    if (delta != 6)
        throw WrongDelta(fmt::format("jumping number one holds for delta = 6, not {}", delta));
    const std::string name = "jn1";
    const int n = static_cast<int>(order_at_u.size());
    if (n != delta || static_cast<int>(order_at_v.size()) != delta)
        return ConstraintVerdict::fail(name, fmt::format("expected {} shared points, found {} and {}", delta, n,
                                                         order_at_v.size()));
    const auto start = std::find(order_at_v.begin(), order_at_v.end(), order_at_u[0]);
    if (start == order_at_v.end())
        return ConstraintVerdict::fail(name, "the vertices share different points");
    const int k = static_cast<int>(start - order_at_v.begin());
    for (int dir : {1, -1}) {
        bool same = true;
        for (int i = 0; i < n && same; ++i)
            same = order_at_u[i] == order_at_v[((k + dir * i) % n + n) % n];
        if (same)
            return ConstraintVerdict::pass(name);
    }
    return ConstraintVerdict::fail(name, fmt::format("orders {} and {} differ", order_at_u, order_at_v));
}

ConstraintVerdict check_jn1(const IntersectionPair &pair)
{
    std::vector<std::vector<int>> at_u(static_cast<std::size_t>(pair.s) * pair.t);
    std::vector<std::vector<int>> at_v(at_u.size());
    std::vector<int> first_s(pair.s, -1), first_t(pair.t, -1);
    for (int d = 0; d < pair.gs.dart_count(); ++d) {
        if (first_s[pair.gs.vertex[d]] < 0)
            first_s[pair.gs.vertex[d]] = d;
        if (first_t[pair.gt.vertex[d]] < 0)
            first_t[pair.gt.vertex[d]] = d;
    }
    for (int i = 0; i < pair.s; ++i) {
        int d = first_s[i];
        do {
            at_u[static_cast<std::size_t>(i) * pair.t + pair.gt.vertex[d]].push_back(d);
            d = pair.gs.next[d];
        } while (d != first_s[i]);
    }
    for (int j = 0; j < pair.t; ++j) {
        int d = first_t[j];
        do {
            at_v[static_cast<std::size_t>(pair.gs.vertex[d]) * pair.t + j].push_back(d);
            d = pair.gt.next[d];
        } while (d != first_t[j]);
    }
    for (int i = 0; i < pair.s; ++i)
        for (int j = 0; j < pair.t; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * pair.t + j;
            auto verdict = check_jn1(at_u[k], at_v[k], pair.delta);
            if (!verdict)
                return ConstraintVerdict::fail("jn1", fmt::format("u{} / v{}: {}", i + 1, j + 1, *verdict.witness));
        }
    return ConstraintVerdict::pass("jn1");
}

ConstraintVerdict reduced_torus_check(const EmbeddedGraph &g)
{
    euler_characteristic(g, SurfaceTarget::torus);
    const std::string name = "reduced-torus";
    if (g.vertex_count() == 0)
        return ConstraintVerdict::pass(name);
    int min_deg = g.degree(0), max_deg = g.degree(0);
    for (int v = 1; v < g.vertex_count(); ++v) {
        min_deg = std::min(min_deg, g.degree(v));
        max_deg = std::max(max_deg, g.degree(v));
    }
    const auto faces = face_orbits(g.rotation());
    const bool all_triangles = std::all_of(faces.length.begin(), faces.length.end(), [](int n) { return n == 3; });
    const bool no_triangle = std::none_of(faces.length.begin(), faces.length.end(), [](int n) { return n == 3; });
    if (min_deg >= 6 && (max_deg != 6 || !all_triangles))
        return ConstraintVerdict::fail(name, fmt::format("min degree {} but max degree {} and face sizes {}", min_deg,
                                                         max_deg, faces.length));
    if (no_triangle && min_deg > 4)
        return ConstraintVerdict::fail(name, fmt::format("no triangle yet min degree {}", min_deg));
    return ConstraintVerdict::pass(name);
}

} // namespace slopes
