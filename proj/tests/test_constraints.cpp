#include <doctest.h>

#include <algorithm>

#include "slopes/constraints.hpp"
#include "slopes/enumerate.hpp"
#include "slopes/graph_io.hpp"
#include "slopes/intersection.hpp"
#include "slopes/perms.hpp"

using namespace slopes;

namespace {

ParallelFamily negative_family(int size, int t, int alpha)
{
    ParallelFamily f;
    f.size = size;
    f.sign = Sign::negative;
    f.vertex_a = 0;
    f.vertex_b = 1;
    for (int k = 0; k < size; ++k) {
        const int x = to_label(1 - k, t);
        f.labels_a.push_back(x);
        f.labels_b.push_back(to_label(alpha + x, t));
    }
    return f;
}

// Two positive vertices joined by four parallel positive edges, labels 1,2 alternating.
const char *four_parallel = "frame 2 2\n"
                            "v0 + : 1 2 1 2\n"
                            "v1 + : 1 2 1 2\n"
                            "e0 + (0,0,1)-(1,3,2)\n"
                            "e1 + (0,1,2)-(1,2,1)\n"
                            "e2 + (0,2,1)-(1,1,2)\n"
                            "e3 + (0,3,2)-(1,0,1)\n";

} // namespace

TEST_CASE("parity rule on single edges")
{
    const Edge loop{{0, 0, 1}, {0, 1, 2}, Sign::positive, {}};
    CHECK_FALSE(check_parity_rule(loop, Sign::positive, Sign::positive));
    CHECK_FALSE(check_parity_rule(loop, Sign::negative, Sign::positive));
    CHECK(check_parity_rule(loop, Sign::negative, Sign::negative));
    const Edge arc{{0, 0, 1}, {1, 0, 2}, Sign::positive, {}};
    CHECK(check_parity_rule(arc, Sign::positive, Sign::negative));
    CHECK(check_parity_rule(arc, Sign::negative, Sign::positive));
    CHECK_FALSE(check_parity_rule(arc, Sign::negative, Sign::negative));
}

TEST_CASE("parity over a paired graph is all or nothing")
{
    const auto classes = enumerate_reduced_graphs(2, DegreeSpec{6, 6});
    const int t = 4;
    const std::vector<Sign> s_par = {Sign::positive, Sign::negative};
    const std::vector<Sign> t_par = {Sign::positive, Sign::negative, Sign::positive, Sign::negative};
    int accepted = 0, rejected = 0;
    for (const auto &eg : classes) {
        PairBuilder builder(eg.graph, t, 6);
        for (int r0 = 0; r0 < t; ++r0)
            for (int r1 = 0; r1 < 6 * t; ++r1)
                for (int twist : {1, -1}) {
                    const auto pair = builder.build(Placement{{0, 1}, s_par, {r0, r1}, twist, t_par});
                    const auto whole = check_parity_rule(pair);
                    int bad = 0;
                    for (int e = 0; e < pair.gs.edge_count(); ++e) {
                        const int ja = pair.s_label[2 * e] - 1, jb = pair.s_label[2 * e + 1] - 1;
                        const Sign in_t = t_par[ja] * t_par[jb];
                        bad += pair.s_sign[e] == in_t;
                    }
                    CHECK(whole.satisfied == (bad == 0));
                    (whole ? accepted : rejected) += 1;
                }
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
}

TEST_CASE("no edge pair may be parallel in both graphs")
{
    CHECK(check_no_double_parallel({0}, {0}));
    CHECK(check_no_double_parallel({0, 0}, {0, 1}));
    CHECK_FALSE(check_no_double_parallel({0, 0, 1}, {2, 2, 3}));
    // A positive family of size t + 1 with t = 4: members 0..3 form the 2-cycles
    // (0 3)(1 2) of 1 - x; the extra member repeats label pair of member 0 and so is
    // parallel to it in T as well.
    const std::vector<int> s_class = {0, 0, 0, 0, 0};
    const std::vector<int> t_class = {10, 11, 11, 10, 10};
    const auto v = check_no_double_parallel(s_class, t_class);
    CHECK_FALSE(v);
    CHECK(v.witness.has_value());
    CHECK_THROWS_AS(check_no_double_parallel({0}, {0, 1}), std::invalid_argument);
}

TEST_CASE("positive size bound")
{
    CHECK_THROWS_AS(positive_size_bound(2), std::invalid_argument);
    const auto four = positive_size_bound(4);
    CHECK(four.bound == 4);

    // t = 4, size 4 with alternating partner parities: 1 - x gives two 2-cycles.
    std::vector<std::vector<int>> at(4);
    const std::vector<int> la = {1, 2, 3, 4}, lb = {4, 3, 2, 1};
    for (int k = 0; k < 4; ++k) {
        at[la[k] - 1].push_back(k);
        at[lb[k] - 1].push_back(k);
    }
    const auto orbits = edge_orbit_subgraph(std::vector<int>{0, 1, 2, 3}, graph_from_rotation(at));
    CHECK(orbits.size() == 2);
    CHECK(four.check(PositiveFamilyShape{4, orbits, 2}));
    CHECK_FALSE(four.check(PositiveFamilyShape{4, orbits, 3}));
    CHECK_FALSE(four.check(PositiveFamilyShape{5, {}, std::nullopt}));
    CHECK_FALSE(positive_size_bound(5).check(PositiveFamilyShape{5, {}, std::nullopt}));
    CHECK(positive_size_bound(5).check(PositiveFamilyShape{4, {}, std::nullopt}));
}

TEST_CASE("negative size bound")
{
    CHECK(negative_size_bound(2).classify(3) == NegativeSizeOutcome::admitted);
    CHECK(negative_size_bound(2, true).classify(4) == NegativeSizeOutcome::exceptional);
    CHECK(negative_size_bound(2).classify(4) == NegativeSizeOutcome::rejected);
    CHECK(negative_size_bound(1).check(2));
    CHECK_FALSE(negative_size_bound(1).check(3));
    CHECK(negative_size_bound(1, true).check(3));
}

TEST_CASE("size bounds are monotone in t")
{
    for (int t = 1; t < 30; ++t)
        CHECK(negative_size_bound(t).bound <= negative_size_bound(t + 1).bound);
    for (int t = 3; t < 30; ++t)
        CHECK(positive_size_bound(t).bound <= positive_size_bound(t + 1).bound);
    for (int t = 1; t < 12; ++t)
        for (int size = 1; size < 20; ++size) {
            if (negative_size_bound(t).check(size))
                CHECK(negative_size_bound(t + 1).check(size));
        }
}

TEST_CASE("polarization consequences of a long negative family")
{
    CHECK_FALSE(polarization_consequences(negative_family(7, 6, 4), 6, Polarity::polarized, true));
    CHECK(polarization_consequences(negative_family(7, 6, 1), 6, Polarity::polarized, true));
    CHECK_FALSE(polarization_consequences(negative_family(7, 6, 1), 6, Polarity::neutral, true));
    CHECK_FALSE(polarization_consequences(negative_family(7, 6, 1), 6, Polarity::polarized, false));
    CHECK(polarization_consequences(negative_family(2, 1, 0), 1, Polarity::polarized, true));
    CHECK_THROWS_AS(polarization_consequences(negative_family(6, 6, 1), 6, Polarity::polarized, true),
                    std::invalid_argument);
}

TEST_CASE("S-cycles between consecutive positive edges")
{
    const auto g = parse_graph_text(four_parallel);
    const auto all = detect_s_cycles(g);
    CHECK(all.size() == 4);
    for (const auto &c : all)
        CHECK(c.j == 1);

    // On a torus the bigon closing the chain is not a disk: three S-cycle faces remain.
    const auto faces = face_orbits(g.rotation());
    std::vector<char> is_disk(faces.count(), 1);
    for (int d = 0; d < g.dart_count(); ++d) {
        const int e = EmbeddedGraph::edge_of(d);
        const int other = EmbeddedGraph::edge_of(g.rotation().face_step(d));
        if ((e == 0 && other == 3) || (e == 3 && other == 0))
            is_disk[faces.face_of[d]] = 0;
    }
    CHECK(detect_s_cycles(g, is_disk).size() == 3);
}

TEST_CASE("edges between labels two apart bound no S-cycle")
{
    const auto g = parse_graph_text("frame 4 1\n"
                                    "v0 + : 1 2 3 4\n"
                                    "v1 + : 2 1 4 3\n"
                                    "e0 + (0,0,1)-(1,3,3)\n"
                                    "e1 + (0,1,2)-(1,2,4)\n"
                                    "e2 + (0,2,3)-(1,1,1)\n"
                                    "e3 + (0,3,4)-(1,0,2)\n");
    CHECK(detect_s_cycles(g).empty());
}

TEST_CASE("negative bigons are never S-cycles")
{
    const auto g = parse_graph_text("frame 2 2\n"
                                    "v0 + : 1 2 1 2\n"
                                    "v1 - : 1 2 1 2\n"
                                    "e0 - (0,0,1)-(1,3,2)\n"
                                    "e1 - (0,1,2)-(1,2,1)\n"
                                    "e2 - (0,2,1)-(1,1,2)\n"
                                    "e3 - (0,3,2)-(1,0,1)\n");
    CHECK(detect_s_cycles(g).empty());
}

TEST_CASE("S-cycles only ever pair consecutive positive edges")
{
    const auto g = parse_graph_text(four_parallel);
    const auto faces = trace_faces(g);
    for (const auto &c : detect_s_cycles(g)) {
        const auto &f = faces[c.face];
        REQUIRE(f.sides() == 2);
        for (int d : f.darts)
            CHECK(g.edges()[EmbeddedGraph::edge_of(d)].sign == Sign::positive);
        const int e1 = EmbeddedGraph::edge_of(f.darts[0]), e2 = EmbeddedGraph::edge_of(f.darts[1]);
        CHECK((std::abs(e1 - e2) == 1 || std::abs(e1 - e2) == 3));
    }
}

TEST_CASE("jumping number one")
{
    const std::vector<int> order = {1, 2, 3, 4, 5, 6};
    CHECK(check_jn1(order, order, 6));
    CHECK(check_jn1(order, {4, 5, 6, 1, 2, 3}, 6));
    CHECK(check_jn1(order, {6, 5, 4, 3, 2, 1}, 6));
    CHECK(check_jn1(order, {3, 2, 1, 6, 5, 4}, 6));
    CHECK_FALSE(check_jn1(order, {1, 3, 2, 4, 5, 6}, 6));
    CHECK_THROWS_AS(check_jn1({1, 2, 3, 4}, {1, 2, 3, 4}, 4), WrongDelta);
}

TEST_CASE("reduced torus degree and face check")
{
    CHECK(reduced_torus_check(graph_from_rotation({{0, 1, 2, 0, 1, 2}})));
    CHECK(reduced_torus_check(graph_from_rotation({{0, 1, 0, 1}})));
    CHECK_THROWS_AS(reduced_torus_check(graph_from_rotation({{0, 0}})), GraphError);
}

TEST_CASE("no reduced torus graph on up to three vertices has min degree 6 and a vertex of degree 7")
{
    for (int v = 1; v <= 3; ++v)
        for (const auto &eg : enumerate_reduced_graphs(v, DegreeSpec{std::nullopt, 12})) {
            int min_deg = 100, max_deg = 0;
            for (int u = 0; u < eg.graph.vertex_count(); ++u) {
                min_deg = std::min(min_deg, eg.graph.degree(u));
                max_deg = std::max(max_deg, eg.graph.degree(u));
            }
            if (min_deg >= 6)
                CHECK(max_deg == 6);
            CHECK(reduced_torus_check(eg.graph));
        }
}
