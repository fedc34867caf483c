#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "slopes/constraints.hpp"
#include "slopes/enumerate.hpp"
#include "slopes/intersection.hpp"
#include "slopes/perms.hpp"
#include "slopes/torus.hpp"

using namespace slopes;

namespace {

std::vector<TorusLayout> all_layouts(const Rotation &r, const std::vector<int> &non_disk = {})
{
    std::vector<TorusLayout> out;
    for_each_torus_layout(map_data(r), non_disk, 1 << 16, [&](const TorusLayout &l) {
        out.push_back(l);
        return true;
    });
    return out;
}

Placement random_placement(std::mt19937 &rng, int s, int t)
{
    Placement p;
    p.circle_of.resize(s);
    std::iota(p.circle_of.begin(), p.circle_of.end(), 0);
    std::shuffle(p.circle_of.begin(), p.circle_of.end(), rng);
    for (int i = 0; i < s; ++i) {
        p.s_parity.push_back(rng() % 2 ? Sign::positive : Sign::negative);
        p.offset.push_back(std::uniform_int_distribution<int>(0, 6 * t - 1)(rng));
    }
    p.twist = rng() % 2 ? 1 : -1;
    for (int j = 0; j < t; ++j)
        p.t_parity.push_back(rng() % 2 ? Sign::positive : Sign::negative);
    return p;
}

} // namespace

TEST_CASE("map data reads genus per component")
{
    const auto tri = map_data(graph_from_rotation({{0, 1, 2, 0, 1, 2}}).rotation());
    CHECK(tri.components() == 1);
    CHECK(tri.genus_sum() == 1);
    const auto sphere = map_data(graph_from_rotation({{0, 0}}).rotation());
    CHECK(sphere.genus_sum() == 0);
    const auto two = map_data(graph_from_rotation({{0, 1, 0, 1}, {2, 2}}).rotation());
    CHECK(two.components() == 2);
    CHECK(two.genus_sum() == 1);
}

TEST_CASE("a cellular torus map has one layout, all disks")
{
    const auto g = graph_from_rotation({{0, 1, 2, 0, 1, 2}});
    const auto layouts = all_layouts(g.rotation());
    REQUIRE(layouts.size() == 1);
    for (int w = 0; w < 2; ++w)
        CHECK(layouts[0].is_disk(w));
    CHECK(all_layouts(g.rotation(), {0}).empty());
}

TEST_CASE("a single loop sits on the torus in three ways")
{
    // Either both sides form an annulus, or one side is a disk and the other a punctured torus.
    const auto g = graph_from_rotation({{0, 0}});
    const auto layouts = all_layouts(g.rotation());
    CHECK(layouts.size() == 3);
    int essential = 0;
    for (const auto &l : layouts)
        essential += cycle_is_essential(g.rotation(), map_data(g.rotation()), l, {0});
    CHECK(essential == 1);
    CHECK(all_layouts(g.rotation(), {0, 1}).size() == 1);
}

TEST_CASE("components of total genus two have no torus layout")
{
    const auto g = graph_from_rotation({{0, 1, 0, 1}, {2, 3, 2, 3}});
    CHECK(all_layouts(g.rotation()).empty());
}

TEST_CASE("loops of a torus triangulation are essential")
{
    const auto g = graph_from_rotation({{0, 1, 2, 0, 1, 2}});
    const auto map = map_data(g.rotation());
    const auto layouts = all_layouts(g.rotation());
    REQUIRE(layouts.size() == 1);
    for (int e = 0; e < 3; ++e)
        CHECK(cycle_is_essential(g.rotation(), map, layouts[0], {e}));
}

TEST_CASE("parallel classes follow bigon regions")
{
    // Four loops nested in a chain plus two crossing loops.
    const auto g = graph_from_rotation({{0, 1, 2, 3, 4, 5, 3, 2, 1, 0, 4, 5}});
    const auto map = map_data(g.rotation());
    const auto layouts = all_layouts(g.rotation());
    REQUIRE_FALSE(layouts.empty());
    for (const auto &l : layouts) {
        const auto pc = parallel_classes(g.rotation(), map, l);
        CHECK(pc.class_of_edge.size() == 6);
        CHECK(std::accumulate(pc.size.begin(), pc.size.end(), 0) == 6);
        if (std::all_of(l.region_size.begin(), l.region_size.end(), [](int n) { return n == 1; }) &&
            std::all_of(l.region_genus.begin(), l.region_genus.end(), [](int g) { return g == 0; })) {
            CHECK(pc.class_of_edge[0] == pc.class_of_edge[3]);
            CHECK(*std::max_element(pc.size.begin(), pc.size.end()) == 4);
        }
    }
}

TEST_CASE("expanded pairs carry consistent labels and jumping number one")
{
    std::mt19937 rng(19);
    for (int s = 1; s <= 3; ++s)
        for (int t = 3; t <= 4; ++t) {
            const auto classes = enumerate_reduced_graphs(s, DegreeSpec{6, 3 * s});
            REQUIRE_FALSE(classes.empty());
            for (const auto &eg : classes) {
                PairBuilder builder(eg.graph, t, 6);
                for (int trial = 0; trial < 8; ++trial) {
                    const auto placement = random_placement(rng, s, t);
                    const auto pair = builder.build(placement);
                    CHECK(pair.gs.edge_count() == 3 * s * t);
                    for (int v = 0; v < s; ++v)
                        CHECK(std::count(pair.gs.vertex.begin(), pair.gs.vertex.end(), v) == 6 * t);
                    for (int j = 0; j < t; ++j)
                        CHECK(std::count(pair.gt.vertex.begin(), pair.gt.vertex.end(), j) == 6 * s);
                    for (int d = 0; d < pair.gs.dart_count(); ++d) {
                        CHECK(pair.s_label[d] == pair.gt.vertex[d] + 1);
                        CHECK(pair.t_label[d] == placement.circle_of[pair.gs.vertex[d]] + 1);
                    }
                    CHECK(check_jn1(pair));
                    CHECK_NOTHROW(s_graph(pair, placement.s_parity));
                    CHECK_NOTHROW(t_graph(pair, placement.t_parity));
                }
            }
        }
}

TEST_CASE("S labels depend only on the offset mod t")
{
    const auto classes = enumerate_reduced_graphs(2, DegreeSpec{6, 6});
    const int t = 4;
    PairBuilder builder(classes.front().graph, t, 6);
    const std::vector<Sign> par = {Sign::positive, Sign::negative};
    std::vector<int> a, b;
    for (int o0 = 0; o0 < t; ++o0)
        for (int o1 = 0; o1 < t; ++o1)
            for (int k = 1; k < 6; ++k) {
                builder.s_labels(par, {o0, o1}, a);
                builder.s_labels(par, {o0 + k * t, o1 + (6 - k) * t}, b);
                CHECK(a == b);
            }
}

TEST_CASE("each expanded family follows an affine rule whose sign is the family sign")
{
    std::mt19937 rng(23);
    for (int s = 1; s <= 2; ++s) {
        const int t = 4;
        for (const auto &eg : enumerate_reduced_graphs(s, DegreeSpec{6, 3 * s})) {
            PairBuilder builder(eg.graph, t, 6);
            for (int trial = 0; trial < 6; ++trial) {
                const auto placement = random_placement(rng, s, t);
                const auto pair = builder.build(placement);
                const auto reduced = reduce_graph(s_graph(pair, placement.s_parity));
                for (const auto &f : reduced.families()) {
                    CHECK(f.size == t);
                    const auto sigma = induced_permutation(f, t);
                    CHECK(sigma.epsilon == f.sign);
                }
            }
        }
    }
}
