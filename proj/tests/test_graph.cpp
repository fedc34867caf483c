#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "slopes/canonical.hpp"
#include "slopes/enumerate.hpp"
#include "slopes/graph.hpp"
#include "slopes/graph_io.hpp"
#include "slopes/intersection.hpp"

using namespace slopes;

namespace {

std::vector<int> face_sizes(const EmbeddedGraph &g)
{
    auto sizes = face_orbits(g.rotation()).length;
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

// Independent face count: walk d -> next(opposite(d)) on a plain array copy.
int brute_faces(const Rotation &r)
{
    std::vector<int> next = r.next;
    std::vector<char> seen(next.size(), 0);
    int faces = 0;
    for (std::size_t d = 0; d < next.size(); ++d) {
        if (seen[d])
            continue;
        ++faces;
        for (int x = static_cast<int>(d); !seen[x]; x = next[x ^ 1])
            seen[x] = 1;
    }
    return faces;
}

std::vector<std::vector<int>> random_rotation(std::mt19937 &rng, int vertices, int edges)
{
    std::vector<std::vector<int>> at(vertices);
    for (int e = 0; e < edges; ++e) {
        int a = e < vertices - 1 ? e + 1 : std::uniform_int_distribution<int>(0, vertices - 1)(rng);
        int b = e < vertices - 1 ? std::uniform_int_distribution<int>(0, e)(rng)
                                 : std::uniform_int_distribution<int>(0, vertices - 1)(rng);
        at[a].push_back(e);
        at[b].push_back(e);
    }
    for (auto &l : at)
        std::shuffle(l.begin(), l.end(), rng);
    return at;
}

// Applies vertex relabeling, a cyclic shift at every vertex and optionally a
// global reflection to a rotation list.
std::vector<std::vector<int>> transform(const std::vector<std::vector<int>> &at, std::mt19937 &rng, bool reflect)
{
    std::vector<int> perm(at.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> out(at.size());
    for (std::size_t v = 0; v < at.size(); ++v) {
        auto list = at[v];
        if (reflect)
            std::reverse(list.begin(), list.end());
        if (!list.empty())
            std::rotate(list.begin(),
                        list.begin() + std::uniform_int_distribution<int>(0, static_cast<int>(list.size()) - 1)(rng),
                        list.end());
        out[perm[v]] = list;
    }
    return out;
}

} // namespace

TEST_CASE("one vertex with three loops abcabc is a torus map with two triangles")
{
    const auto g = graph_from_rotation({{0, 1, 2, 0, 1, 2}});
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 3);
    CHECK(face_sizes(g) == std::vector<int>{3, 3});
    CHECK(euler_characteristic(g, SurfaceTarget::torus) == 0);
    const auto faces = trace_faces(g);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].sides() + faces[1].sides() == 6);
}

TEST_CASE("square torus map abab has one face of four sides")
{
    const auto g = graph_from_rotation({{0, 1, 0, 1}});
    CHECK(face_sizes(g) == std::vector<int>{4});
    CHECK(euler_characteristic(g) == 0);
    CHECK(euler_data(g).is_torus());
}

TEST_CASE("single loop aa derives a sphere and is rejected for the torus")
{
    const auto g = graph_from_rotation({{0, 0}});
    CHECK(euler_characteristic(g) == 2);
    CHECK(face_sizes(g) == std::vector<int>{1, 1});
    try {
        euler_characteristic(g, SurfaceTarget::torus);
        FAIL("expected NotCellular");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::not_cellular);
    }
}

TEST_CASE("labels must come in consecutive blocks")
{
    std::vector<FatVertex> vs = {{Sign::positive, 4, {1, 1, 2, 2}}};
    std::vector<Edge> es = {{{0, 0, 1}, {0, 1, 1}, Sign::positive, {}}, {{0, 2, 2}, {0, 3, 2}, Sign::positive, {}}};
    try {
        build_graph(vs, es, LabelFrame{2, 2});
        FAIL("expected LabelBlockViolation");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::label_block_violation);
    }
    CHECK(is_block_labeling({1, 2, 1, 2}, LabelFrame{2, 2}));
    CHECK(is_block_labeling({3, 2, 1, 3, 2, 1}, LabelFrame{3, 2}));
    CHECK_FALSE(is_block_labeling({1, 1, 2, 2}, LabelFrame{2, 2}));
}

TEST_CASE("slot collisions and unused slots are reported")
{
    std::vector<FatVertex> vs = {{std::nullopt, 2, {}}};
    try {
        build_graph(vs, {{{0, 0, 0}, {0, 0, 0}, Sign::positive, {}}});
        FAIL("expected SlotCollision");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::slot_collision);
    }
    std::vector<FatVertex> wide = {{std::nullopt, 4, {}}};
    try {
        build_graph(wide, {{{0, 0, 0}, {0, 1, 0}, Sign::positive, {}}});
        FAIL("expected UnusedSlot");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::unused_slot);
    }
}

TEST_CASE("edge signs must agree with vertex parities")
{
    std::vector<FatVertex> vs = {{Sign::positive, 1, {}}, {Sign::negative, 1, {}}};
    try {
        build_graph(vs, {{{0, 0, 0}, {1, 0, 0}, Sign::positive, {}}});
        FAIL("expected ParityContradiction");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::parity_contradiction);
    }
    CHECK_NOTHROW(build_graph(vs, {{{0, 0, 0}, {1, 0, 0}, Sign::negative, {}}}));
}

TEST_CASE("a 6-regular one vertex triangulation has Euler characteristic zero")
{
    for (const auto &eg : enumerate_reduced_graphs(1, DegreeSpec{6, 3})) {
        CHECK(euler_characteristic(eg.graph, SurfaceTarget::torus) == 0);
        CHECK(face_sizes(eg.graph) == std::vector<int>{3, 3});
    }
}

TEST_CASE("face sides sum to twice the edge count on random rotation systems")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int v = std::uniform_int_distribution<int>(1, 4)(rng);
        const int e = std::uniform_int_distribution<int>(std::max(1, v - 1), 10)(rng);
        const auto g = graph_from_rotation(random_rotation(rng, v, e));
        const auto orbits = face_orbits(g.rotation());
        CHECK(std::accumulate(orbits.length.begin(), orbits.length.end(), 0) == 2 * g.edge_count());
        CHECK(orbits.count() == brute_faces(g.rotation()));
        const auto data = euler_data(g);
        CHECK(data.chi() == v - e + brute_faces(g.rotation()));
        CHECK((2 - data.chi()) % 2 == 0);
        CHECK(data.genus() >= 0);
    }
}

TEST_CASE("every graph accepted for the torus has V - E + F = 0")
{
    for (int v = 1; v <= 2; ++v)
        for (const auto &eg : enumerate_reduced_graphs(v, DegreeSpec{std::nullopt, 8}))
            CHECK(euler_characteristic(eg.graph, SurfaceTarget::torus) == 0);
}

TEST_CASE("parallel loops in one bigon chain reduce to one family")
{
    // t loops nested as a b c ... c b a: consecutive loops cobound bigons.
    for (int t = 2; t <= 5; ++t) {
        std::vector<int> rot;
        for (int k = 0; k < t; ++k)
            rot.push_back(k);
        // a torus around the chain: two more loops x y crossing it.
        rot.push_back(t);
        rot.push_back(t + 1);
        for (int k = t - 1; k >= 0; --k)
            rot.push_back(k);
        rot.push_back(t);
        rot.push_back(t + 1);
        const auto g = graph_from_rotation({rot});
        const auto r = reduce_graph(g);
        CHECK(r.edge_count() == 3);
        int biggest = 0;
        for (int e = 0; e < r.edge_count(); ++e)
            biggest = std::max(biggest, r.size_of(e));
        CHECK(biggest == t);
        CHECK(r.families().size() == 3);
    }
}

TEST_CASE("an already reduced triangulation is left unchanged and reduction is idempotent")
{
    for (int v = 1; v <= 3; ++v)
        for (const auto &eg : enumerate_reduced_graphs(v, DegreeSpec{6, 3 * v})) {
            const auto r = reduce_graph(eg.graph);
            CHECK(r.edge_count() == eg.graph.edge_count());
            CHECK(canonical_form(r.rotation()) == canonical_form(eg.graph.rotation()));
            const auto rr = reduce_graph(r);
            CHECK(canonical_form(rr) == canonical_form(r));
        }
}

TEST_CASE("an expanded two vertex graph with families of size t reduces to six edges")
{
    const int t = 4;
    for (const auto &eg : enumerate_reduced_graphs(2, DegreeSpec{6, 6})) {
        int loops_at[2] = {0, 0};
        for (const auto &e : eg.graph.edges())
            if (e.is_loop())
                ++loops_at[e.a.vertex];
        if (loops_at[0] != 1 || loops_at[1] != 1)
            continue;
        PairBuilder builder(eg.graph, t, 6);
        const std::vector<Sign> s_par = {Sign::positive, Sign::negative};
        const auto pair = builder.build(Placement{{0, 1}, s_par, {0, 0}, 1, {Sign::positive, Sign::negative,
                                                                             Sign::positive, Sign::negative}});
        const auto expanded = s_graph(pair, s_par);
        CHECK(expanded.edge_count() == 6 * t);
        const auto reduced = reduce_graph(expanded);
        CHECK(reduced.edge_count() == 6);
        for (int e = 0; e < reduced.edge_count(); ++e)
            CHECK(reduced.size_of(e) == t);
        const auto again = reduce_graph(reduced);
        CHECK(canonical_form(again) == canonical_form(reduced));
    }
}

TEST_CASE("the three loop graph with families of size t reduces back to three loops")
{
    const auto classes = enumerate_reduced_graphs(1, DegreeSpec{6, 3});
    REQUIRE(classes.size() == 1);
    const int t = 3;
    PairBuilder builder(classes[0].graph, t, 6);
    const std::vector<Sign> s_par = {Sign::positive};
    const auto pair = builder.build(Placement{{0}, s_par, {0}, 1, {Sign::positive, Sign::positive, Sign::positive}});
    const auto expanded = s_graph(pair, s_par);
    CHECK(expanded.labeled());
    CHECK(expanded.degree(0) == 6 * t);
    const auto reduced = reduce_graph(expanded);
    CHECK(reduced.edge_count() == 3);
    CHECK(reduced.degree(0) == 6);
}

TEST_CASE("canonical form identifies rotations and reflections")
{
    CHECK(canonical_form(graph_from_rotation({{0, 1, 0, 1}})) == canonical_form(graph_from_rotation({{1, 0, 1, 0}})));
    CHECK(canonical_form(graph_from_rotation({{0, 1, 2, 0, 1, 2}})) ==
          canonical_form(graph_from_rotation({{2, 1, 0, 2, 1, 0}})));
    CHECK(canonical_form(graph_from_rotation({{0, 1, 0, 1}})) !=
          canonical_form(graph_from_rotation({{0, 1, 2, 0, 1, 2}})));
}

TEST_CASE("canonical form is invariant under relabeling, rotation and reflection")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int v = std::uniform_int_distribution<int>(1, 4)(rng);
        const int e = std::uniform_int_distribution<int>(std::max(1, v - 1), 12)(rng);
        const auto base = random_rotation(rng, v, e);
        const auto key = canonical_form(graph_from_rotation(base));
        const auto moved = transform(base, rng, trial % 2 == 1);
        CHECK(canonical_form(graph_from_rotation(moved)) == key);
    }
}

TEST_CASE("enumeration matches a brute force matching oracle for up to two vertices")
{
    for (int v = 1; v <= 2; ++v)
        for (int e : {3, 4, 6}) {
            const DegreeSpec spec{std::nullopt, e};
            std::vector<CanonicalKey> fast;
            for (const auto &eg : enumerate_reduced_graphs(v, spec))
                fast.push_back(eg.key);
            auto slow = brute_force_reduced_classes(v, spec);
            std::sort(fast.begin(), fast.end());
            std::sort(slow.begin(), slow.end());
            CHECK(fast == slow);
        }
    for (int v = 1; v <= 2; ++v) {
        const DegreeSpec spec{6, 3 * v};
        std::vector<CanonicalKey> fast;
        for (const auto &eg : enumerate_reduced_graphs(v, spec))
            fast.push_back(eg.key);
        auto slow = brute_force_reduced_classes(v, spec);
        std::sort(fast.begin(), fast.end());
        std::sort(slow.begin(), slow.end());
        CHECK(fast == slow);
    }
}

TEST_CASE("one vertex of degree 6 gives exactly the three loop class and degree 5 gives nothing")
{
    const auto six = enumerate_reduced_graphs(1, DegreeSpec{6, 3});
    REQUIRE(six.size() == 1);
    CHECK(canonical_form(six[0].graph.rotation()) ==
          canonical_form(graph_from_rotation({{0, 1, 2, 0, 1, 2}}).rotation()));;
    CHECK(enumerate_reduced_graphs(1, DegreeSpec{5, 12}).empty());
}

TEST_CASE("two vertices of degree 6 include a class with one loop per vertex")
{
    bool found = false;
    for (const auto &eg : enumerate_reduced_graphs(2, DegreeSpec{6, 6})) {
        int loops_at[2] = {0, 0};
        for (const auto &e : eg.graph.edges())
            if (e.is_loop())
                ++loops_at[e.a.vertex];
        found = found || (loops_at[0] == 1 && loops_at[1] == 1);
    }
    CHECK(found);
}

TEST_CASE("enumeration past the vertex cap throws ScaleLimit")
{
    CHECK_THROWS_AS(enumerate_reduced_graphs(5, DegreeSpec{6, 15}), ScaleLimit);
}

TEST_CASE("graph text round trips")
{
    const std::string text = "# three loops\n"
                             "v0 + : 0 0 0 0 0 0\n"
                             "e0 + (0,0,0)-(0,3,0)\n"
                             "e1 + (0,1,0)-(0,4,0)\n"
                             "e2 + (0,2,0)-(0,5,0)\n";
    const auto g = parse_graph_text(text);
    CHECK(g.edge_count() == 3);
    CHECK(euler_characteristic(g, SurfaceTarget::torus) == 0);
    const auto again = parse_graph_text(format_graph(g));
    CHECK(canonical_form(again) == canonical_form(g));
    CHECK(format_graph(again) == format_graph(g));
}

TEST_CASE("labeled graph text keeps its frame")
{
    const std::string text = "frame 2 2\n"
                             "v0 + : 1 2 1 2\n"
                             "e0 + (0,0,1)-(0,2,1)\n"
                             "e1 + (0,1,2)-(0,3,2)\n";
    const auto g = parse_graph_text(text);
    REQUIRE(g.frame());
    CHECK(g.frame()->n_opposite == 2);
    CHECK(g.label_of(g.dart_at(0, 1)) == 2);
    CHECK(format_graph(g) == text);
}

TEST_CASE("malformed graph text reports the line")
{
    try {
        parse_graph_text("v0 + : 0 0\nbogus\n");
        FAIL("expected Malformed");
    } catch (const GraphError &e) {
        CHECK(e.code() == GraphErrc::malformed);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph_text("v1 + : 0 0\n"), GraphError);
    CHECK_THROWS_AS(parse_graph_text("v0 * : 0 0\n"), GraphError);
}
