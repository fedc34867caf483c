#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "slopes/homology.hpp"

using namespace slopes;

namespace {

const HomologyClass mu0{Frame::T0, 1, 0};
const HomologyClass lambda0{Frame::T0, 0, 1};

// Direct search of b1 * m = (1 + eps) q, b2 = eps * b1, gcd(q, b1) = 1,
// q * b0 = -(b1 + b2) with b0 != 0.
std::map<long, std::set<std::pair<long, long>>> brute_klein(long max_m, long range)
{
    std::map<long, std::set<std::pair<long, long>>> out;
    for (long m = 0; m <= max_m; ++m)
        for (long eps : {1L, -1L})
            for (long q = 1; q <= range; ++q)
                for (long b1 = -range; b1 <= range; ++b1) {
                    if (b1 * m != (1 + eps) * q || std::gcd(q, std::labs(b1)) != 1)
                        continue;
                    const long b2 = eps * b1;
                    if ((b1 + b2) % q != 0)
                        continue;
                    const long b0 = -(b1 + b2) / q;
                    if (b0 != 0)
                        out[m].insert({q, std::labs(b0)});
                }
    return out;
}

} // namespace

TEST_CASE("gluing sends mu1 to -mu2 and lambda1 to m mu2 + lambda2")
{
    for (long m = 0; m <= 6; ++m) {
        const auto phi = make_gluing(m);
        CHECK(apply_gluing(phi, {Frame::T1, 1, 0}) == HomologyClass{Frame::T2, -1, 0});
        CHECK(apply_gluing(phi, {Frame::T1, 0, 1}) == HomologyClass{Frame::T2, m, 1});
    }
}

TEST_CASE("the Klein class q mu1 + (2q/m) lambda1 is fixed coefficientwise")
{
    for (long m : {1L, 2L, 4L}) {
        const auto sol = solve_klein_slopes(m);
        REQUIRE(sol);
        const long b = 2 * sol->q / m;
        const auto image = apply_gluing(make_gluing(m), {Frame::T1, sol->q, b});
        CHECK(image == HomologyClass{Frame::T2, sol->q, b});
    }
}

TEST_CASE("gluing has determinant -1 and reverses intersection signs")
{
    for (long m = -10; m <= 10; ++m) {
        const auto phi = make_gluing(m);
        const auto a = phi.action();
        CHECK(a[0][0] * a[1][1] - a[0][1] * a[1][0] == -1);
        CHECK(phi.determinant() == -1);
        for (long a1 = -10; a1 <= 10; a1 += 3)
            for (long b1 = -10; b1 <= 10; b1 += 2)
                for (long a2 = -10; a2 <= 10; ++a2)
                    for (long b2 = -10; b2 <= 10; ++b2) {
                        const HomologyClass c{Frame::T1, a1, b1}, d{Frame::T1, a2, b2};
                        CHECK(intersection(apply_gluing(phi, c), apply_gluing(phi, d)) == -intersection(c, d));
                    }
    }
}

TEST_CASE("negative coefficients are normalized")
{
    CHECK(make_gluing(-3).m == 3);
    CHECK(solve_klein_slopes(-2)->q == solve_klein_slopes(2)->q);
}

TEST_CASE("frames are checked")
{
    CHECK_THROWS_AS(apply_gluing(make_gluing(1), mu0), WrongFrame);
    CHECK_THROWS_AS(intersection(mu0, HomologyClass{Frame::T1, 0, 1}), WrongFrame);
    CHECK_THROWS_AS(slope_distance(mu0, HomologyClass{Frame::T0, 2, 4}), NonPrimitive);
}

TEST_CASE("boundary relations")
{
    for (long q = 1; q <= 4; ++q)
        for (long b1 = -5; b1 <= 5; ++b1)
            for (long b2 = -5; b2 <= 5; ++b2) {
                if ((b1 + b2) % q != 0)
                    continue;
                const long b0 = -(b1 + b2) / q;
                BoundaryClasses k{q, {Frame::T0, 1, b0}, {Frame::T1, q, b1}, {Frame::T2, q, b2}};
                CHECK(verify_relations(k));
                k.c1.mu = q + 1;
                CHECK_FALSE(verify_relations(k));
            }
    CHECK(verify_relations(BoundaryClasses{0, {Frame::T0, 0, 0}, {Frame::T1, 0, 0}, {Frame::T2, 0, 0}}));
    CHECK_FALSE(verify_relations(BoundaryClasses{1, {Frame::T1, 1, 0}, {Frame::T1, 1, 0}, {Frame::T2, 1, 0}}));
}

TEST_CASE("Klein slopes for m = 1, 2, 4")
{
    const auto one = solve_klein_slopes(1);
    REQUIRE(one);
    CHECK(one->q == 1);
    CHECK(one->alpha == HomologyClass{Frame::T0, 1, -4});
    CHECK(one->distance == 4);
    const auto two = solve_klein_slopes(2);
    REQUIRE(two);
    CHECK(two->q == 1);
    CHECK(two->distance == 2);
    const auto four = solve_klein_slopes(4);
    REQUIRE(four);
    CHECK(four->q == 2);
    CHECK(four->alpha == HomologyClass{Frame::T0, 1, -1});
    CHECK(four->distance == 1);
    CHECK_FALSE(solve_klein_slopes(3));
    CHECK_FALSE(solve_klein_slopes(0));
}

TEST_CASE("Klein slopes agree with a direct search over 0 <= m <= 100")
{
    const auto brute = brute_klein(100, 40);
    for (long m = 0; m <= 100; ++m) {
        const auto sol = solve_klein_slopes(m);
        const auto it = brute.find(m);
        CHECK(sol.has_value() == (it != brute.end()));
        if (!sol || it == brute.end())
            continue;
        CHECK(it->second.size() == 1);
        CHECK(it->second.count({sol->q, sol->distance}) == 1);
        CHECK(slope_distance(sol->alpha, mu0) == 4 / m);
        CHECK(slope_distance(sol->alpha, lambda0) == 1);
    }
    CHECK(brute.size() == 3);
}

TEST_CASE("slope distances")
{
    CHECK(slope_distance({Frame::T0, 1, -4}, mu0) == 4);
    CHECK(slope_distance(mu0, mu0) == 0);
    CHECK(slope_distance({Frame::T0, 1, -2}, mu0) == 2);
}

TEST_CASE("distance to the longitude")
{
    CHECK(longitude_distance_check(1, 2));
    CHECK_FALSE(longitude_distance_check(2, 1));
    CHECK(longitude_distance_check(1, 1));
    CHECK_FALSE(longitude_distance_check(1, 0));
}
