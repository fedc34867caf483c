#include "slopes/homology.hpp"

#include <cstdlib>
#include <numeric>

#include <fmt/core.h>

namespace slopes {

namespace {
    const char *frame_name(Frame f)
    {
        switch (f) {
        case Frame::T0:
            return "T0";
        case Frame::T1:
            return "T1";
        case Frame::T2:
            return "T2";
        }
        return "?";
    }
} // namespace

bool HomologyClass::primitive() const { return std::gcd(std::labs(mu), std::labs(lambda)) == 1; }

long intersection(const HomologyClass &a, const HomologyClass &b)
{
    if (a.frame != b.frame)
        throw WrongFrame(fmt::format("classes on {} and {}", frame_name(a.frame), frame_name(b.frame)));
    return a.mu * b.lambda - a.lambda * b.mu;
}

GluingMatrix make_gluing(long m) { return GluingMatrix{std::labs(m)}; }

HomologyClass apply_gluing(const GluingMatrix &g, const HomologyClass &c)
{
    if (c.frame != Frame::T1)
        throw WrongFrame(fmt::format("gluing acts on T1, got a class on {}", frame_name(c.frame)));
    const auto a = g.action();
    return HomologyClass{Frame::T2, a[0][0] * c.mu + a[0][1] * c.lambda, a[1][0] * c.mu + a[1][1] * c.lambda};
}

ConstraintVerdict verify_relations(const BoundaryClasses &k)
{
    const std::string name = "boundary-relations";
    if (k.alpha.frame != Frame::T0 || k.c1.frame != Frame::T1 || k.c2.frame != Frame::T2)
        return ConstraintVerdict::fail(name, "classes are not on T0, T1, T2 in that order");
    // mu0 = -mu1 - mu2 and all longitudes agree.
    const long a0 = k.q * k.alpha.mu, b0 = k.q * k.alpha.lambda;
    const long on_mu1 = k.c1.mu - a0, on_mu2 = k.c2.mu - a0, on_lambda = b0 + k.c1.lambda + k.c2.lambda;
    if (on_mu1 == 0 && on_mu2 == 0 && on_lambda == 0)
        return ConstraintVerdict::pass(name);
    return ConstraintVerdict::fail(name, fmt::format("boundary sum is {} mu1 + {} mu2 + {} lambda0", on_mu1, on_mu2,
                                                     on_lambda));
}

std::optional<KleinSolution> solve_klein_slopes(long m)
{
    m = std::labs(m);
    // eps = -1 gives b2 = -b1, so b0 = 0 and alpha = mu0: never a solution.
    // eps = +1 gives b1 = b2 = 2q/m and b0 = -4/m.
    if (m == 0 || 4 % m != 0)
        return std::nullopt;
    for (long q = 1; q <= 2 * m; ++q) {
        if ((2 * q) % m != 0)
            continue;
        const long b1 = 2 * q / m;
        if (std::gcd(q, b1) != 1)
            continue;
        const long b0 = -4 / m;
        return KleinSolution{m, q, HomologyClass{Frame::T0, 1, b0}, std::labs(b0)};
    }
    return std::nullopt;
}

long slope_distance(const HomologyClass &a, const HomologyClass &b)
{
    if (!a.primitive() || !b.primitive())
        throw NonPrimitive(fmt::format("({}, {}) and ({}, {}) must both be primitive", a.mu, a.lambda, b.mu, b.lambda));
    return std::labs(intersection(a, b));
}

ConstraintVerdict longitude_distance_check(long delta_alpha_lambda, long q)
{
    if (q >= 1 && delta_alpha_lambda * q == q)
        return ConstraintVerdict::pass("distance-to-longitude");
    return ConstraintVerdict::fail("distance-to-longitude",
                                   fmt::format("{} * {} != {}", delta_alpha_lambda, q, q));
}

} // namespace slopes
