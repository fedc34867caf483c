#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "slopes/constraints.hpp"

namespace slopes {

enum class Frame { T0, T1, T2 };

/// a * mu_i + b * lambda_i on the boundary torus T_i.
struct HomologyClass {
    Frame frame = Frame::T0;
    long mu = 0;
    long lambda = 0;

    bool primitive() const;
    friend bool operator==(const HomologyClass &, const HomologyClass &) = default;
};

class WrongFrame : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonPrimitive : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Algebraic intersection number a.mu * b.lambda - a.lambda * b.mu.
long intersection(const HomologyClass &a, const HomologyClass &b);

/// The gluing T1 -> T2 with matrix ((-1, m), (0, 1)) acting on columns (mu, lambda).
struct GluingMatrix {
    long m = 0;

    std::array<std::array<long, 2>, 2> action() const { return {{{-1, m}, {0, 1}}}; }
    long determinant() const { return -1; }
};

/// m and -m give homeomorphic manifolds.
GluingMatrix make_gluing(long m);

HomologyClass apply_gluing(const GluingMatrix &g, const HomologyClass &c);

/// Boundary of a punctured annulus meeting T0 in q copies of alpha and the
/// gluing tori in classes c1, c2. In H1 generated by mu1, mu2, lambda0 the
/// sum vanishes iff c1.mu = c2.mu = q and q * b0 = -(c1.lambda + c2.lambda),
/// where alpha = mu0 + b0 * lambda0.
struct BoundaryClasses {
    long q = 0;
    HomologyClass alpha;  // on T0
    HomologyClass c1;     // on T1
    HomologyClass c2;     // on T2
};

ConstraintVerdict verify_relations(const BoundaryClasses &classes);

struct KleinSolution {
    long m = 0;
    long q = 0;
    HomologyClass alpha;  // on T0
    long distance = 0;    // to mu0
};

/// Integral solutions of b1 * m = (1 + eps) q, b1 = eps * b2 with q, 2q/m
/// coprime and alpha different from mu0.
std::optional<KleinSolution> solve_klein_slopes(long m);

/// |a.mu * b.lambda - a.lambda * b.mu| for primitive classes on one torus.
long slope_distance(const HomologyClass &a, const HomologyClass &b);

/// Parallel boundary circles force distance(alpha, lambda0) * q = q.
ConstraintVerdict longitude_distance_check(long delta_alpha_lambda, long q);

} // namespace slopes
