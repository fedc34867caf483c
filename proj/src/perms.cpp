#include "slopes/perms.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

namespace slopes {

namespace {
    int residue(int x, int n) { return ((x % n) + n) % n; }
} // namespace

int to_label(int r, int n)
{
    const int x = residue(r, n);
    return x == 0 ? n : x;
}

InducedPermutation make_permutation(int n, int alpha, Sign epsilon)
{
    if (n < 1)
        throw std::invalid_argument("modulus must be positive");
    return InducedPermutation{n, residue(alpha, n), epsilon};
}

int InducedPermutation::operator()(int x) const { return to_label(alpha - to_int(epsilon) * x, modulus); }

bool InducedPermutation::is_identity() const
{
    for (int x = 1; x <= modulus; ++x)
        if ((*this)(x) != x)
            return false;
    return true;
}

InducedPermutation InducedPermutation::inverse() const
{
    // x + a inverts to x - a; a reflection is its own inverse.
    if (epsilon == Sign::negative)
        return make_permutation(modulus, -alpha, epsilon);
    return *this;
}

std::vector<int> InducedPermutation::table() const
{
    std::vector<int> out(modulus);
    for (int x = 1; x <= modulus; ++x)
        out[x - 1] = (*this)(x);
    return out;
}

bool same_action(const InducedPermutation &a, const InducedPermutation &b)
{
    return a.modulus == b.modulus && a.table() == b.table();
}

InducedPermutation induced_permutation(const ParallelFamily &family, int n)
{
    if (family.size < n)
        throw FamilyTooSmall(fmt::format("family of size {} cannot induce a permutation of {} labels", family.size, n));
    if (static_cast<int>(family.labels_a.size()) < n || static_cast<int>(family.labels_b.size()) < n)
        throw std::invalid_argument("family is missing endpoint labels");
    const int eps = to_int(family.sign);
    const int alpha = residue(family.labels_b[0] + eps * family.labels_a[0], n);
    for (int k = 1; k < n; ++k)
        if (residue(family.labels_b[k] + eps * family.labels_a[k], n) != alpha)
            throw std::invalid_argument(fmt::format("member {} breaks the affine label rule", k));
    return InducedPermutation{n, alpha, family.sign};
}

OrbitDecomposition cycle_orbits(const InducedPermutation &p)
{
    OrbitDecomposition out;
    std::vector<char> seen(p.modulus + 1, 0);
    for (int x = 1; x <= p.modulus; ++x) {
        if (seen[x])
            continue;
        std::vector<int> orbit;
        for (int y = x; !seen[y]; y = p(y)) {
            seen[y] = 1;
            orbit.push_back(y);
        }
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

int formula_orbit_count(const InducedPermutation &p)
{
    const int n = p.modulus;
    if (p.epsilon == Sign::negative)
        return std::gcd(n, p.alpha);
    // Fixed points solve 2x = alpha (mod n).
    int fixed = 0;
    if (n % 2 == 1)
        fixed = 1;
    else if (p.alpha % 2 == 0)
        fixed = 2;
    return fixed + (n - fixed) / 2;
}

OrbitDecomposition orbit_count(const InducedPermutation &p)
{
    OrbitDecomposition out = cycle_orbits(p);
    if (out.count() != formula_orbit_count(p))
        throw std::logic_error(fmt::format("orbit count mismatch for n={} alpha={} eps={}", p.modulus, p.alpha,
                                           sign_char(p.epsilon)));
    return out;
}

std::vector<EdgeOrbit> edge_orbit_subgraph(const std::vector<int> &members, const Rotation &partner)
{
    std::vector<int> parent(partner.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> ends(partner.vertex_count, 0);
    for (int e : members) {
        const int a = partner.vertex[2 * e], b = partner.vertex[2 * e + 1];
        parent[find(a)] = find(b);
        ++ends[a];
        ++ends[b];
    }
    std::vector<int> slot(partner.vertex_count, -1);
    std::vector<EdgeOrbit> out;
    for (int e : members) {
        const int root = find(partner.vertex[2 * e]);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root]].edges.push_back(e);
    }
    for (auto &orbit : out) {
        for (int e : orbit.edges) {
            orbit.vertices.push_back(partner.vertex[2 * e]);
            orbit.vertices.push_back(partner.vertex[2 * e + 1]);
        }
        std::sort(orbit.vertices.begin(), orbit.vertices.end());
        orbit.vertices.erase(std::unique(orbit.vertices.begin(), orbit.vertices.end()), orbit.vertices.end());
        std::sort(orbit.edges.begin(), orbit.edges.end());
        orbit.is_cycle = orbit.edges.size() == orbit.vertices.size() &&
                         std::all_of(orbit.vertices.begin(), orbit.vertices.end(), [&](int v) { return ends[v] == 2; });
    }
    std::sort(out.begin(), out.end(), [](const EdgeOrbit &a, const EdgeOrbit &b) { return a.edges < b.edges; });
    return out;
}

std::vector<EdgeOrbit> edge_orbit_subgraph(const std::vector<int> &members, const EmbeddedGraph &partner)
{
    return edge_orbit_subgraph(members, partner.rotation());
}

} // namespace slopes
