#include "slopes/canonical.hpp"

#include <algorithm>

namespace slopes {

namespace {

    constexpr int component_marker = -1000;
    constexpr int isolated_marker = -2000;

    // Per-dart decoration, reflection independent.
    using Decoration = std::vector<std::vector<int>>;

    CanonicalKey component_code(const Rotation &rot, const Decoration &decoration, int root, bool mirrored,
                                std::vector<int> &number, std::vector<int> &order)
    {
        order.clear();
        number[root] = 0;
        order.push_back(root);
        CanonicalKey code;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int d = order[i];
            const int turn = mirrored ? rot.prev[d] : rot.next[d];
            for (int x : {d ^ 1, turn}) {
                if (number[x] < 0) {
                    number[x] = static_cast<int>(order.size());
                    order.push_back(x);
                }
            }
            code.push_back(number[d ^ 1]);
            code.push_back(number[turn]);
            code.insert(code.end(), decoration[d].begin(), decoration[d].end());
        }
        for (int d : order)
            number[d] = -1;
        return code;
    }

    CanonicalKey canonical_key(const Rotation &rot, const Decoration &decoration,
                               const std::vector<std::vector<int>> &vertex_decoration)
    {
        const int nd = rot.dart_count();
        std::vector<int> component(nd, -1);
        std::vector<CanonicalKey> codes;
        std::vector<int> number(nd, -1), order;

        std::vector<char> vertex_used(rot.vertex_count, 0);
        for (int d = 0; d < nd; ++d)
            vertex_used[rot.vertex[d]] = 1;

        for (int start = 0; start < nd; ++start) {
            if (component[start] >= 0)
                continue;
            // Collect the component by flood fill over both permutations.
            std::vector<int> darts{start};
            component[start] = start;
            for (std::size_t i = 0; i < darts.size(); ++i)
                for (int x : {darts[i] ^ 1, rot.next[darts[i]]})
                    if (component[x] < 0) {
                        component[x] = start;
                        darts.push_back(x);
                    }
            CanonicalKey best;
            for (int root : darts)
                for (bool mirrored : {false, true}) {
                    auto code = component_code(rot, decoration, root, mirrored, number, order);
                    if (best.empty() || code < best)
                        best = std::move(code);
                }
            codes.push_back(std::move(best));
        }
        for (int v = 0; v < rot.vertex_count; ++v)
            if (!vertex_used[v]) {
                CanonicalKey code{isolated_marker};
                if (v < static_cast<int>(vertex_decoration.size()))
                    code.insert(code.end(), vertex_decoration[v].begin(), vertex_decoration[v].end());
                codes.push_back(std::move(code));
            }
        std::sort(codes.begin(), codes.end());

        CanonicalKey key{rot.vertex_count, rot.edge_count()};
        for (const auto &code : codes) {
            key.push_back(component_marker);
            key.insert(key.end(), code.begin(), code.end());
        }
        return key;
    }

} // namespace

CanonicalKey canonical_form(const EmbeddedGraph &g)
{
    const auto &rot = g.rotation();
    Decoration decoration(g.dart_count());
    for (int d = 0; d < g.dart_count(); ++d) {
        const auto &edge = g.edges()[EmbeddedGraph::edge_of(d)];
        const auto &parity = g.vertices()[g.vertex_of(d)].parity;
        decoration[d] = {parity ? to_int(*parity) : 0, to_int(edge.sign), g.label_of(d),
                         g.size_of(EmbeddedGraph::edge_of(d))};
    }
    std::vector<std::vector<int>> vertex_decoration(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto &parity = g.vertices()[v].parity;
        vertex_decoration[v] = {parity ? to_int(*parity) : 0};
    }
    return canonical_key(rot, decoration, vertex_decoration);
}

CanonicalKey canonical_form(const Rotation &rotation)
{
    return canonical_key(rotation, Decoration(rotation.dart_count()), {});
}

} // namespace slopes
