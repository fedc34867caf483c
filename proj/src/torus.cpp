#include "slopes/torus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

#include "slopes/enumerate.hpp"

namespace slopes {

namespace {

    struct UnionFind {
        std::vector<int> parent;
        explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
        int find(int x)
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }
        void unite(int a, int b) { parent[find(a)] = find(b); }
    };

    struct Region {
        int genus = 0;
        std::vector<int> walks;
    };

    class LayoutSearch {
    public:
        LayoutSearch(const MapData &map, const std::vector<int> &non_disk, std::size_t cap,
                     const std::function<bool(const TorusLayout &)> &visit)
            : map_(map), cap_(cap), visit_(visit), walks_(map.faces.count()), used_(walks_, 0), forced_(walks_, 0)
        {
            for (int w : non_disk)
                forced_[w] = 1;
            for (int w = 0; w < walks_; ++w)
                if (forced_[w])
                    forced_list_.push_back(w);
        }

        void run()
        {
            const int genus = map_.genus_sum();
            if (genus >= 2)
                return;
            const int budget = map_.components() - genus;
            if (static_cast<int>(forced_list_.size()) > 2 * budget)
                return;
            recurse(0, budget, genus == 1);
        }

    private:
        void recurse(int start, int budget, bool genus_spent)
        {
            if (stopped_)
                return;
            if (budget == 0) {
                emit();
                return;
            }
            for (int m = start; m < walks_ && !stopped_; ++m) {
                if (used_[m])
                    continue;
                if (first_uncovered_forced() < m)
                    break;
                for (int g = 0; g <= 1; ++g) {
                    if (g == 1 && genus_spent)
                        continue;
                    const int max_size = budget + 1 - g;
                    const int min_size = g == 1 ? 1 : 2;
                    used_[m] = 1;
                    regions_.push_back(Region{g, {m}});
                    extend(m + 1, min_size, max_size, budget, genus_spent || g == 1);
                    regions_.pop_back();
                    used_[m] = 0;
                }
            }
        }

        // Adds members above `from` to the open region, recursing once it is legal.
        void extend(int from, int min_size, int max_size, int budget, bool genus_spent)
        {
            if (stopped_)
                return;
            Region &open = regions_.back();
            const int size = static_cast<int>(open.walks.size());
            if (size >= min_size) {
                const int cost = size + open.genus - 1;
                recurse(open.walks.front() + 1, budget - cost, genus_spent);
            }
            if (size >= max_size)
                return;
            for (int w = from; w < walks_ && !stopped_; ++w) {
                if (used_[w])
                    continue;
                used_[w] = 1;
                regions_.back().walks.push_back(w);
                extend(w + 1, min_size, max_size, budget, genus_spent);
                regions_.back().walks.pop_back();
                used_[w] = 0;
            }
        }

        int first_uncovered_forced() const
        {
            for (int w : forced_list_)
                if (!used_[w])
                    return w;
            return walks_;
        }

        void emit()
        {
            if (first_uncovered_forced() != walks_)
                return;
            const int comps = map_.components();
            const int count = static_cast<int>(regions_.size());
            UnionFind uf(comps + count);
            for (int r = 0; r < count; ++r)
                for (int w : regions_[r].walks)
                    uf.unite(map_.walk_component[w], comps + r);
            for (int c = 1; c < comps; ++c)
                if (uf.find(c) != uf.find(0))
                    return;
            if (++produced_ > cap_)
                throw ScaleLimit(fmt::format("more than {} torus layouts", cap_));

            layout_.region_of_walk.assign(walks_, -1);
            layout_.region_genus.clear();
            layout_.region_size.clear();
            for (const Region &region : regions_) {
                const int id = layout_.region_count();
                layout_.region_genus.push_back(region.genus);
                layout_.region_size.push_back(static_cast<int>(region.walks.size()));
                for (int w : region.walks)
                    layout_.region_of_walk[w] = id;
            }
            for (int w = 0; w < walks_; ++w) {
                if (layout_.region_of_walk[w] >= 0)
                    continue;
                layout_.region_of_walk[w] = layout_.region_count();
                layout_.region_genus.push_back(0);
                layout_.region_size.push_back(1);
            }
            if (!visit_(layout_))
                stopped_ = true;
        }

        const MapData &map_;
        std::size_t cap_;
        const std::function<bool(const TorusLayout &)> &visit_;
        int walks_;
        std::vector<char> used_;
        std::vector<char> forced_;
        std::vector<int> forced_list_;
        std::vector<Region> regions_;
        TorusLayout layout_;
        std::size_t produced_ = 0;
        bool stopped_ = false;
    };

} // namespace

int MapData::genus_sum() const { return std::accumulate(component_genus.begin(), component_genus.end(), 0); }

MapData map_data(const Rotation &rotation)
{
    MapData out;
    out.faces = face_orbits(rotation);
    UnionFind uf(rotation.vertex_count);
    for (int d = 0; d < rotation.dart_count(); d += 2)
        uf.unite(rotation.vertex[d], rotation.vertex[d + 1]);
    std::vector<int> id(rotation.vertex_count, -1);
    out.component_of_vertex.assign(rotation.vertex_count, -1);
    int comps = 0;
    for (int v = 0; v < rotation.vertex_count; ++v) {
        const int root = uf.find(v);
        if (id[root] < 0)
            id[root] = comps++;
        out.component_of_vertex[v] = id[root];
    }
    std::vector<int> chi(comps, 0);
    for (int v = 0; v < rotation.vertex_count; ++v)
        ++chi[out.component_of_vertex[v]];
    for (int d = 0; d < rotation.dart_count(); d += 2)
        --chi[out.component_of_vertex[rotation.vertex[d]]];
    out.walk_component.assign(out.faces.count(), -1);
    for (int d = 0; d < rotation.dart_count(); ++d) {
        const int w = out.faces.face_of[d];
        if (out.walk_component[w] < 0) {
            out.walk_component[w] = out.component_of_vertex[rotation.vertex[d]];
            ++chi[out.walk_component[w]];
        }
    }
    out.component_genus.resize(comps);
    for (int c = 0; c < comps; ++c) {
        // An isolated vertex derives a sphere with no walks.
        if (chi[c] == 1)
            chi[c] = 2;
        out.component_genus[c] = (2 - chi[c]) / 2;
    }
    return out;
}

void for_each_torus_layout(const MapData &map, const std::vector<int> &non_disk, std::size_t cap,
                           const std::function<bool(const TorusLayout &)> &visit)
{
    LayoutSearch(map, non_disk, cap, visit).run();
}

ParallelClasses parallel_classes(const Rotation &rotation, const MapData &map, const TorusLayout &layout)
{
    const int edges = rotation.edge_count();
    UnionFind uf(edges);
    for (int d = 0; d < rotation.dart_count(); ++d) {
        const int w = map.faces.face_of[d];
        if (map.faces.length[w] != 2 || !layout.is_disk(w))
            continue;
        const int f = rotation.face_step(d);
        if ((f >> 1) != (d >> 1))
            uf.unite(d >> 1, f >> 1);
    }
    ParallelClasses out;
    out.class_of_edge.assign(edges, -1);
    std::vector<int> id(edges, -1);
    for (int e = 0; e < edges; ++e) {
        const int root = uf.find(e);
        if (id[root] < 0) {
            id[root] = out.count();
            out.size.push_back(0);
        }
        out.class_of_edge[e] = id[root];
        ++out.size[id[root]];
    }
    return out;
}

bool cycle_is_essential(const Rotation &rotation, const MapData &map, const TorusLayout &layout,
                        const std::vector<int> &cycle_edges)
{
    const int darts = rotation.dart_count();
    std::vector<char> on_cycle(rotation.edge_count(), 0);
    for (int e : cycle_edges)
        on_cycle[e] = 1;
    std::vector<std::vector<int>> cycle_darts(rotation.vertex_count);
    for (int d = 0; d < darts; ++d)
        if (on_cycle[d >> 1])
            cycle_darts[rotation.vertex[d]].push_back(d);

    UnionFind uf(layout.region_count());
    auto region = [&](int walk) { return layout.region_of_walk[walk]; };
    // The corner that follows dart x at its vertex lies on the walk through x ^ 1.
    auto corner = [&](int x) { return region(map.faces.face_of[x ^ 1]); };

    for (int e = 0; e < rotation.edge_count(); ++e)
        if (!on_cycle[e])
            uf.unite(region(map.faces.face_of[2 * e]), region(map.faces.face_of[2 * e + 1]));

    std::vector<int> first(rotation.vertex_count, -1);
    for (int d = 0; d < darts; ++d)
        if (first[rotation.vertex[d]] < 0)
            first[rotation.vertex[d]] = d;
    for (int v = 0; v < rotation.vertex_count; ++v) {
        if (first[v] < 0)
            continue;
        const auto &cd = cycle_darts[v];
        if (cd.empty()) {
            int x = first[v];
            do {
                uf.unite(corner(x), corner(first[v]));
                x = rotation.next[x];
            } while (x != first[v]);
            continue;
        }
        if (cd.size() != 2)
            throw std::invalid_argument(fmt::format("cycle meets vertex {} {} times", v, cd.size()));
        for (int side = 0; side < 2; ++side) {
            const int from = cd[side], to = cd[1 - side];
            for (int x = from; x != to; x = rotation.next[x])
                uf.unite(corner(x), corner(from));
        }
    }
    for (int r = 1; r < layout.region_count(); ++r)
        if (uf.find(r) != uf.find(0))
            return false;
    return true;
}

} // namespace slopes
