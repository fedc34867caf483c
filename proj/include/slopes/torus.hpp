#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "slopes/graph.hpp"

namespace slopes {

/// Face walks and components of a rotation system.
struct MapData {
    FaceOrbits faces;
    std::vector<int> component_of_vertex;
    std::vector<int> component_genus; // genus of the surface each component derives
    std::vector<int> walk_component;

    int components() const { return static_cast<int>(component_genus.size()); }
    int genus_sum() const;
};

MapData map_data(const Rotation &rotation);

/// A placement of a graph in the closed torus that keeps its rotation system.
/// Walks sharing a region bound one complementary piece of that genus; a walk
/// alone in a genus 0 region bounds a disk.
struct TorusLayout {
    std::vector<int> region_of_walk;
    std::vector<int> region_genus;
    std::vector<int> region_size;

    int region_count() const { return static_cast<int>(region_genus.size()); }
    bool is_disk(int walk) const
    {
        const int r = region_of_walk[walk];
        return region_size[r] == 1 && region_genus[r] == 0;
    }
};

/// Streams every layout in which each walk of `non_disk` misses a disk region.
/// The visitor returns false to stop. Throws ScaleLimit past `cap` layouts.
/// Yields nothing when the components carry total genus above one.
void for_each_torus_layout(const MapData &map, const std::vector<int> &non_disk, std::size_t cap,
                           const std::function<bool(const TorusLayout &)> &visit);

/// Maximal chains of edges joined by bigon regions of the layout.
struct ParallelClasses {
    std::vector<int> class_of_edge;
    std::vector<int> size;
    int count() const { return static_cast<int>(size.size()); }
};

ParallelClasses parallel_classes(const Rotation &rotation, const MapData &map, const TorusLayout &layout);

/// True when a simple cycle of edges leaves the closed torus connected, i.e. it
/// bounds no disk there.
bool cycle_is_essential(const Rotation &rotation, const MapData &map, const TorusLayout &layout,
                        const std::vector<int> &cycle_edges);

} // namespace slopes
