#include "slopes/enumerate.hpp"

#include <algorithm>
#include <map>

#include <fmt/core.h>

namespace slopes {

namespace {

    void partitions(int remaining, int parts, int cap, std::vector<int> &current,
                    std::vector<std::vector<int>> &out)
    {
        if (parts == 0) {
            if (remaining == 0)
                out.push_back(current);
            return;
        }
        for (int d = std::min(cap, remaining - (parts - 1)); d >= 1; --d) {
            if (d * parts < remaining)
                break;
            current.push_back(d);
            partitions(remaining - d, parts - 1, d, current, out);
            current.pop_back();
        }
    }

    // Fixed vertex rotations: darts of vertex v occupy a contiguous block.
    struct Layout {
        std::vector<int> next, prev, vertex;
        int vertex_count = 0;
    };

    Layout make_layout(const std::vector<int> &degrees)
    {
        Layout layout;
        layout.vertex_count = static_cast<int>(degrees.size());
        int base = 0;
        for (int v = 0; v < layout.vertex_count; ++v) {
            for (int k = 0; k < degrees[v]; ++k) {
                layout.next.push_back(base + (k + 1) % degrees[v]);
                layout.prev.push_back(base + (k + degrees[v] - 1) % degrees[v]);
                layout.vertex.push_back(v);
            }
            base += degrees[v];
        }
        return layout;
    }

    // Relabels slot-indexed darts so that matched slots become darts 2e, 2e + 1.
    EmbeddedGraph to_graph(const Layout &layout, const std::vector<int> &partner)
    {
        const int n = static_cast<int>(partner.size());
        std::vector<std::vector<int>> rotation(layout.vertex_count);
        std::vector<int> edge_id(n, -1);
        int next_id = 0;
        for (int x = 0; x < n; ++x) {
            if (edge_id[x] < 0) {
                edge_id[x] = next_id;
                edge_id[partner[x]] = next_id;
                ++next_id;
            }
            rotation[layout.vertex[x]].push_back(edge_id[x]);
        }
        return graph_from_rotation(rotation);
    }

    Rotation to_rotation(const Layout &layout, const std::vector<int> &partner)
    {
        // Dart numbering: 2e, 2e+1 per matched pair in order of first slot.
        const int n = static_cast<int>(partner.size());
        std::vector<int> dart(n, -1);
        int id = 0;
        for (int x = 0; x < n; ++x)
            if (dart[x] < 0) {
                dart[x] = 2 * id;
                dart[partner[x]] = 2 * id + 1;
                ++id;
            }
        Rotation rot;
        rot.vertex_count = layout.vertex_count;
        rot.next.assign(n, 0);
        rot.prev.assign(n, 0);
        rot.vertex.assign(n, 0);
        for (int x = 0; x < n; ++x) {
            rot.next[dart[x]] = dart[layout.next[x]];
            rot.prev[dart[x]] = dart[layout.prev[x]];
            rot.vertex[dart[x]] = layout.vertex[x];
        }
        return rot;
    }

    bool admissible(const Rotation &rot)
    {
        const auto faces = face_orbits(rot);
        if (std::any_of(faces.length.begin(), faces.length.end(), [](int len) { return len < 3; }))
            return false;
        const int chi = rot.vertex_count - rot.edge_count() + faces.count();
        return chi == 0 && component_count(rot) == 1;
    }

    class Search {
    public:
        Search(const Layout &layout, int target_faces, std::optional<int> exact_face_length)
            : layout_(layout), partner_(layout.next.size(), -1), target_faces_(target_faces),
              exact_face_length_(exact_face_length)
        {
        }

        template <typename Visit> void run(Visit &&visit) { extend(0, 0, visit); }

    private:
        int step(int x) const { return partner_[x] < 0 ? -1 : layout_.next[partner_[x]]; }

        // Follows the partial face permutation from x. Returns the closed length,
        // or minus the open length when the walk leaves the assigned part.
        int walk(int x) const
        {
            int len = 0;
            for (int y = x;;) {
                y = step(y);
                ++len;
                if (y < 0)
                    return -len;
                if (y == x)
                    return len;
            }
        }

        bool acceptable(int x, int &closed, int other) const
        {
            const int len = walk(x);
            if (len > 0) {
                if (len < 3)
                    return false;
                if (exact_face_length_ && len != *exact_face_length_)
                    return false;
                // Count the face once if it also passes through `other`.
                bool counted = false;
                for (int y = step(x); y != x; y = step(y))
                    if (y == other)
                        counted = true;
                if (!counted || other < 0)
                    ++closed;
                return true;
            }
            if (exact_face_length_) {
                int total = -len;
                for (int y = x; total <= *exact_face_length_;) {
                    const int before = partner_[layout_.prev[y]];
                    if (before < 0)
                        break;
                    y = before;
                    ++total;
                }
                if (total > *exact_face_length_)
                    return false;
            }
            return true;
        }

        template <typename Visit> void extend(int assigned, int closed, Visit &visit)
        {
            const int n = static_cast<int>(partner_.size());
            int first = 0;
            while (first < n && partner_[first] >= 0)
                ++first;
            if (first == n) {
                if (closed == target_faces_)
                    visit(partner_);
                return;
            }
            for (int other = first + 1; other < n; ++other) {
                if (partner_[other] >= 0)
                    continue;
                partner_[first] = other;
                partner_[other] = first;
                int now = closed;
                if (acceptable(first, now, -1) && acceptable(other, now, first) && now <= target_faces_)
                    extend(assigned + 2, now, visit);
                partner_[first] = -1;
                partner_[other] = -1;
            }
        }

        const Layout &layout_;
        std::vector<int> partner_;
        int target_faces_;
        std::optional<int> exact_face_length_;
    };

    void check_scale(int vertices, const EnumerationLimits &limits)
    {
        if (vertices < 1)
            throw std::invalid_argument("vertex count must be positive");
        if (vertices > limits.max_vertices)
            throw ScaleLimit(fmt::format("{} vertices exceeds the enumeration cap of {}", vertices,
                                         limits.max_vertices));
    }

} // namespace

std::vector<std::vector<int>> degree_sequences(int vertices, const DegreeSpec &degrees)
{
    std::vector<std::vector<int>> out;
    if (degrees.regular_degree) {
        const int d = *degrees.regular_degree;
        if (d >= 1 && (d * vertices) % 2 == 0 && d * vertices / 2 <= degrees.max_edges)
            out.emplace_back(vertices, d);
        return out;
    }
    // Faces of length >= 3 and chi = 0 force E <= 3V.
    const int max_edges = std::min(degrees.max_edges, 3 * vertices);
    for (int edges = 1; edges <= max_edges; ++edges) {
        std::vector<int> current;
        partitions(2 * edges, vertices, 2 * edges, current, out);
    }
    return out;
}

std::vector<EnumeratedGraph> enumerate_reduced_graphs(int vertices, const DegreeSpec &degrees,
                                                      const EnumerationLimits &limits)
{
    check_scale(vertices, limits);
    std::map<CanonicalKey, EmbeddedGraph> classes;
    for (const auto &sequence : degree_sequences(vertices, degrees)) {
        const Layout layout = make_layout(sequence);
        int darts = 0;
        for (int d : sequence)
            darts += d;
        const int edges = darts / 2;
        const int faces = edges - vertices;
        if (faces < 1 || 3 * faces > darts)
            continue;
        std::optional<int> exact;
        if (3 * faces == darts)
            exact = 3;
        Search search(layout, faces, exact);
        search.run([&](const std::vector<int> &partner) {
            Rotation rot = to_rotation(layout, partner);
            if (component_count(rot) != 1)
                return;
            auto key = canonical_form(rot);
            if (!classes.contains(key))
                classes.emplace(std::move(key), to_graph(layout, partner));
        });
    }
    std::vector<EnumeratedGraph> out;
    out.reserve(classes.size());
    for (auto &[key, graph] : classes)
        out.push_back({key, std::move(graph)});
    return out;
}

std::vector<CanonicalKey> brute_force_reduced_classes(int vertices, const DegreeSpec &degrees)
{
    std::vector<CanonicalKey> keys;
    for (const auto &sequence : degree_sequences(vertices, degrees)) {
        const Layout layout = make_layout(sequence);
        const int n = static_cast<int>(layout.next.size());
        std::vector<int> partner(n, -1);
        // Plain recursion over all perfect matchings.
        std::function<void()> recurse = [&]() {
            int first = 0;
            while (first < n && partner[first] >= 0)
                ++first;
            if (first == n) {
                const Rotation rot = to_rotation(layout, partner);
                if (admissible(rot))
                    keys.push_back(canonical_form(rot));
                return;
            }
            for (int other = first + 1; other < n; ++other) {
                if (partner[other] >= 0)
                    continue;
                partner[first] = other;
                partner[other] = first;
                recurse();
                partner[first] = partner[other] = -1;
            }
        };
        recurse();
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

} // namespace slopes
