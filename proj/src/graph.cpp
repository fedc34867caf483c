#include "slopes/graph.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

namespace slopes {

std::string_view to_string(Polarity p)
{
    return p == Polarity::polarized ? "polarized" : "neutral";
}

Polarity polarity_from_string(std::string_view text)
{
    if (text == "polarized")
        return Polarity::polarized;
    if (text == "neutral")
        return Polarity::neutral;
    throw std::invalid_argument(fmt::format("unknown polarity '{}'", text));
}

void validate(const CaseParams &params)
{
    if (params.s < 1 || params.t < 1 || params.delta < 1)
        throw std::invalid_argument(
            fmt::format("case parameters must be positive (s={}, t={}, delta={})", params.s, params.t, params.delta));
    if (params.s % 2 == 1 && params.s_polarity == Polarity::neutral)
        throw std::invalid_argument(fmt::format("s={} is odd, so S cannot be neutral", params.s));
    if (params.t % 2 == 1 && params.t_polarity == Polarity::neutral)
        throw std::invalid_argument(fmt::format("t={} is odd, so T cannot be neutral", params.t));
}

std::string_view to_string(GraphErrc code)
{
    switch (code) {
    case GraphErrc::slot_collision: return "SlotCollision";
    case GraphErrc::unused_slot: return "UnusedSlot";
    case GraphErrc::label_block_violation: return "LabelBlockViolation";
    case GraphErrc::label_mismatch: return "LabelMismatch";
    case GraphErrc::parity_contradiction: return "ParityContradiction";
    case GraphErrc::not_cellular: return "NotCellular";
    case GraphErrc::malformed: return "Malformed";
    }
    return "Unknown";
}

GraphError::GraphError(GraphErrc code, const std::string &what)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), what)), code_(code)
{
}

FaceOrbits face_orbits(const Rotation &rotation)
{
    FaceOrbits out;
    const int n = rotation.dart_count();
    out.face_of.assign(n, -1);
    for (int d = 0; d < n; ++d) {
        if (out.face_of[d] >= 0)
            continue;
        const int id = out.count();
        int len = 0;
        for (int x = d; out.face_of[x] < 0; x = rotation.face_step(x)) {
            out.face_of[x] = id;
            ++len;
        }
        out.length.push_back(len);
    }
    return out;
}

namespace {
    int find_root(std::vector<int> &parent, int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
} // namespace

int component_count(const Rotation &rotation)
{
    std::vector<int> parent(rotation.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    int count = rotation.vertex_count;
    for (int d = 0; d < rotation.dart_count(); d += 2) {
        int a = find_root(parent, rotation.vertex[d]), b = find_root(parent, rotation.vertex[d + 1]);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

int EmbeddedGraph::size_of(int edge) const
{
    const auto &family = edges_[edge].family;
    return family ? families_[*family].size : 1;
}

bool is_block_labeling(const std::vector<int> &labels, const LabelFrame &frame)
{
    const int n = frame.n_opposite;
    if (static_cast<int>(labels.size()) != frame.delta * n)
        return false;
    if (std::any_of(labels.begin(), labels.end(), [n](int l) { return l < 1 || l > n; }))
        return false;
    if (n == 1)
        return true;
    for (int step : {1, n - 1}) {
        bool ok = true;
        for (std::size_t k = 0; k < labels.size() && ok; ++k) {
            const int here = labels[k] - 1, there = labels[(k + 1) % labels.size()] - 1;
            ok = there == (here + step) % n;
        }
        if (ok)
            return true;
    }
    return false;
}

EmbeddedGraph build_graph(std::vector<FatVertex> vertices, std::vector<Edge> edges, std::optional<LabelFrame> frame,
                          std::vector<ParallelFamily> families)
{
    EmbeddedGraph g;
    const int nv = static_cast<int>(vertices.size());

    g.first_slot_.assign(nv + 1, 0);
    for (int v = 0; v < nv; ++v) {
        auto &vertex = vertices[v];
        if (!vertex.labels.empty() && vertex.degree == 0)
            vertex.degree = static_cast<int>(vertex.labels.size());
        if (vertex.degree < 0)
            throw GraphError(GraphErrc::malformed, fmt::format("v{} has negative degree", v));
        if (frame) {
            if (frame->n_opposite < 1 || frame->delta < 1)
                throw GraphError(GraphErrc::malformed, "label frame must be positive");
            if (vertex.degree != frame->delta * frame->n_opposite)
                throw GraphError(GraphErrc::label_block_violation,
                                 fmt::format("v{} has {} slots, expected delta * n = {}", v, vertex.degree,
                                             frame->delta * frame->n_opposite));
            if (!is_block_labeling(vertex.labels, *frame))
                throw GraphError(GraphErrc::label_block_violation,
                                 fmt::format("labels around v{} are not {} consecutive blocks mod {}", v,
                                             frame->delta, frame->n_opposite));
        }
        else if (!vertex.labels.empty() && static_cast<int>(vertex.labels.size()) != vertex.degree) {
            throw GraphError(GraphErrc::malformed, fmt::format("v{} label cycle length differs from degree", v));
        }
        g.first_slot_[v + 1] = g.first_slot_[v] + vertex.degree;
    }

    const int ne = static_cast<int>(edges.size());
    g.slot_dart_.assign(g.first_slot_[nv], -1);
    g.rotation_.vertex.assign(2 * ne, 0);
    g.rotation_.vertex_count = nv;

    for (int e = 0; e < ne; ++e) {
        for (int side = 0; side < 2; ++side) {
            EdgeEnd &end = side ? edges[e].b : edges[e].a;
            if (end.vertex < 0 || end.vertex >= nv)
                throw GraphError(GraphErrc::malformed, fmt::format("e{} references missing vertex {}", e, end.vertex));
            const auto &vertex = vertices[end.vertex];
            if (end.slot < 0 || end.slot >= vertex.degree)
                throw GraphError(GraphErrc::malformed,
                                 fmt::format("e{} uses slot {} of v{} (degree {})", e, end.slot, end.vertex,
                                             vertex.degree));
            int &cell = g.slot_dart_[g.first_slot_[end.vertex] + end.slot];
            if (cell >= 0)
                throw GraphError(GraphErrc::slot_collision,
                                 fmt::format("slot {} of v{} is used by e{} and e{}", end.slot, end.vertex, cell / 2,
                                             e));
            cell = 2 * e + side;
            g.rotation_.vertex[2 * e + side] = end.vertex;
            if (!vertex.labels.empty()) {
                if (end.label == 0)
                    end.label = vertex.labels[end.slot];
                else if (end.label != vertex.labels[end.slot])
                    throw GraphError(GraphErrc::label_mismatch,
                                     fmt::format("e{} carries label {} at v{} slot {}, vertex has {}", e, end.label,
                                                 end.vertex, end.slot, vertex.labels[end.slot]));
            }
        }

        const Edge &edge = edges[e];
        if (edge.is_loop() && edge.sign == Sign::negative)
            throw GraphError(GraphErrc::parity_contradiction, fmt::format("loop e{} is negative", e));
        const auto &pa = vertices[edge.a.vertex].parity, &pb = vertices[edge.b.vertex].parity;
        if (pa && pb && edge.sign != (*pa) * (*pb))
            throw GraphError(GraphErrc::parity_contradiction,
                             fmt::format("e{} has sign {} between vertices of parity {} and {}", e,
                                         sign_char(edge.sign), sign_char(*pa), sign_char(*pb)));
        if (edge.family && (*edge.family < 0 || *edge.family >= static_cast<int>(families.size())))
            throw GraphError(GraphErrc::malformed, fmt::format("e{} references missing family", e));
    }

    for (int v = 0; v < nv; ++v)
        for (int k = 0; k < vertices[v].degree; ++k)
            if (g.slot_dart_[g.first_slot_[v] + k] < 0)
                throw GraphError(GraphErrc::unused_slot, fmt::format("slot {} of v{} has no edge end", k, v));

    g.rotation_.next.assign(2 * ne, 0);
    g.rotation_.prev.assign(2 * ne, 0);
    for (int v = 0; v < nv; ++v) {
        const int deg = vertices[v].degree;
        for (int k = 0; k < deg; ++k) {
            const int d = g.slot_dart_[g.first_slot_[v] + k];
            const int nd = g.slot_dart_[g.first_slot_[v] + (k + 1) % deg];
            g.rotation_.next[d] = nd;
            g.rotation_.prev[nd] = d;
        }
    }

    for (const auto &family : families)
        if (family.size < 1)
            throw GraphError(GraphErrc::malformed, "family size must be positive");

    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.families_ = std::move(families);
    g.frame_ = frame;
    return g;
}

EmbeddedGraph graph_from_rotation(const std::vector<std::vector<int>> &rotation,
                                  const std::vector<std::optional<Sign>> &parities)
{
    int max_id = -1;
    for (const auto &cycle : rotation)
        for (int id : cycle)
            max_id = std::max(max_id, id);

    std::vector<FatVertex> vertices(rotation.size());
    std::vector<Edge> edges(max_id + 1);
    std::vector<int> seen(max_id + 1, 0);
    for (std::size_t v = 0; v < rotation.size(); ++v) {
        vertices[v].degree = static_cast<int>(rotation[v].size());
        if (v < parities.size())
            vertices[v].parity = parities[v];
        for (std::size_t k = 0; k < rotation[v].size(); ++k) {
            const int id = rotation[v][k];
            if (id < 0)
                throw GraphError(GraphErrc::malformed, "negative edge id in rotation");
            EdgeEnd end{static_cast<int>(v), static_cast<int>(k), 0};
            if (seen[id] == 0)
                edges[id].a = end;
            else if (seen[id] == 1)
                edges[id].b = end;
            else
                throw GraphError(GraphErrc::slot_collision, fmt::format("edge {} appears more than twice", id));
            ++seen[id];
        }
    }
    for (int id = 0; id <= max_id; ++id) {
        if (seen[id] != 2)
            throw GraphError(GraphErrc::malformed, fmt::format("edge {} appears {} times", id, seen[id]));
        const auto &pa = vertices[edges[id].a.vertex].parity, &pb = vertices[edges[id].b.vertex].parity;
        edges[id].sign = (pa && pb) ? (*pa) * (*pb) : Sign::positive;
    }
    return build_graph(std::move(vertices), std::move(edges));
}

std::vector<Face> trace_faces(const EmbeddedGraph &g)
{
    const auto orbits = face_orbits(g.rotation());
    std::vector<Face> faces(orbits.count());
    std::vector<char> done(g.dart_count(), 0);
    for (int d = 0; d < g.dart_count(); ++d) {
        if (done[d])
            continue;
        Face &face = faces[orbits.face_of[d]];
        for (int x = d; !done[x]; x = g.rotation().face_step(x)) {
            done[x] = 1;
            face.darts.push_back(x);
            const int arrive = EmbeddedGraph::opposite(x);
            const int leave = g.next_at_vertex(arrive);
            if (g.labeled())
                face.corner_labels.emplace_back(std::pair{g.label_of(arrive), g.label_of(leave)});
            else
                face.corner_labels.emplace_back(std::nullopt);
        }
    }
    return faces;
}

EulerData euler_data(const EmbeddedGraph &g)
{
    return EulerData{g.vertex_count(), g.edge_count(), face_orbits(g.rotation()).count(),
                     component_count(g.rotation())};
}

int euler_characteristic(const EmbeddedGraph &g, SurfaceTarget target)
{
    const auto data = euler_data(g);
    if (target == SurfaceTarget::torus && !data.is_torus())
        throw GraphError(GraphErrc::not_cellular,
                         fmt::format("derived surface has {} component(s) of total genus {}, chi = {}",
                                     data.components, data.genus(), data.chi()));
    return data.chi();
}

EmbeddedGraph reduce_graph(const EmbeddedGraph &g)
{
    const Rotation &rot = g.rotation();
    const int nd = g.dart_count();
    const auto orbits = face_orbits(rot);

    // Darts on the same side of a bigon chain share a class; each class is one
    // end of a reduced edge.
    std::vector<int> side(nd);
    std::iota(side.begin(), side.end(), 0);
    for (int d = 0; d < nd; ++d) {
        if (orbits.length[orbits.face_of[d]] != 2)
            continue;
        const int d1 = rot.face_step(d);
        if (EmbeddedGraph::edge_of(d1) == EmbeddedGraph::edge_of(d))
            continue;
        int a = find_root(side, d ^ 1), b = find_root(side, d1);
        if (a != b)
            side[a] = b;
    }
    for (int d = 0; d < nd; ++d)
        side[d] = find_root(side, d);

    // Group darts of each class in rotation order, starting after a class change.
    std::vector<std::vector<int>> runs_at(g.vertex_count());
    std::vector<std::vector<int>> members(nd);
    std::vector<int> run_count(nd, 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int deg = g.degree(v);
        if (deg == 0)
            continue;
        int start = 0;
        while (start < deg && side[g.dart_at(v, start)] ==
                                  side[g.dart_at(v, (start + deg - 1) % deg)])
            ++start;
        if (start == deg)
            start = 0;
        for (int k = 0; k < deg; ++k) {
            const int d = g.dart_at(v, (start + k) % deg);
            const int cls = side[d];
            if (members[cls].empty() || runs_at[v].empty() || runs_at[v].back() != cls) {
                if (++run_count[cls] > 1)
                    throw GraphError(GraphErrc::malformed, "parallel class is split around a vertex");
                runs_at[v].push_back(cls);
            }
            members[cls].push_back(d);
        }
    }

    // One reduced edge per pair of partner classes.
    std::vector<int> reduced_edge(nd, -1);
    std::vector<char> is_end_a(nd, 0);
    std::vector<Edge> edges;
    std::vector<ParallelFamily> families;
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (int cls : runs_at[v]) {
            if (reduced_edge[cls] >= 0)
                continue;
            const auto &here = members[cls];
            const int partner = side[here.front() ^ 1];
            const int id = static_cast<int>(edges.size());
            reduced_edge[cls] = id;
            reduced_edge[partner] = id;
            is_end_a[cls] = 1;

            ParallelFamily family;
            family.size = 0;
            family.sign = g.edges()[EmbeddedGraph::edge_of(here.front())].sign;
            family.vertex_a = g.vertex_of(here.front());
            family.vertex_b = g.vertex_of(here.front() ^ 1);
            for (int d : here) {
                const int e = EmbeddedGraph::edge_of(d);
                if (g.edges()[e].sign != family.sign)
                    throw GraphError(GraphErrc::malformed, "parallel edges with different signs");
                const auto &edge = g.edges()[e];
                if (edge.family) {
                    // Already a reduced edge: splice its member sequences in this orientation.
                    const auto &inner = g.families()[*edge.family];
                    const bool forward = (d & 1) == 0;
                    const auto &near = forward ? inner.labels_a : inner.labels_b;
                    const auto &far = forward ? inner.labels_b : inner.labels_a;
                    family.labels_a.insert(family.labels_a.end(), near.begin(), near.end());
                    family.labels_b.insert(family.labels_b.end(), far.begin(), far.end());
                    family.size += inner.size;
                }
                else {
                    family.labels_a.push_back(g.label_of(d));
                    family.labels_b.push_back(g.label_of(d ^ 1));
                    family.size += 1;
                }
            }
            Edge edge;
            edge.sign = family.sign;
            edge.family = static_cast<int>(families.size());
            edge.a.vertex = family.vertex_a;
            edge.b.vertex = family.vertex_b;
            edges.push_back(edge);
            families.push_back(std::move(family));
        }
    }

    std::vector<FatVertex> vertices(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        vertices[v].parity = g.vertices()[v].parity;
        vertices[v].degree = static_cast<int>(runs_at[v].size());
        for (std::size_t k = 0; k < runs_at[v].size(); ++k) {
            const int cls = runs_at[v][k];
            Edge &edge = edges[reduced_edge[cls]];
            (is_end_a[cls] ? edge.a : edge.b).slot = static_cast<int>(k);
        }
    }
    return build_graph(std::move(vertices), std::move(edges), std::nullopt, std::move(families));
}

} // namespace slopes
