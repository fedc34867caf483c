#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slopes {

enum class Sign : int { negative = -1, positive = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign operator*(Sign a, Sign b) { return to_int(a) * to_int(b) > 0 ? Sign::positive : Sign::negative; }
constexpr Sign operator-(Sign a) { return a == Sign::positive ? Sign::negative : Sign::positive; }
constexpr Sign sign_of(int v) { return v >= 0 ? Sign::positive : Sign::negative; }
constexpr char sign_char(Sign s) { return s == Sign::positive ? '+' : '-'; }

enum class Polarity { polarized, neutral };

std::string_view to_string(Polarity p);
Polarity polarity_from_string(std::string_view text);

/// Parameters of one intersection case: s = |dS|, t = |dT| and the slope distance.
struct CaseParams {
    int s = 1;
    int t = 1;
    int delta = 1;
    Polarity s_polarity = Polarity::polarized;
    Polarity t_polarity = Polarity::polarized;

    friend bool operator==(const CaseParams &, const CaseParams &) = default;
};

/// Throws std::invalid_argument when the parameters are out of range or an odd
/// vertex count is paired with a neutral polarity.
void validate(const CaseParams &params);

enum class GraphErrc {
    slot_collision,
    unused_slot,
    label_block_violation,
    label_mismatch,
    parity_contradiction,
    not_cellular,
    malformed,
};

std::string_view to_string(GraphErrc code);

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrc code, const std::string &what);
    GraphErrc code() const noexcept { return code_; }

private:
    GraphErrc code_;
};

struct EdgeEnd {
    int vertex = 0;
    int slot = 0;
    int label = 0; // 0 when the graph carries no labels

    friend bool operator==(const EdgeEnd &, const EdgeEnd &) = default;
};

struct Edge {
    EdgeEnd a;
    EdgeEnd b;
    Sign sign = Sign::positive;
    std::optional<int> family;

    bool is_loop() const { return a.vertex == b.vertex; }
};

/// A boundary circle of a punctured surface. `labels[k]` is the label at slot k;
/// slots are listed in rotation order. Unlabeled graphs leave `labels` empty.
struct FatVertex {
    std::optional<Sign> parity;
    int degree = 0;
    std::vector<int> labels;
};

/// Labels on a vertex of G_F run 1..n_opposite consecutively, delta times around.
struct LabelFrame {
    int n_opposite = 1;
    int delta = 1;
};

/// A maximal family of mutually parallel, consecutive, same-sign edges.
/// labels_a[k] and labels_b[k] are the two endpoint labels of the k-th member,
/// members listed in rotation order at vertex_a.
struct ParallelFamily {
    int size = 1;
    Sign sign = Sign::positive;
    int vertex_a = 0;
    int vertex_b = 0;
    std::vector<int> labels_a;
    std::vector<int> labels_b;
};

/// Combinatorial map with the edge involution fixed as d <-> d ^ 1.
/// Dart 2e is end a of edge e, dart 2e + 1 is end b.
struct Rotation {
    std::vector<int> next;   // next dart in rotation order at the same vertex
    std::vector<int> prev;
    std::vector<int> vertex; // vertex carrying each dart
    int vertex_count = 0;

    int dart_count() const { return static_cast<int>(next.size()); }
    int edge_count() const { return dart_count() / 2; }
    int face_step(int d) const { return next[d ^ 1]; }
};

struct FaceOrbits {
    std::vector<int> face_of; // face id per dart
    std::vector<int> length;  // number of sides per face
    int count() const { return static_cast<int>(length.size()); }
};

FaceOrbits face_orbits(const Rotation &rotation);
/// Connected components, counting isolated vertices.
int component_count(const Rotation &rotation);

class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int dart_count() const { return 2 * edge_count(); }

    const std::vector<FatVertex> &vertices() const { return vertices_; }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<ParallelFamily> &families() const { return families_; }
    const std::optional<LabelFrame> &frame() const { return frame_; }
    const Rotation &rotation() const { return rotation_; }

    static constexpr int edge_of(int dart) { return dart >> 1; }
    static constexpr int opposite(int dart) { return dart ^ 1; }

    const EdgeEnd &end(int dart) const { return (dart & 1) ? edges_[dart >> 1].b : edges_[dart >> 1].a; }
    int vertex_of(int dart) const { return rotation_.vertex[dart]; }
    int slot_of(int dart) const { return end(dart).slot; }
    int label_of(int dart) const { return end(dart).label; }
    int next_at_vertex(int dart) const { return rotation_.next[dart]; }
    int prev_at_vertex(int dart) const { return rotation_.prev[dart]; }
    int dart_at(int vertex, int slot) const { return slot_dart_[first_slot_[vertex] + slot]; }
    int degree(int vertex) const { return vertices_[vertex].degree; }
    bool labeled() const { return frame_.has_value(); }

    /// Size of the family an edge stands for; 1 for unreduced edges.
    int size_of(int edge) const;

private:
    friend EmbeddedGraph build_graph(std::vector<FatVertex>, std::vector<Edge>, std::optional<LabelFrame>,
                                     std::vector<ParallelFamily>);

    std::vector<FatVertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<ParallelFamily> families_;
    std::optional<LabelFrame> frame_;
    Rotation rotation_;
    std::vector<int> first_slot_;
    std::vector<int> slot_dart_;
};

/// Validates and assembles a graph. Throws GraphError.
EmbeddedGraph build_graph(std::vector<FatVertex> vertices, std::vector<Edge> edges,
                          std::optional<LabelFrame> frame = std::nullopt,
                          std::vector<ParallelFamily> families = {});

/// Builds an unlabeled graph from per-vertex cyclic lists of edge ids; each id
/// appears exactly twice. The first occurrence becomes end a. Edge signs follow
/// the parities when given, otherwise loops and all edges are positive.
EmbeddedGraph graph_from_rotation(const std::vector<std::vector<int>> &rotation,
                                  const std::vector<std::optional<Sign>> &parities = {});

/// True when the cyclic label sequence steps by a constant +1 or -1 mod n.
bool is_block_labeling(const std::vector<int> &labels, const LabelFrame &frame);

struct Face {
    std::vector<int> darts; // edge-sides in walk order
    /// Corner after darts[k]: the labels {j, j+1} of the string it spans.
    std::vector<std::optional<std::pair<int, int>>> corner_labels;

    int sides() const { return static_cast<int>(darts.size()); }
};

std::vector<Face> trace_faces(const EmbeddedGraph &g);

struct EulerData {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int components = 0;

    int chi() const { return vertices - edges + faces; }
    /// Total genus of the surfaces derived from the rotation system.
    int genus() const { return (2 * components - chi()) / 2; }
    bool is_torus() const { return components == 1 && genus() == 1; }
};

EulerData euler_data(const EmbeddedGraph &g);

enum class SurfaceTarget { any, torus };

/// V - E + F of the derived surface. With SurfaceTarget::torus, throws
/// GraphError(not_cellular) unless the derived surface is a single torus.
int euler_characteristic(const EmbeddedGraph &g, SurfaceTarget target = SurfaceTarget::any);

/// Amalgamates every maximal chain of bigon faces into one edge.
EmbeddedGraph reduce_graph(const EmbeddedGraph &g);

} // namespace slopes
