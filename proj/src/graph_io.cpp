#include "slopes/graph_io.hpp"

#include <istream>
#include <regex>
#include <sstream>

#include <fmt/core.h>

namespace slopes {

namespace {

    [[noreturn]] void bad(int line, const std::string &why)
    {
        throw GraphError(GraphErrc::malformed, fmt::format("line {}: {}", line, why));
    }

    std::optional<Sign> parse_parity(const std::string &tok, int line)
    {
        if (tok == "+")
            return Sign::positive;
        if (tok == "-")
            return Sign::negative;
        if (tok == "?")
            return std::nullopt;
        bad(line, fmt::format("parity '{}' is not +, - or ?", tok));
    }

} // namespace

EmbeddedGraph parse_graph(std::istream &in)
{
    static const std::regex frame_re(R"(^frame\s+(\d+)\s+(\d+)$)");
    static const std::regex vertex_re(R"(^v(\d+)\s+([-+?])\s*:\s*([\d\s]*)$)");
    static const std::regex edge_re(
        R"(^e(\d+)\s+([-+])\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*-\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$)");

    std::optional<LabelFrame> frame;
    std::vector<FatVertex> vertices;
    std::vector<Edge> edges;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = raw.find_last_not_of(" \t\r");
        const std::string text = raw.substr(first, last - first + 1);
        std::smatch m;
        if (std::regex_match(text, m, frame_re)) {
            frame = LabelFrame{std::stoi(m[1]), std::stoi(m[2])};
        } else if (std::regex_match(text, m, vertex_re)) {
            const int id = std::stoi(m[1]);
            if (id != static_cast<int>(vertices.size()))
                bad(line, fmt::format("vertex v{} out of order", id));
            FatVertex v;
            v.parity = parse_parity(m[2], line);
            std::istringstream labels(m[3]);
            for (int x; labels >> x;)
                v.labels.push_back(x);
            v.degree = static_cast<int>(v.labels.size());
            if (!frame)
                v.labels.clear();
            vertices.push_back(std::move(v));
        } else if (std::regex_match(text, m, edge_re)) {
            const int id = std::stoi(m[1]);
            if (id != static_cast<int>(edges.size()))
                bad(line, fmt::format("edge e{} out of order", id));
            Edge e;
            e.sign = m[2] == "+" ? Sign::positive : Sign::negative;
            e.a = EdgeEnd{std::stoi(m[3]), std::stoi(m[4]), std::stoi(m[5])};
            e.b = EdgeEnd{std::stoi(m[6]), std::stoi(m[7]), std::stoi(m[8])};
            edges.push_back(e);
        } else {
            bad(line, fmt::format("cannot parse '{}'", text));
        }
    }
    return build_graph(std::move(vertices), std::move(edges), frame);
}

EmbeddedGraph parse_graph_text(const std::string &text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

std::string format_graph(const EmbeddedGraph &g)
{
    std::string out;
    if (g.frame())
        out += fmt::format("frame {} {}\n", g.frame()->n_opposite, g.frame()->delta);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto &fv = g.vertices()[v];
        out += fmt::format("v{} {} :", v, fv.parity ? sign_char(*fv.parity) : '?');
        for (int k = 0; k < fv.degree; ++k)
            out += fmt::format(" {}", fv.labels.empty() ? 0 : fv.labels[k]);
        out += '\n';
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto &edge = g.edges()[e];
        out += fmt::format("e{} {} ({},{},{})-({},{},{})\n", e, sign_char(edge.sign), edge.a.vertex, edge.a.slot,
                           edge.a.label, edge.b.vertex, edge.b.slot, edge.b.label);
    }
    return out;
}

} // namespace slopes
