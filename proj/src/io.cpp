#include "shrub/io.hpp"

#include <fstream>
#include <sstream>

namespace shrub {

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    auto es = g.edges();
    out << g.n() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) out << u << ' ' << v << '\n';
    return out.str();
}

std::string write_graph(const ColoredGraph& g) {
    std::ostringstream out;
    out << write_graph(g.g);
    for (int k = 1; k <= g.k(); ++k) {
        out << "c " << k;
        g.colors[k - 1].for_each([&](int v) { out << ' ' << v; });
        out << '\n';
    }
    return out.str();
}

ColoredGraph read_colored_graph(std::istream& in) {
    int n, m;
    if (!(in >> n >> m) || n < 0 || m < 0) throw GraphError("graph format: expected 'n m' header");
    ColoredGraph cg{Graph(n), {}};
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw GraphError("graph format: expected " + std::to_string(m) + " edge lines");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw GraphError("graph format: bad edge " + std::to_string(u) + " " + std::to_string(v));
        cg.g.add_edge(u, v);
    }
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        int k;
        if (tag != "c" || !(ls >> k) || k < 1) throw GraphError("graph format: bad colour line '" + line + "'");
        while (cg.k() < k) cg.colors.emplace_back(n);
        int v;
        while (ls >> v) {
            if (v < 0 || v >= n) throw GraphError("graph format: colour vertex out of range");
            cg.colors[k - 1].set(v);
        }
    }
    return cg;
}

ColoredGraph read_colored_graph_text(const std::string& text) {
    std::istringstream in(text);
    return read_colored_graph(in);
}

Graph read_graph_text(const std::string& text) { return read_colored_graph_text(text).g; }

ColoredGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    return read_colored_graph(in);
}

Json to_json(const FlipSpec& s) {
    Json j;
    j["parts"] = s.partition.parts;
    Json f = Json::array();
    for (auto [a, b] : s.flip_pairs()) f.push_back({a, b});
    j["flips"] = f;
    return j;
}

FlipSpec flip_spec_from_json(const Json& j, int n) {
    FlipSpec s(VertexPartition::from_parts(n, j.at("parts").get<std::vector<std::vector<int>>>()));
    auto parts = j.at("parts").get<std::vector<std::vector<int>>>();
    // parts may be reordered by from_parts; translate through a representative vertex
    for (auto& p : j.at("flips")) {
        int a = p.at(0), b = p.at(1);
        if (a < 0 || b < 0 || a >= (int)parts.size() || b >= (int)parts.size() || parts[a].empty() ||
            parts[b].empty())
            throw GraphError("flip spec: part index out of range");
        s.set_flip(s.partition.part_of[parts[a][0]], s.partition.part_of[parts[b][0]]);
    }
    return s;
}

Json to_json(const PatternCoordinates& c) {
    Json j;
    j["kind"] = kind_name(c.kind);
    j["m"] = c.m;
    j["t"] = c.t;
    j["r"] = c.r;
    Json cs = Json::array();
    for (auto& co : c.coord) cs.push_back({co[0], co[1], co[2]});
    j["coords"] = cs;
    j["layers"] = c.layers;
    return j;
}

Json to_json(const WitnessReport& w) {
    Json j = to_json(w.spec);
    j["part_count"] = w.spec.partition.size();
    j["discerning"] = w.discerning;
    return j;
}

Json to_json(const ScTrace& t) {
    Json j;
    j["vertices"] = t.vertices;
    j["complemented"] = t.complemented;
    j["depth"] = t.depth;
    Json parts = Json::array();
    for (auto& p : t.parts) parts.push_back(to_json(p));
    j["parts"] = parts;
    return j;
}

Json to_json(const Certificate& c) {
    Json j;
    j["kind"] = c.kind == Certificate::Kind::InfIndependent ? "independent" : "induced-pattern";
    j["independent"] = c.independent;
    j["paths"] = c.paths;
    return j;
}

Json to_json(const BallCensus& c) {
    Json j;
    j["radius"] = c.radius;
    j["source"] = c.source;
    j["counts"] = c.counts;
    return j;
}

Json to_json(const NibbleReport& r) {
    Json j;
    j["q"] = r.q;
    j["m"] = r.m;
    j["t"] = r.t;
    j["radius"] = r.radius;
    j["pointwise"] = r.pointwise;
    j["census"] = r.census;
    j["ef"] = r.ef;
    j["first_mismatch"] = r.first_mismatch;
    j["census1"] = to_json(r.census1);
    j["census2"] = to_json(r.census2);
    j["pass"] = r.pass();
    return j;
}

}  // namespace shrub
