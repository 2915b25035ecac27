#include "mdc/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mdc {

int DecoratedGraph::valence(int v) const {
    int val = 0;
    for (const auto& e : edges) {
        if (e.first == v) ++val;
        if (e.second == v) ++val;
    }
    return val;
}

bool DecoratedGraph::is_connected() const {
    int nv = num_vertices();
    if (nv == 0) return false;
    std::vector<char> seen(nv, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : edges) {
            if (e.first == v && !seen[e.second]) seen[e.second] = 1, stack.push_back(e.second);
            if (e.second == v && !seen[e.first]) seen[e.first] = 1, stack.push_back(e.first);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

void DecoratedGraph::validate() const {
    if (!is_connected()) throw std::invalid_argument("graph is not connected");
    for (const auto& e : edges)
        if (e.first < 0 || e.first >= num_vertices() || e.second < 0 ||
            e.second >= num_vertices())
            throw std::invalid_argument("edge endpoint out of range");
    if (genus(*this) != g) throw std::invalid_argument("b1 + sum(w) != g");
    int total_delta = 0;
    for (const auto& v : vertices) total_delta += v.delta;
    if (total_delta != d) throw std::invalid_argument("sum(delta) != d");
    std::set<int> marks;
    for (const auto& v : vertices)
        for (int m : v.marks) {
            if (m < 1 || m > n) throw std::invalid_argument("marking out of range");
            if (!marks.insert(m).second)
                throw std::invalid_argument("marking used twice");
        }
    if (static_cast<int>(marks.size()) != n)
        throw std::invalid_argument("missing marking");
}

std::vector<int> GraphIsomorphism::edge_map() const {
    std::vector<int> em(half_edge_map.size() / 2);
    for (size_t e = 0; e < em.size(); ++e) em[e] = half_edge_map[2 * e] / 2;
    return em;
}

GraphIsomorphism GraphIsomorphism::compose(const GraphIsomorphism& then) const {
    GraphIsomorphism out;
    out.vertex_map.resize(vertex_map.size());
    out.half_edge_map.resize(half_edge_map.size());
    for (size_t v = 0; v < vertex_map.size(); ++v)
        out.vertex_map[v] = then.vertex_map[vertex_map[v]];
    for (size_t h = 0; h < half_edge_map.size(); ++h)
        out.half_edge_map[h] = then.half_edge_map[half_edge_map[h]];
    return out;
}

GraphIsomorphism GraphIsomorphism::inverse() const {
    GraphIsomorphism out;
    out.vertex_map.resize(vertex_map.size());
    out.half_edge_map.resize(half_edge_map.size());
    for (size_t v = 0; v < vertex_map.size(); ++v) out.vertex_map[vertex_map[v]] = static_cast<int>(v);
    for (size_t h = 0; h < half_edge_map.size(); ++h)
        out.half_edge_map[half_edge_map[h]] = static_cast<int>(h);
    return out;
}

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    std::vector<char> seen(perm.size(), 0);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = perm[j]) seen[j] = 1, ++len;
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

int genus(const DecoratedGraph& g) {
    if (!g.is_connected()) throw std::invalid_argument("genus: graph not connected");
    int b1 = g.num_edges() - g.num_vertices() + 1;
    int wsum = 0;
    for (const auto& v : g.vertices) wsum += v.w;
    return b1 + wsum;
}

bool is_stable(const DecoratedGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& vd = g.vertices[v];
        if (vd.delta != 0) continue;
        if (2 * vd.w - 2 + g.valence(v) + static_cast<int>(vd.marks.size()) <= 0)
            return false;
    }
    return true;
}

Contraction contract_edge(const DecoratedGraph& g, int e) {
    if (e < 0 || e >= g.num_edges()) throw std::out_of_range("contract_edge: no such edge");
    Contraction out;
    out.graph.g = g.g;
    out.graph.n = g.n;
    out.graph.d = g.d;
    int nv = g.num_vertices();
    out.vertex_map.resize(nv);
    auto [a, b] = g.edges[e];
    if (a == b) {
        // Loop: delete it, bump w to preserve genus.
        out.graph.vertices = g.vertices;
        out.graph.vertices[a].w += 1;
        for (int v = 0; v < nv; ++v) out.vertex_map[v] = v;
    } else {
        if (a > b) std::swap(a, b);
        // Merge b into a; vertices after b shift down.
        for (int v = 0; v < nv; ++v)
            out.vertex_map[v] = (v == b) ? a : (v > b ? v - 1 : v);
        out.graph.vertices.reserve(nv - 1);
        for (int v = 0; v < nv; ++v) {
            if (v == b) continue;
            out.graph.vertices.push_back(g.vertices[v]);
        }
        auto& merged = out.graph.vertices[a];
        merged.w += g.vertices[b].w;
        merged.delta += g.vertices[b].delta;
        merged.marks.insert(merged.marks.end(), g.vertices[b].marks.begin(),
                            g.vertices[b].marks.end());
        std::sort(merged.marks.begin(), merged.marks.end());
    }
    out.edge_map.assign(g.num_edges(), -1);
    for (int f = 0; f < g.num_edges(); ++f) {
        if (f == e) continue;
        out.edge_map[f] = out.graph.num_edges();
        out.graph.edges.emplace_back(out.vertex_map[g.edges[f].first],
                                     out.vertex_map[g.edges[f].second]);
    }
    return out;
}

bool is_one_end_vertex(const DecoratedGraph& g, int v) {
    const auto& vd = g.vertices[v];
    return vd.w == 0 && vd.delta == 1 && vd.marks.empty() && g.valence(v) == 1;
}

std::vector<int> one_ends(const DecoratedGraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (g.is_loop(e)) continue;
        if (is_one_end_vertex(g, g.edges[e].first) ||
            is_one_end_vertex(g, g.edges[e].second))
            out.push_back(e);
    }
    return out;
}

Sprouted sprout_with_map(const DecoratedGraph& g) {
    Sprouted out;
    out.graph = g;
    out.first_new_edge = g.num_edges();
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (is_one_end_vertex(g, v)) continue;
        int dv = g.vertices[v].delta;
        if (dv == 0) continue;
        out.graph.vertices[v].delta = 0;
        for (int i = 0; i < dv; ++i) {
            int leaf = out.graph.num_vertices();
            VertexData leaf_data;
            leaf_data.delta = 1;
            out.graph.vertices.push_back(leaf_data);
            out.graph.edges.emplace_back(v, leaf);
        }
    }
    return out;
}

DecoratedGraph sprout(const DecoratedGraph& g) { return sprout_with_map(g).graph; }

DecoratedGraph interior_graph(int g, int n, int d) {
    DecoratedGraph out;
    out.g = g;
    out.n = n;
    out.d = d;
    VertexData v;
    v.w = g;
    v.delta = d;
    for (int m = 1; m <= n; ++m) v.marks.push_back(m);
    out.vertices.push_back(v);
    return out;
}

std::string to_json(const DecoratedGraph& g) {
    nlohmann::ordered_json j;
    j["g"] = g.g;
    j["n"] = g.n;
    j["d"] = g.d;
    j["vertices"] = nlohmann::ordered_json::array();
    for (int v = 0; v < g.num_vertices(); ++v) {
        nlohmann::ordered_json jv;
        jv["id"] = v;
        jv["w"] = g.vertices[v].w;
        jv["delta"] = g.vertices[v].delta;
        jv["marks"] = g.vertices[v].marks;
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) j["edges"].push_back({e.first, e.second});
    return j.dump();
}

DecoratedGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DecoratedGraph g;
    g.g = j.at("g");
    g.n = j.at("n");
    g.d = j.at("d");
    g.vertices.resize(j.at("vertices").size());
    for (const auto& jv : j.at("vertices")) {
        int id = jv.at("id");
        if (id < 0 || id >= g.num_vertices())
            throw std::invalid_argument("vertex id out of range");
        g.vertices[id].w = jv.at("w");
        g.vertices[id].delta = jv.at("delta");
        g.vertices[id].marks = jv.at("marks").get<std::vector<int>>();
        std::sort(g.vertices[id].marks.begin(), g.vertices[id].marks.end());
    }
    for (const auto& je : j.at("edges"))
        g.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    g.validate();
    return g;
}

std::string to_dot(const DecoratedGraph& g, const std::vector<int>* levels) {
    std::ostringstream os;
    os << "graph G {\n";
    if (levels) {
        int k = *std::max_element(levels->begin(), levels->end());
        for (int lvl = 0; lvl <= k; ++lvl) {
            os << "  subgraph cluster_level" << lvl << " {\n"
               << "    label=\"level " << lvl << "\"; color=blue;\n";
            for (int v = 0; v < g.num_vertices(); ++v)
                if ((*levels)[v] == lvl) os << "    v" << v << ";\n";
            os << "  }\n";
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& vd = g.vertices[v];
        os << "  v" << v << " [label=\"w=" << vd.w << " d=" << vd.delta;
        if (!vd.marks.empty()) {
            os << " m={";
            for (size_t i = 0; i < vd.marks.size(); ++i)
                os << (i ? "," : "") << vd.marks[i];
            os << "}";
        }
        os << "\"];\n";
    }
    for (const auto& e : g.edges) os << "  v" << e.first << " -- v" << e.second << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace mdc
