#ifndef MDC_GRAPH_HPP
#define MDC_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

namespace mdc {

struct VertexData {
    int w = 0;                  // genus (weight) function
    int delta = 0;              // degree function
    std::vector<int> marks;     // sorted subset of {1..n}
};

// A connected multigraph with loops, decorated per vertex by weight, degree
// and markings. Edge e owns half-edges 2e (anchored at edges[e].first) and
// 2e+1 (anchored at edges[e].second); loops have first == second.
struct DecoratedGraph {
    int g = 0;  // genus target
    int n = 0;  // number of markings
    int d = 0;  // total degree target
    std::vector<VertexData> vertices;
    std::vector<std::pair<int, int>> edges;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    bool is_loop(int e) const { return edges[e].first == edges[e].second; }
    // Loops contribute 2.
    int valence(int v) const;
    int half_edge_vertex(int h) const {
        const auto& e = edges[h / 2];
        return (h % 2 == 0) ? e.first : e.second;
    }
    bool is_connected() const;
    // Checks connectedness, b1 + sum w = g, sum delta = d, markings = {1..n}
    // each used once. Throws std::invalid_argument on violation.
    void validate() const;
};

// A decoration-preserving isomorphism, tracked on half-edges so loop flips
// are visible.
struct GraphIsomorphism {
    std::vector<int> vertex_map;     // source vertex -> target vertex
    std::vector<int> half_edge_map;  // source half-edge -> target half-edge

    std::vector<int> edge_map() const;
    GraphIsomorphism compose(const GraphIsomorphism& then) const;
    GraphIsomorphism inverse() const;
    bool operator==(const GraphIsomorphism&) const = default;
};

// Parity of a permutation given as image vector; +1 or -1.
int permutation_sign(const std::vector<int>& perm);

int genus(const DecoratedGraph& g);
bool is_stable(const DecoratedGraph& g);

struct Contraction {
    DecoratedGraph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> edge_map;    // old edge -> new edge; contracted edge -> -1
};
Contraction contract_edge(const DecoratedGraph& g, int e);

bool is_one_end_vertex(const DecoratedGraph& g, int v);
std::vector<int> one_ends(const DecoratedGraph& g);

struct Sprouted {
    DecoratedGraph graph;  // old vertices and edges keep their indices
    int first_new_edge;    // new 1-end edges are [first_new_edge, num_edges)
};
Sprouted sprout_with_map(const DecoratedGraph& g);
DecoratedGraph sprout(const DecoratedGraph& g);

// The unique edgeless (g,n,d)-graph: one vertex carrying everything.
DecoratedGraph interior_graph(int g, int n, int d);

std::string to_json(const DecoratedGraph& g);
DecoratedGraph graph_from_json(const std::string& text);
std::string to_dot(const DecoratedGraph& g, const std::vector<int>* levels = nullptr);

}  // namespace mdc

#endif
