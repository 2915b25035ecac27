#ifndef MDC_ALIGNED_HPP
#define MDC_ALIGNED_HPP

#include <utility>
#include <vector>

#include "mdc/graph.hpp"

namespace mdc {

// Core of a genus-1 graph: the unique cycle (loops included), or a single
// weight-1 vertex with no edges.
struct Core {
    std::vector<int> vertices;
    std::vector<int> edges;  // empty when the core is a weight vertex
};
Core core(const DecoratedGraph& g);  // throws std::domain_error if genus != 1

// parent_edge[v] = the first edge on the path from v back toward the core,
// or -1 for core vertices. parent_vertex[v] analogous.
struct TreeOrder {
    std::vector<int> parent_edge;
    std::vector<int> parent_vertex;
    std::vector<char> in_core;
    // v < w in the canonical partial order (core vertices precede all tree
    // vertices; among tree vertices: v lies on the path from w to the core).
    bool less(int v, int w) const;
};
TreeOrder tree_order(const DecoratedGraph& g);

// A genus-1 graph with a radial alignment: levels[v] in {0..k}, surjective,
// level 0 = core vertices, strictly increasing away from the core.
struct AlignedGraph {
    DecoratedGraph base;
    std::vector<int> levels;
    // cached
    std::vector<int> core_edges;
    std::vector<int> core_vertices;
    int length = 0;  // k
    int rad = -1;    // valid when d > 0
    int d_min = 0;

    static AlignedGraph make(DecoratedGraph base, std::vector<int> levels);
};

std::vector<AlignedGraph> enumerate_alignments(const DecoratedGraph& g);

std::pair<int, int> contraction_radius(const AlignedGraph& a);  // (rad, d_min)

// Paper-literal membership predicate d_min > 1; the rad-aware variant also
// admits rad = 0 regardless of d_min (the factorization condition is vacuous
// at radius 0). The category and the complexes always use the paper-literal
// reading; the variant exists so the two can be compared.
enum class NonemptinessCriterion { DMin, RadAware };

bool in_tilde_category(const AlignedGraph& a);
bool stratum_nonempty(const AlignedGraph& a, NonemptinessCriterion c);

// A graph with synthetic bivalent vertices recording a subdivision, together
// with the level map to the path P_k.
struct SubdividedGraph {
    DecoratedGraph graph;
    std::vector<int> levels;
    std::vector<char> synthetic;
    std::vector<int> fiber_size;  // per path edge m = 1..k (index m-1)
};

SubdividedGraph canonical_subdivision(const AlignedGraph& a);
SubdividedGraph subdivision_at_radius(const AlignedGraph& a, int r);

// Removes synthetic bivalent vertices by concatenating their edge pairs.
DecoratedGraph smooth_synthetic(const SubdividedGraph& s);

struct AlignedMove {
    AlignedGraph graph;
    std::vector<int> edge_map;  // old edge -> new edge; contracted -> -1
};
AlignedMove radial_merge(const AlignedGraph& a, int i);
AlignedMove contract_core_edge(const AlignedGraph& a, int core_edge);

std::string to_json(const AlignedGraph& a);
AlignedGraph aligned_from_json(const std::string& text);

}  // namespace mdc

#endif
