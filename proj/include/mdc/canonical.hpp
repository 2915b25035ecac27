#ifndef MDC_CANONICAL_HPP
#define MDC_CANONICAL_HPP

#include <string>
#include <vector>

#include "mdc/graph.hpp"

namespace mdc {

// Canonical representative of an isomorphism class. The optional color vector
// (one int per vertex, e.g. radial levels) is treated as an extra decoration
// that isomorphisms must preserve.
struct CanonicalForm {
    std::string encoding;         // equal iff (colored) graphs are isomorphic
    DecoratedGraph graph;         // relabeled representative, edges sorted
    std::vector<int> vertex_map;  // input vertex -> canonical vertex
    std::vector<int> edge_map;    // input edge -> canonical edge
    std::vector<int> colors;      // canonical per-vertex colors (if colored)
};

CanonicalForm canonical_form(const DecoratedGraph& g,
                             const std::vector<int>* colors = nullptr);

// Full decoration-(and color-)preserving automorphism group, on half-edges.
std::vector<GraphIsomorphism> automorphisms(const DecoratedGraph& g,
                                            const std::vector<int>* colors = nullptr);

bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

}  // namespace mdc

#endif
