#ifndef MDC_ENUMERATE_HPP
#define MDC_ENUMERATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdc/aligned.hpp"
#include "mdc/graph.hpp"

namespace mdc {

struct EnumerationRequest {
    int g = 0;
    int n = 0;
    int d = 0;
    std::optional<int> max_edges;  // override of the derived bound
    bool use_cache = true;
};

// Derived bound: every stable (g,n,d)-graph has at most 2d + n + 3g - 2 edges.
// (Summing the stability charge 2w(v)-2+val(v)+|m^-1(v)| over vertices gives
// 2g+n-2; each delta-positive vertex can contribute as little as -1, so
// |V| <= 2d+n+2g-2, and |E| = |V|-1+b1 with b1 <= g.)
int default_edge_bound(int g, int n, int d);

struct GraphCatalog {
    int g = 0, n = 0, d = 0;
    int edge_bound = 0;
    DecoratedGraph interior;  // the edgeless graph (dimension -1)
    // canonical encoding -> canonical representative; boundary classes only
    std::map<std::string, DecoratedGraph> classes;

    std::vector<const DecoratedGraph*> with_edge_count(int e) const;
    int max_edge_count() const;
};

GraphCatalog stable_graphs(const EnumerationRequest& req);

// All isomorphism classes of stable radially aligned genus-1 (n,d)-graphs
// admitted by the nonemptiness criterion (default: paper-literal d_min > 1),
// each with at least one label (|C| + k >= 1). Empty (with a warning on
// stderr) when d < 2 and the criterion is the default.
std::vector<AlignedGraph> aligned_graphs(
    int n, int d, NonemptinessCriterion crit = NonemptinessCriterion::DMin);

std::string catalog_to_json(const GraphCatalog& cat);
GraphCatalog catalog_from_json(const std::string& text);

}  // namespace mdc

#endif
