#ifndef MDC_FLOW_HPP
#define MDC_FLOW_HPP

#include <string>
#include <vector>

#include "mdc/aligned.hpp"
#include "mdc/graph.hpp"
#include "mdc/rational.hpp"

namespace mdc {

// A point of the virtual dual complex: a stable graph with strictly positive
// edge lengths summing to 1.
struct MetricPoint {
    DecoratedGraph graph;
    std::vector<Rational> lengths;  // per edge

    // Contracts zero-length edges and renormalizes the total to 1.
    static MetricPoint make(DecoratedGraph g, std::vector<Rational> lengths);
};

// A point of the genus-1 dual complex: a radially aligned graph (d_min > 1)
// with positive lengths on its core edges and path edges, total 1.
struct DualPoint {
    AlignedGraph graph;
    std::vector<Rational> core_lengths;   // indexed like graph.core_edges
    std::vector<Rational> level_lengths;  // per path edge 1..k

    static DualPoint make(AlignedGraph a, std::vector<Rational> core_lengths,
                          std::vector<Rational> level_lengths);
};

// Distance of every vertex from the core along the tree (0 on the core).
std::vector<Rational> core_distances(const MetricPoint& p);

// Levels = ranks of the distinct core distances.
AlignedGraph canonical_alignment(const MetricPoint& p);

bool in_Z(const MetricPoint& p);

// The sprouted graph with the time-t lengths, before contraction of zero
// edges: l_t(e) = (1-t)l(e) + t/d on 1-ends, (1-t)l(e) otherwise.
struct SproutFlow {
    DecoratedGraph graph;  // G^sp
    std::vector<Rational> lengths;
    std::vector<char> is_one_end;
};
SproutFlow flow_on_sprout(const MetricPoint& p, const Rational& t);

MetricPoint flow(const MetricPoint& p, const Rational& t);

// Flow accepting zero-length edges on the input graph, used for gluing
// checks across face inclusions (the metric of a face extends by zero).
MetricPoint flow_raw(const DecoratedGraph& g, std::vector<Rational> lengths,
                     const Rational& t);

MetricPoint embed_dual(const DualPoint& q);
DualPoint project_to_dual(const MetricPoint& p);

// Equality as points of the complex: isomorphism matching lengths.
bool metric_points_equal(const MetricPoint& a, const MetricPoint& b);
bool dual_points_equal(const DualPoint& a, const DualPoint& b);

std::string to_json(const MetricPoint& p);
MetricPoint metric_from_json(const std::string& text);
std::string to_json(const DualPoint& q);
DualPoint dual_from_json(const std::string& text);

}  // namespace mdc

#endif
