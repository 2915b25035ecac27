#include "mdc/flow.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mdc/canonical.hpp"

namespace mdc {

MetricPoint MetricPoint::make(DecoratedGraph g, std::vector<Rational> lengths) {
    if (lengths.size() != static_cast<size_t>(g.num_edges()))
        throw std::invalid_argument("MetricPoint: one length per edge required");
    for (const auto& l : lengths)
        if (l < 0) throw std::invalid_argument("MetricPoint: negative length");
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < g.num_edges(); ++e) {
            if (lengths[e] != 0) continue;
            Contraction c = contract_edge(g, e);
            std::vector<Rational> nl(c.graph.num_edges());
            for (int f = 0; f < g.num_edges(); ++f)
                if (c.edge_map[f] >= 0) nl[c.edge_map[f]] = lengths[f];
            g = std::move(c.graph);
            lengths = std::move(nl);
            changed = true;
            break;
        }
    }
    Rational total = 0;
    for (const auto& l : lengths) total += l;
    if (g.num_edges() > 0) {
        if (total == 0) throw std::invalid_argument("MetricPoint: zero total length");
        for (auto& l : lengths) l /= total;
    }
    MetricPoint p;
    p.graph = std::move(g);
    p.lengths = std::move(lengths);
    return p;
}

DualPoint DualPoint::make(AlignedGraph a, std::vector<Rational> core_lengths,
                          std::vector<Rational> level_lengths) {
    if (!in_tilde_category(a)) throw std::invalid_argument("DualPoint: d_min <= 1");
    if (core_lengths.size() != a.core_edges.size() ||
        level_lengths.size() != static_cast<size_t>(a.length))
        throw std::invalid_argument("DualPoint: wrong number of lengths");
    Rational total = 0;
    for (const auto& l : core_lengths) {
        if (l <= 0) throw std::invalid_argument("DualPoint: nonpositive length");
        total += l;
    }
    for (const auto& l : level_lengths) {
        if (l <= 0) throw std::invalid_argument("DualPoint: nonpositive length");
        total += l;
    }
    if (total != 1) throw std::invalid_argument("DualPoint: total length must be 1");
    DualPoint q;
    q.graph = std::move(a);
    q.core_lengths = std::move(core_lengths);
    q.level_lengths = std::move(level_lengths);
    return q;
}

std::vector<Rational> core_distances(const MetricPoint& p) {
    TreeOrder to = tree_order(p.graph);
    int nv = p.graph.num_vertices();
    std::vector<Rational> dist(nv, 0);
    std::vector<char> done(nv, 0);
    for (int v = 0; v < nv; ++v)
        if (to.in_core[v]) done[v] = 1;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v = 0; v < nv; ++v) {
            if (done[v] || !done[to.parent_vertex[v]]) continue;
            dist[v] = dist[to.parent_vertex[v]] + p.lengths[to.parent_edge[v]];
            done[v] = 1;
            progress = true;
        }
    }
    return dist;
}

AlignedGraph canonical_alignment(const MetricPoint& p) {
    std::vector<Rational> dist = core_distances(p);
    TreeOrder to = tree_order(p.graph);
    std::set<Rational> values;
    for (int v = 0; v < p.graph.num_vertices(); ++v)
        if (!to.in_core[v]) values.insert(dist[v]);
    std::vector<Rational> sorted(values.begin(), values.end());
    std::vector<int> levels(p.graph.num_vertices(), 0);
    for (int v = 0; v < p.graph.num_vertices(); ++v) {
        if (to.in_core[v]) continue;
        auto it = std::lower_bound(sorted.begin(), sorted.end(), dist[v]);
        levels[v] = static_cast<int>(it - sorted.begin()) + 1;
    }
    return AlignedGraph::make(p.graph, std::move(levels));
}

bool in_Z(const MetricPoint& p) {
    if (genus(p.graph) != 1 || p.graph.d <= 0)
        throw std::domain_error("in_Z: requires genus 1 and d > 0");
    return canonical_alignment(p).d_min > 1;
}

namespace {

SproutFlow sprout_flow_raw(const DecoratedGraph& g, const std::vector<Rational>& lengths,
                           const Rational& t) {
    if (t < 0 || t > 1) throw std::invalid_argument("flow: t must lie in [0,1]");
    int d = g.d;
    Sprouted s = sprout_with_map(g);
    SproutFlow out;
    out.graph = std::move(s.graph);
    out.lengths = lengths;
    out.lengths.resize(out.graph.num_edges(), Rational(0));
    out.is_one_end.assign(out.graph.num_edges(), 0);
    std::vector<int> ones = one_ends(out.graph);
    for (int e : ones) out.is_one_end[e] = 1;
    if (static_cast<int>(ones.size()) != d)
        throw std::logic_error("flow: sprouted graph does not have d 1-ends");
    Rational omt = Rational(1) - t;
    for (int e = 0; e < out.graph.num_edges(); ++e) {
        out.lengths[e] *= omt;
        if (out.is_one_end[e]) out.lengths[e] += t / d;
    }
    return out;
}

void check_flow_domain(const DecoratedGraph& g) {
    if (g.d <= 0) throw std::domain_error("flow: requires d > 0");
    if (g.g == 0 && g.n + g.d < 3)
        throw std::invalid_argument(
            "flow: refused for g=0 with n+d<3; the retract target G^sp over the "
            "empty graph is unstable in this regime");
}

}  // namespace

SproutFlow flow_on_sprout(const MetricPoint& p, const Rational& t) {
    check_flow_domain(p.graph);
    return sprout_flow_raw(p.graph, p.lengths, t);
}

MetricPoint flow_raw(const DecoratedGraph& g, std::vector<Rational> lengths,
                     const Rational& t) {
    check_flow_domain(g);
    SproutFlow s = sprout_flow_raw(g, lengths, t);
    return MetricPoint::make(std::move(s.graph), std::move(s.lengths));
}

MetricPoint flow(const MetricPoint& p, const Rational& t) {
    return flow_raw(p.graph, p.lengths, t);
}

MetricPoint embed_dual(const DualPoint& q) {
    const AlignedGraph& a = q.graph;
    SubdividedGraph sub = canonical_subdivision(a);
    std::vector<char> is_core(a.base.num_edges(), 0);
    std::map<int, int> core_pos;
    for (size_t i = 0; i < a.core_edges.size(); ++i) {
        is_core[a.core_edges[i]] = 1;
        core_pos[a.core_edges[i]] = static_cast<int>(i);
    }
    std::vector<Rational> lengths(a.base.num_edges());
    for (int e = 0; e < a.base.num_edges(); ++e) {
        if (is_core[e]) {
            lengths[e] = q.core_lengths[core_pos[e]];
            continue;
        }
        auto [u, v] = a.base.edges[e];
        int i = std::min(a.levels[u], a.levels[v]);
        int j = std::max(a.levels[u], a.levels[v]);
        Rational l = 0;
        for (int m = i + 1; m <= j; ++m)
            l += q.level_lengths[m - 1] / sub.fiber_size[m - 1];
        lengths[e] = l;
    }
    return MetricPoint::make(a.base, std::move(lengths));
}

DualPoint project_to_dual(const MetricPoint& p) {
    if (!in_Z(p)) throw std::invalid_argument("project_to_dual: point not in Z");
    AlignedGraph a = canonical_alignment(p);
    std::vector<Rational> dist = core_distances(p);
    std::vector<Rational> level_dist(a.length + 1, 0);
    for (int v = 0; v < p.graph.num_vertices(); ++v)
        if (a.levels[v] > 0) level_dist[a.levels[v]] = dist[v];
    SubdividedGraph sub = canonical_subdivision(a);
    std::vector<Rational> level_lengths(a.length);
    for (int m = 1; m <= a.length; ++m)
        level_lengths[m - 1] = (level_dist[m] - level_dist[m - 1]) * sub.fiber_size[m - 1];
    std::vector<Rational> core_lengths;
    for (int e : a.core_edges) core_lengths.push_back(p.lengths[e]);
    return DualPoint::make(std::move(a), std::move(core_lengths), std::move(level_lengths));
}

bool metric_points_equal(const MetricPoint& a, const MetricPoint& b) {
    CanonicalForm ca = canonical_form(a.graph);
    CanonicalForm cb = canonical_form(b.graph);
    if (ca.encoding != cb.encoding) return false;
    int ne = a.graph.num_edges();
    std::vector<Rational> la(ne), lb(ne);
    for (int e = 0; e < ne; ++e) la[ca.edge_map[e]] = a.lengths[e];
    for (int e = 0; e < ne; ++e) lb[cb.edge_map[e]] = b.lengths[e];
    for (const auto& iso : automorphisms(ca.graph)) {
        std::vector<int> emap = iso.edge_map();
        bool ok = true;
        for (int e = 0; e < ne && ok; ++e)
            if (la[e] != lb[emap[e]]) ok = false;
        if (ok) return true;
    }
    return false;
}

bool dual_points_equal(const DualPoint& a, const DualPoint& b) {
    CanonicalForm ca = canonical_form(a.graph.base, &a.graph.levels);
    CanonicalForm cb = canonical_form(b.graph.base, &b.graph.levels);
    if (ca.encoding != cb.encoding) return false;
    if (a.level_lengths != b.level_lengths) return false;
    // Transport core lengths to the canonical representative.
    auto canon_core = [](const CanonicalForm& cf, const AlignedGraph& g,
                         const std::vector<Rational>& cl) {
        std::map<int, Rational> out;
        for (size_t i = 0; i < g.core_edges.size(); ++i)
            out[cf.edge_map[g.core_edges[i]]] = cl[i];
        return out;
    };
    std::map<int, Rational> la = canon_core(ca, a.graph, a.core_lengths);
    std::map<int, Rational> lb = canon_core(cb, b.graph, b.core_lengths);
    for (const auto& iso : automorphisms(ca.graph, &ca.colors)) {
        std::vector<int> emap = iso.edge_map();
        bool ok = true;
        for (const auto& [e, l] : la)
            if (lb.at(emap[e]) != l) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::string to_json(const MetricPoint& p) {
    nlohmann::ordered_json j;
    j["graph"] = nlohmann::ordered_json::parse(to_json(p.graph));
    nlohmann::ordered_json jl = nlohmann::ordered_json::object();
    for (int e = 0; e < p.graph.num_edges(); ++e)
        jl[std::to_string(e)] = to_string(p.lengths[e]);
    j["lengths"] = std::move(jl);
    return j.dump();
}

MetricPoint metric_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DecoratedGraph g = graph_from_json(j.at("graph").dump());
    std::vector<Rational> lengths(g.num_edges(), Rational(0));
    for (const auto& [key, val] : j.at("lengths").items()) {
        int e = std::stoi(key);
        if (e < 0 || e >= g.num_edges())
            throw std::invalid_argument("metric point: edge id out of range");
        lengths[e] = parse_rational(val.get<std::string>());
    }
    return MetricPoint::make(std::move(g), std::move(lengths));
}

std::string to_json(const DualPoint& q) {
    nlohmann::ordered_json j;
    j["graph"] = nlohmann::ordered_json::parse(to_json(q.graph));
    nlohmann::ordered_json jl = nlohmann::ordered_json::object();
    for (size_t i = 0; i < q.graph.core_edges.size(); ++i)
        jl["e" + std::to_string(q.graph.core_edges[i])] = to_string(q.core_lengths[i]);
    for (int m = 1; m <= q.graph.length; ++m)
        jl["r" + std::to_string(m)] = to_string(q.level_lengths[m - 1]);
    j["lengths"] = std::move(jl);
    return j.dump();
}

DualPoint dual_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    AlignedGraph a = aligned_from_json(j.at("graph").dump());
    std::vector<Rational> core_lengths(a.core_edges.size());
    std::vector<Rational> level_lengths(a.length);
    for (const auto& [key, val] : j.at("lengths").items()) {
        Rational l = parse_rational(val.get<std::string>());
        if (key.size() < 2 || (key[0] != 'e' && key[0] != 'r'))
            throw std::invalid_argument("dual point: bad label " + key);
        int id = std::stoi(key.substr(1));
        if (key[0] == 'e') {
            auto it = std::find(a.core_edges.begin(), a.core_edges.end(), id);
            if (it == a.core_edges.end())
                throw std::invalid_argument("dual point: not a core edge: " + key);
            core_lengths[it - a.core_edges.begin()] = l;
        } else {
            if (id < 1 || id > a.length)
                throw std::invalid_argument("dual point: level out of range: " + key);
            level_lengths[id - 1] = l;
        }
    }
    return DualPoint::make(std::move(a), std::move(core_lengths), std::move(level_lengths));
}

}  // namespace mdc
