#include "mdc/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mdc/canonical.hpp"

namespace mdc {

int default_edge_bound(int g, int n, int d) { return 2 * d + n + 3 * g - 2; }

std::vector<const DecoratedGraph*> GraphCatalog::with_edge_count(int e) const {
    std::vector<const DecoratedGraph*> out;
    for (const auto& [enc, g] : classes)
        if (g.num_edges() == e) out.push_back(&g);
    return out;
}

int GraphCatalog::max_edge_count() const {
    int m = 0;
    for (const auto& [enc, g] : classes) m = std::max(m, g.num_edges());
    return m;
}

namespace {

DecoratedGraph tree_from_pruefer(int nv, const std::vector<int>& code) {
    DecoratedGraph g;
    g.vertices.resize(nv);
    std::vector<int> degree(nv, 1);
    for (int c : code) ++degree[c];
    std::set<int> leaves;
    for (int v = 0; v < nv; ++v)
        if (degree[v] == 1) leaves.insert(v);
    for (int c : code) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        g.edges.emplace_back(leaf, c);
        if (--degree[c] == 1) leaves.insert(c);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    g.edges.emplace_back(a, b);
    return g;
}

struct Builder {
    int g, n, d, edge_bound;
    std::map<std::string, DecoratedGraph>* classes;

    void insert(DecoratedGraph graph) {
        graph.g = g;
        graph.n = n;
        graph.d = d;
        if (!is_stable(graph)) return;
        CanonicalForm cf = canonical_form(graph);
        classes->emplace(cf.encoding, cf.graph);
    }

    // Distribute the degree function: forced vertices get >= 1.
    void enumerate_delta(DecoratedGraph& graph, const std::vector<char>& forced,
                         int v, int remaining) {
        int nv = graph.num_vertices();
        if (v == nv) {
            if (remaining == 0) insert(graph);
            return;
        }
        int lo = forced[v] ? 1 : 0;
        for (int dv = lo; dv <= remaining; ++dv) {
            graph.vertices[v].delta = dv;
            enumerate_delta(graph, forced, v + 1, remaining - dv);
            graph.vertices[v].delta = 0;
        }
    }

    // base: undecorated connected multigraph with weights already placed.
    void decorate(DecoratedGraph base) {
        int nv = base.num_vertices();
        std::vector<int> val(nv);
        for (int v = 0; v < nv; ++v) val[v] = base.valence(v);
        // Cheap pre-check before the marking loop: a vertex with
        // 2w + val <= 2 must end up with delta >= 1 or a marking.
        int deficient = 0;
        for (int v = 0; v < nv; ++v)
            if (2 * base.vertices[v].w + val[v] <= 2) ++deficient;
        if (deficient > d + n) return;
        std::vector<int> marks(n, 0);
        while (true) {
            for (int v = 0; v < nv; ++v) base.vertices[v].marks.clear();
            for (int m = 0; m < n; ++m) base.vertices[marks[m]].marks.push_back(m + 1);
            std::vector<char> forced(nv, 0);
            int nforced = 0;
            for (int v = 0; v < nv; ++v) {
                const auto& vd = base.vertices[v];
                if (2 * vd.w - 2 + val[v] + static_cast<int>(vd.marks.size()) <= 0)
                    forced[v] = 1, ++nforced;
            }
            if (nforced <= d) enumerate_delta(base, forced, 0, d);
            // next marking assignment
            int m = 0;
            while (m < n && ++marks[m] == nv) marks[m++] = 0;
            if (m == n) break;
        }
    }

    // Enumerate Pruefer codes with a branch-vertex feasibility prune.
    void trees(int nv, int b1) {
        // Vertices with tree-degree <= 2 need delta, a mark, weight, or an
        // endpoint of the extra edge; bound how many can be rescued.
        int allowed_low = d + n + (g - b1 >= 1 ? 1 : 0) + (b1 == 1 ? 2 : 0);
        int need_branch = nv - allowed_low;
        int len = nv - 2;
        std::vector<int> code(len, 0), count(nv, 0);
        auto emit = [&]() {
            DecoratedGraph tree = tree_from_pruefer(nv, code);
            if (b1 == 0) {
                if (g == 1) {
                    for (int v = 0; v < nv; ++v) {
                        DecoratedGraph gg = tree;
                        gg.vertices[v].w = 1;
                        decorate(std::move(gg));
                    }
                } else {
                    decorate(tree);
                }
            } else {
                if (tree.num_edges() + 1 > edge_bound) return;
                for (int a = 0; a < nv; ++a)
                    for (int b = a; b < nv; ++b) {
                        DecoratedGraph gg = tree;
                        gg.edges.emplace_back(a, b);
                        decorate(std::move(gg));
                    }
            }
        };
        auto rec = [&](auto&& self, int pos) -> void {
            if (need_branch > 0) {
                int branch = 0, once = 0;
                for (int v = 0; v < nv; ++v) {
                    if (count[v] >= 2) ++branch;
                    else if (count[v] == 1) ++once;
                }
                int rem = len - pos;
                int from_once = std::min(once, rem);
                int potential = branch + from_once + (rem - from_once) / 2;
                if (potential < need_branch) return;
            }
            if (pos == len) {
                emit();
                return;
            }
            for (int v = 0; v < nv; ++v) {
                code[pos] = v;
                ++count[v];
                self(self, pos + 1);
                --count[v];
            }
        };
        rec(rec, 0);
    }
};

std::filesystem::path cache_path(int g, int n, int d, int bound) {
    const char* dir = std::getenv("MDC_CACHE_DIR");
    if (!dir || !*dir) return {};
    std::ostringstream name;
    name << "catalog_g" << g << "_n" << n << "_d" << d << "_E" << bound << "_v1.json";
    return std::filesystem::path(dir) / name.str();
}

}  // namespace

GraphCatalog stable_graphs(const EnumerationRequest& req) {
    if (req.g != 0 && req.g != 1)
        throw std::invalid_argument("stable_graphs: only genus 0 and 1 supported");
    if (req.n < 0 || req.d < 0) throw std::invalid_argument("stable_graphs: bad request");
    int bound = req.max_edges.value_or(default_edge_bound(req.g, req.n, req.d));
    if (bound < 0) bound = 0;

    auto path = cache_path(req.g, req.n, req.d, bound);
    if (req.use_cache && !path.empty() && std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            return catalog_from_json(ss.str());
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring unreadable cache " << path << ": " << e.what()
                      << "\n";
        }
    }

    GraphCatalog cat;
    cat.g = req.g;
    cat.n = req.n;
    cat.d = req.d;
    cat.edge_bound = bound;
    cat.interior = interior_graph(req.g, req.n, req.d);

    Builder b{req.g, req.n, req.d, bound, &cat.classes};
    // Single-vertex boundary classes: loops carry the genus.
    for (int loops = 1; loops <= req.g && loops <= bound; ++loops) {
        DecoratedGraph gg = interior_graph(req.g, req.n, req.d);
        gg.vertices[0].w = req.g - loops;
        for (int l = 0; l < loops; ++l) gg.edges.emplace_back(0, 0);
        b.insert(std::move(gg));
    }
    for (int b1 = 0; b1 <= req.g; ++b1) {
        int vmax = bound + 1 - b1;
        for (int nv = 2; nv <= vmax; ++nv) b.trees(nv, b1);
    }

    if (req.use_cache && !path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream out(path);
        out << catalog_to_json(cat);
    }
    return cat;
}

std::vector<AlignedGraph> aligned_graphs(int n, int d, NonemptinessCriterion crit) {
    if (d < 2 && crit == NonemptinessCriterion::DMin) {
        std::cerr << "warning: aligned_graphs(n=" << n << ", d=" << d
                  << "): the category is empty for d < 2 (d_min <= d <= 1)\n";
        return {};
    }
    if (d < 1) {
        std::cerr << "warning: aligned_graphs requires d >= 1\n";
        return {};
    }
    EnumerationRequest req;
    req.g = 1;
    req.n = n;
    req.d = d;
    GraphCatalog cat = stable_graphs(req);
    std::map<std::string, AlignedGraph> seen;
    for (const auto& [enc, graph] : cat.classes) {
        for (const AlignedGraph& a : enumerate_alignments(graph)) {
            if (!stratum_nonempty(a, crit)) continue;
            CanonicalForm cf = canonical_form(a.base, &a.levels);
            if (seen.count(cf.encoding)) continue;
            seen.emplace(cf.encoding, AlignedGraph::make(cf.graph, cf.colors));
        }
    }
    std::vector<AlignedGraph> out;
    out.reserve(seen.size());
    for (auto& [enc, a] : seen) out.push_back(std::move(a));
    return out;
}

std::string catalog_to_json(const GraphCatalog& cat) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["g"] = cat.g;
    j["n"] = cat.n;
    j["d"] = cat.d;
    j["edge_bound"] = cat.edge_bound;
    j["interior"] = nlohmann::ordered_json::parse(to_json(cat.interior));
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& [enc, g] : cat.classes)
        j["classes"].push_back(nlohmann::ordered_json::parse(to_json(g)));
    return j.dump();
}

GraphCatalog catalog_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("schema") != 1) throw std::invalid_argument("catalog: unknown schema");
    GraphCatalog cat;
    cat.g = j.at("g");
    cat.n = j.at("n");
    cat.d = j.at("d");
    cat.edge_bound = j.at("edge_bound");
    cat.interior = graph_from_json(j.at("interior").dump());
    for (const auto& jg : j.at("classes")) {
        DecoratedGraph g = graph_from_json(jg.dump());
        CanonicalForm cf = canonical_form(g);
        cat.classes.emplace(cf.encoding, cf.graph);
    }
    return cat;
}

}  // namespace mdc
