#include "mdc/aligned.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace mdc {

Core core(const DecoratedGraph& g) {
    if (genus(g) != 1) throw std::domain_error("core: graph must have genus 1");
    Core out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.vertices[v].w == 1) {
            out.vertices.push_back(v);
            return out;  // weight vertex, no core edges
        }
    }
    // b1 = 1: strip leaves until only the cycle remains.
    std::vector<char> valive(g.num_vertices(), 1), ealive(g.num_edges(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (!valive[v]) continue;
            int deg = 0, last = -1;
            for (int e = 0; e < g.num_edges(); ++e) {
                if (!ealive[e]) continue;
                if (g.edges[e].first == v) ++deg, last = e;
                if (g.edges[e].second == v) ++deg, last = e;
            }
            if (deg == 1) {
                valive[v] = 0;
                ealive[last] = 0;
                changed = true;
            }
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (valive[v]) out.vertices.push_back(v);
    for (int e = 0; e < g.num_edges(); ++e)
        if (ealive[e]) out.edges.push_back(e);
    return out;
}

TreeOrder tree_order(const DecoratedGraph& g) {
    Core c = core(g);
    TreeOrder out;
    int nv = g.num_vertices();
    out.parent_edge.assign(nv, -1);
    out.parent_vertex.assign(nv, -1);
    out.in_core.assign(nv, 0);
    for (int v : c.vertices) out.in_core[v] = 1;
    std::vector<char> core_edge(g.num_edges(), 0);
    for (int e : c.edges) core_edge[e] = 1;
    std::vector<int> frontier = c.vertices;
    std::vector<char> seen(nv, 0);
    for (int v : c.vertices) seen[v] = 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int e = 0; e < g.num_edges(); ++e) {
                if (core_edge[e]) continue;
                int u = -1;
                if (g.edges[e].first == v) u = g.edges[e].second;
                else if (g.edges[e].second == v) u = g.edges[e].first;
                if (u < 0 || seen[u]) continue;
                seen[u] = 1;
                out.parent_edge[u] = e;
                out.parent_vertex[u] = v;
                next.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

bool TreeOrder::less(int v, int w) const {
    if (in_core[w]) return false;
    if (in_core[v]) return true;
    for (int u = parent_vertex[w]; u >= 0; u = parent_vertex[u])
        if (u == v) return true;
    return false;
}

AlignedGraph AlignedGraph::make(DecoratedGraph base, std::vector<int> levels) {
    AlignedGraph a;
    Core c = core(base);
    if (levels.size() != static_cast<size_t>(base.num_vertices()))
        throw std::invalid_argument("alignment: one level per vertex required");
    a.core_vertices = c.vertices;
    a.core_edges = c.edges;
    int k = *std::max_element(levels.begin(), levels.end());
    std::vector<char> hit(k + 1, 0);
    std::vector<char> in_core(base.num_vertices(), 0);
    for (int v : c.vertices) in_core[v] = 1;
    for (int v = 0; v < base.num_vertices(); ++v) {
        if (levels[v] < 0) throw std::invalid_argument("alignment: negative level");
        if (in_core[v] != (levels[v] == 0))
            throw std::invalid_argument("alignment: level 0 must be exactly the core");
        hit[levels[v]] = 1;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](char h) { return h; }))
        throw std::invalid_argument("alignment: level map not surjective");
    TreeOrder to = tree_order(base);
    for (int v = 0; v < base.num_vertices(); ++v)
        if (to.parent_vertex[v] >= 0 && levels[to.parent_vertex[v]] >= levels[v])
            throw std::invalid_argument("alignment: levels must increase away from core");
    a.length = k;
    a.base = std::move(base);
    a.levels = std::move(levels);
    if (a.base.d > 0) {
        std::vector<int> level_delta(k + 1, 0);
        for (int v = 0; v < a.base.num_vertices(); ++v)
            level_delta[a.levels[v]] += a.base.vertices[v].delta;
        for (int j = 0; j <= k; ++j) {
            if (level_delta[j] != 0) {
                a.rad = j;
                a.d_min = level_delta[j];
                break;
            }
        }
    }
    return a;
}

std::vector<AlignedGraph> enumerate_alignments(const DecoratedGraph& g) {
    TreeOrder to = tree_order(g);
    int nv = g.num_vertices();
    std::vector<int> tree_vertices;
    for (int v = 0; v < nv; ++v)
        if (!to.in_core[v]) tree_vertices.push_back(v);
    std::vector<AlignedGraph> out;
    std::vector<int> levels(nv, 0);
    std::vector<char> placed(nv, 0);
    int remaining = static_cast<int>(tree_vertices.size());
    auto rec = [&](auto&& self, int level, int left) -> void {
        if (left == 0) {
            out.push_back(AlignedGraph::make(g, levels));
            return;
        }
        // Minimal elements: unplaced tree vertices whose parent is placed or core.
        std::vector<int> minimal;
        for (int v : tree_vertices)
            if (!placed[v] && (to.in_core[to.parent_vertex[v]] || placed[to.parent_vertex[v]]))
                minimal.push_back(v);
        int m = static_cast<int>(minimal.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            int count = 0;
            for (int i = 0; i < m; ++i)
                if ((mask >> i) & 1) {
                    placed[minimal[i]] = 1;
                    levels[minimal[i]] = level;
                    ++count;
                }
            self(self, level + 1, left - count);
            for (int i = 0; i < m; ++i)
                if ((mask >> i) & 1) placed[minimal[i]] = 0;
        }
    };
    rec(rec, 1, remaining);
    return out;
}

std::pair<int, int> contraction_radius(const AlignedGraph& a) {
    if (a.base.d == 0) throw std::domain_error("contraction_radius: requires d > 0");
    return {a.rad, a.d_min};
}

bool in_tilde_category(const AlignedGraph& a) {
    if (a.base.d == 0) throw std::domain_error("in_tilde_category: requires d > 0");
    return a.d_min > 1;
}

bool stratum_nonempty(const AlignedGraph& a, NonemptinessCriterion c) {
    if (c == NonemptinessCriterion::RadAware && a.rad == 0) return true;
    return in_tilde_category(a);
}

namespace {

// Lower/higher endpoints of a tree edge by level.
std::pair<int, int> oriented(const AlignedGraph& a, int e) {
    auto [u, v] = a.base.edges[e];
    if (a.levels[u] > a.levels[v]) std::swap(u, v);
    return {u, v};
}

}  // namespace

SubdividedGraph canonical_subdivision(const AlignedGraph& a) {
    SubdividedGraph s;
    s.graph.g = a.base.g;
    s.graph.n = a.base.n;
    s.graph.d = a.base.d;
    s.graph.vertices = a.base.vertices;
    s.levels = a.levels;
    s.synthetic.assign(a.base.num_vertices(), 0);
    s.fiber_size.assign(a.length, 0);
    std::vector<char> is_core_edge(a.base.num_edges(), 0);
    for (int e : a.core_edges) is_core_edge[e] = 1;
    for (int e = 0; e < a.base.num_edges(); ++e) {
        if (is_core_edge[e]) {
            s.graph.edges.push_back(a.base.edges[e]);
            continue;
        }
        auto [lo, hi] = oriented(a, e);
        int i = a.levels[lo], j = a.levels[hi];
        for (int m = i + 1; m <= j; ++m) s.fiber_size[m - 1] += 1;
        int prev = lo;
        for (int m = i + 1; m < j; ++m) {
            int mid = s.graph.num_vertices();
            s.graph.vertices.push_back(VertexData{});
            s.levels.push_back(m);
            s.synthetic.push_back(1);
            s.graph.edges.emplace_back(prev, mid);
            prev = mid;
        }
        s.graph.edges.emplace_back(prev, hi);
    }
    return s;
}

SubdividedGraph subdivision_at_radius(const AlignedGraph& a, int r) {
    if (r < 1 || r > a.length)
        throw std::domain_error("subdivision_at_radius: radius out of range");
    SubdividedGraph s;
    s.graph.g = a.base.g;
    s.graph.n = a.base.n;
    s.graph.d = a.base.d;
    s.graph.vertices = a.base.vertices;
    s.levels = a.levels;
    s.synthetic.assign(a.base.num_vertices(), 0);
    std::vector<char> is_core_edge(a.base.num_edges(), 0);
    for (int e : a.core_edges) is_core_edge[e] = 1;
    for (int e = 0; e < a.base.num_edges(); ++e) {
        if (is_core_edge[e]) {
            s.graph.edges.push_back(a.base.edges[e]);
            continue;
        }
        auto [lo, hi] = oriented(a, e);
        int i = a.levels[lo], j = a.levels[hi];
        if (i < r && r < j) {
            int mid = s.graph.num_vertices();
            s.graph.vertices.push_back(VertexData{});
            s.levels.push_back(r);
            s.synthetic.push_back(1);
            s.graph.edges.emplace_back(lo, mid);
            s.graph.edges.emplace_back(mid, hi);
        } else {
            s.graph.edges.push_back(a.base.edges[e]);
        }
    }
    // Markings strictly inside radius r move to fresh leaves at level r.
    for (int v = 0; v < a.base.num_vertices(); ++v) {
        if (a.levels[v] >= r) continue;
        for (int m : a.base.vertices[v].marks) {
            int leaf = s.graph.num_vertices();
            VertexData ld;
            ld.marks = {m};
            s.graph.vertices.push_back(ld);
            s.levels.push_back(r);
            s.synthetic.push_back(0);
            s.graph.edges.emplace_back(v, leaf);
        }
        auto& marks = s.graph.vertices[v].marks;
        marks.clear();
    }
    return s;
}

DecoratedGraph smooth_synthetic(const SubdividedGraph& s) {
    DecoratedGraph g = s.graph;
    std::vector<char> synthetic(s.synthetic.begin(), s.synthetic.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (!synthetic[v] || g.valence(v) != 2) continue;
            int e1 = -1, e2 = -1;
            for (int e = 0; e < g.num_edges(); ++e) {
                if (g.edges[e].first == v || g.edges[e].second == v)
                    (e1 < 0 ? e1 : e2) = e;
            }
            int u1 = g.edges[e1].first == v ? g.edges[e1].second : g.edges[e1].first;
            int u2 = g.edges[e2].first == v ? g.edges[e2].second : g.edges[e2].first;
            DecoratedGraph h;
            h.g = g.g;
            h.n = g.n;
            h.d = g.d;
            std::vector<int> vmap(g.num_vertices(), -1);
            std::vector<char> syn2;
            for (int x = 0; x < g.num_vertices(); ++x) {
                if (x == v) continue;
                vmap[x] = h.num_vertices();
                h.vertices.push_back(g.vertices[x]);
                syn2.push_back(synthetic[x]);
            }
            for (int e = 0; e < g.num_edges(); ++e) {
                if (e == e1 || e == e2) continue;
                h.edges.emplace_back(vmap[g.edges[e].first], vmap[g.edges[e].second]);
            }
            h.edges.emplace_back(vmap[u1], vmap[u2]);
            g = std::move(h);
            synthetic.assign(syn2.begin(), syn2.end());
            changed = true;
            break;
        }
    }
    return g;
}

AlignedMove radial_merge(const AlignedGraph& a, int i) {
    if (i < 1 || i > a.length) throw std::domain_error("radial_merge: level out of range");
    int nv = a.base.num_vertices();
    // Union-find over the edges joining levels i-1 and i.
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> contracted(a.base.num_edges(), 0);
    for (int e = 0; e < a.base.num_edges(); ++e) {
        auto [u, v] = a.base.edges[e];
        int lu = a.levels[u], lv = a.levels[v];
        if (std::min(lu, lv) == i - 1 && std::max(lu, lv) == i) {
            contracted[e] = 1;
            int ru = find(u), rv = find(v);
            if (ru == rv)
                throw std::logic_error("radial_merge: contracted edges contain a cycle");
            parent[ru] = rv;
        }
    }
    DecoratedGraph h;
    h.g = a.base.g;
    h.n = a.base.n;
    h.d = a.base.d;
    std::vector<int> vmap(nv, -1);
    std::vector<int> new_levels;
    for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (vmap[r] < 0) {
            vmap[r] = h.num_vertices();
            h.vertices.push_back(VertexData{});
            new_levels.push_back(0);
        }
        vmap[v] = vmap[r];
    }
    for (int v = 0; v < nv; ++v) {
        auto& tgt = h.vertices[vmap[v]];
        tgt.w += a.base.vertices[v].w;
        tgt.delta += a.base.vertices[v].delta;
        tgt.marks.insert(tgt.marks.end(), a.base.vertices[v].marks.begin(),
                         a.base.vertices[v].marks.end());
        new_levels[vmap[v]] = a.levels[v] >= i ? a.levels[v] - 1 : a.levels[v];
    }
    for (auto& vd : h.vertices) std::sort(vd.marks.begin(), vd.marks.end());
    AlignedMove out;
    out.edge_map.assign(a.base.num_edges(), -1);
    for (int e = 0; e < a.base.num_edges(); ++e) {
        if (contracted[e]) continue;
        out.edge_map[e] = h.num_edges();
        h.edges.emplace_back(vmap[a.base.edges[e].first], vmap[a.base.edges[e].second]);
    }
    if (!is_stable(h)) throw std::logic_error("radial_merge: stability lost");
    out.graph = AlignedGraph::make(std::move(h), std::move(new_levels));
    return out;
}

AlignedMove contract_core_edge(const AlignedGraph& a, int core_edge) {
    if (std::find(a.core_edges.begin(), a.core_edges.end(), core_edge) ==
        a.core_edges.end())
        throw std::out_of_range("contract_core_edge: not a core edge");
    Contraction c = contract_edge(a.base, core_edge);
    std::vector<int> new_levels(c.graph.num_vertices(), 0);
    for (int v = 0; v < a.base.num_vertices(); ++v)
        new_levels[c.vertex_map[v]] = a.levels[v];
    if (!is_stable(c.graph)) throw std::logic_error("contract_core_edge: stability lost");
    AlignedMove out;
    out.edge_map = std::move(c.edge_map);
    out.graph = AlignedGraph::make(std::move(c.graph), std::move(new_levels));
    return out;
}

std::string to_json(const AlignedGraph& a) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(a.base));
    j["levels"] = a.levels;
    return j.dump();
}

AlignedGraph aligned_from_json(const std::string& text) {
    DecoratedGraph g = graph_from_json(text);
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<int> levels = j.at("levels").get<std::vector<int>>();
    return AlignedGraph::make(std::move(g), std::move(levels));
}

}  // namespace mdc
