#include "mdc/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mdc {

namespace {

using Key = std::vector<long long>;

// Stable partition refinement (1-dimensional Weisfeiler-Leman). Returns a
// class id per vertex; ids are ordered by the class invariant, so they are
// identical across isomorphic graphs.
std::vector<int> refine_classes(const DecoratedGraph& g, const std::vector<int>* colors) {
    int nv = g.num_vertices();
    std::vector<Key> keys(nv);
    for (int v = 0; v < nv; ++v) {
        const auto& vd = g.vertices[v];
        Key k{colors ? (*colors)[v] : 0, vd.w, vd.delta, g.valence(v)};
        k.push_back(static_cast<long long>(vd.marks.size()));
        for (int m : vd.marks) k.push_back(m);
        keys[v] = std::move(k);
    }
    std::vector<int> cls(nv, 0);
    int num_classes = 0;
    for (int round = 0; round <= nv; ++round) {
        std::map<Key, int> order;
        for (const auto& k : keys) order.emplace(k, 0);
        int id = 0;
        for (auto& [k, v] : order) v = id++;
        for (int v = 0; v < nv; ++v) cls[v] = order.at(keys[v]);
        if (id == num_classes) break;
        num_classes = id;
        // Append sorted neighbor class multiset (loops count the vertex twice).
        std::vector<std::vector<long long>> nbr(nv);
        for (const auto& e : g.edges) {
            nbr[e.first].push_back(cls[e.second]);
            nbr[e.second].push_back(cls[e.first]);
        }
        for (int v = 0; v < nv; ++v) {
            std::sort(nbr[v].begin(), nbr[v].end());
            keys[v] = Key{cls[v]};
            keys[v].insert(keys[v].end(), nbr[v].begin(), nbr[v].end());
        }
    }
    return cls;
}

// Edge multiplicity between an unordered vertex pair (loops counted once).
int multiplicity(const DecoratedGraph& g, int a, int b) {
    int m = 0;
    for (const auto& e : g.edges) {
        int u = e.first, v = e.second;
        if ((u == a && v == b) || (u == b && v == a)) ++m;
    }
    return m;
}

bool are_twins(const DecoratedGraph& g, const std::vector<int>* colors, int u, int v) {
    const auto& du = g.vertices[u];
    const auto& dv = g.vertices[v];
    if (du.w != dv.w || du.delta != dv.delta || du.marks != dv.marks) return false;
    if (colors && (*colors)[u] != (*colors)[v]) return false;
    if (multiplicity(g, u, u) != multiplicity(g, v, v)) return false;
    for (int x = 0; x < g.num_vertices(); ++x) {
        if (x == u || x == v) continue;
        if (multiplicity(g, u, x) != multiplicity(g, v, x)) return false;
    }
    return true;
}

std::string encode_with_order(const DecoratedGraph& g, const std::vector<int>* colors,
                              const std::vector<int>& pos) {
    std::ostringstream os;
    os << g.g << ' ' << g.n << ' ' << g.d << ';';
    std::vector<int> order(pos.size());
    for (size_t v = 0; v < pos.size(); ++v) order[pos[v]] = static_cast<int>(v);
    for (int v : order) {
        const auto& vd = g.vertices[v];
        os << vd.w << ',' << vd.delta << ',';
        for (int m : vd.marks) os << m << '.';
        if (colors) os << 'c' << (*colors)[v];
        os << '|';
    }
    std::vector<std::pair<int, int>> es;
    es.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        int a = pos[e.first], b = pos[e.second];
        es.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(es.begin(), es.end());
    for (const auto& [a, b] : es) os << a << '-' << b << ' ';
    return os.str();
}

}  // namespace

CanonicalForm canonical_form(const DecoratedGraph& g, const std::vector<int>* colors) {
    int nv = g.num_vertices();
    std::vector<int> cls = refine_classes(g, colors);
    int num_classes = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::vector<int>> members(num_classes);
    for (int v = 0; v < nv; ++v) members[cls[v]].push_back(v);

    // Within a class, interchangeable twins need only one relative order.
    std::vector<std::vector<int>> twin_ids(num_classes);
    for (int c = 0; c < num_classes; ++c) {
        const auto& mem = members[c];
        std::vector<int> tid(mem.size(), -1);
        int next = 0;
        for (size_t i = 0; i < mem.size(); ++i) {
            if (tid[i] >= 0) continue;
            tid[i] = next;
            for (size_t j = i + 1; j < mem.size(); ++j)
                if (tid[j] < 0 && are_twins(g, colors, mem[i], mem[j])) tid[j] = next;
            ++next;
        }
        twin_ids[c] = tid;
    }

    std::string best;
    std::vector<int> best_pos;
    std::vector<std::vector<int>> perms(num_classes);
    for (int c = 0; c < num_classes; ++c) {
        perms[c] = twin_ids[c];
        std::sort(perms[c].begin(), perms[c].end());
    }
    // Enumerate class-respecting orderings: per class, multiset permutations of
    // twin ids; twin members fill equal slots in index order.
    std::vector<int> pos(nv);
    auto assign_class = [&](int c, const std::vector<int>& perm, int base) {
        std::vector<std::vector<int>> buckets;
        buckets.resize(*std::max_element(twin_ids[c].begin(), twin_ids[c].end()) + 1);
        for (size_t i = 0; i < members[c].size(); ++i)
            buckets[twin_ids[c][i]].push_back(members[c][i]);
        std::vector<size_t> used(buckets.size(), 0);
        for (size_t slot = 0; slot < perm.size(); ++slot) {
            int t = perm[slot];
            pos[buckets[t][used[t]++]] = base + static_cast<int>(slot);
        }
    };
    std::vector<int> bases(num_classes);
    {
        int b = 0;
        for (int c = 0; c < num_classes; ++c) bases[c] = b, b += static_cast<int>(members[c].size());
    }
    // Recursive product over classes.
    auto rec = [&](auto&& self, int c) -> void {
        if (c == num_classes) {
            std::string enc = encode_with_order(g, colors, pos);
            if (best.empty() || enc < best) best = enc, best_pos = pos;
            return;
        }
        std::vector<int> perm = perms[c];
        do {
            assign_class(c, perm, bases[c]);
            self(self, c + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    if (nv == 0) throw std::invalid_argument("canonical_form: empty graph");
    rec(rec, 0);

    CanonicalForm out;
    out.encoding = std::move(best);
    out.vertex_map = std::move(best_pos);
    out.graph.g = g.g;
    out.graph.n = g.n;
    out.graph.d = g.d;
    out.graph.vertices.resize(nv);
    for (int v = 0; v < nv; ++v) out.graph.vertices[out.vertex_map[v]] = g.vertices[v];
    if (colors) {
        out.colors.resize(nv);
        for (int v = 0; v < nv; ++v) out.colors[out.vertex_map[v]] = (*colors)[v];
    }
    // Sort edges by mapped endpoint pair; parallel edges keep input order.
    std::vector<std::pair<std::pair<int, int>, int>> es;
    for (int e = 0; e < g.num_edges(); ++e) {
        int a = out.vertex_map[g.edges[e].first], b = out.vertex_map[g.edges[e].second];
        es.push_back({{std::min(a, b), std::max(a, b)}, e});
    }
    std::sort(es.begin(), es.end());
    out.edge_map.resize(g.num_edges());
    for (size_t i = 0; i < es.size(); ++i) {
        out.edge_map[es[i].second] = static_cast<int>(i);
        out.graph.edges.push_back(es[i].first);
    }
    return out;
}

namespace {

void expand_half_edges(const DecoratedGraph& g, const std::vector<int>& vperm,
                       std::vector<GraphIsomorphism>& out) {
    // Group edges by unordered endpoint pair.
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int e = 0; e < g.num_edges(); ++e) {
        int a = g.edges[e].first, b = g.edges[e].second;
        groups[{std::min(a, b), std::max(a, b)}].push_back(e);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // src, dst
    for (auto& [key, src] : groups) {
        auto it = groups.find({std::min(vperm[key.first], vperm[key.second]),
                               std::max(vperm[key.first], vperm[key.second])});
        if (it == groups.end() || it->second.size() != src.size()) return;  // not an iso
        pairs.push_back({src, it->second});
    }
    std::vector<int> emap(g.num_edges(), -1);
    auto rec = [&](auto&& self, size_t gi) -> void {
        if (gi == pairs.size()) {
            // Orientation choices: loops may flip; non-loop half-edges follow vperm.
            std::vector<int> loops;
            for (int e = 0; e < g.num_edges(); ++e)
                if (g.is_loop(e)) loops.push_back(e);
            int nloops = static_cast<int>(loops.size());
            for (int mask = 0; mask < (1 << nloops); ++mask) {
                GraphIsomorphism iso;
                iso.vertex_map = vperm;
                iso.half_edge_map.assign(2 * g.num_edges(), -1);
                for (int e = 0; e < g.num_edges(); ++e) {
                    int f = emap[e];
                    if (g.is_loop(e)) {
                        int li = static_cast<int>(std::find(loops.begin(), loops.end(), e) -
                                                  loops.begin());
                        bool flip = (mask >> li) & 1;
                        iso.half_edge_map[2 * e] = 2 * f + (flip ? 1 : 0);
                        iso.half_edge_map[2 * e + 1] = 2 * f + (flip ? 0 : 1);
                    } else {
                        int img_of_first = vperm[g.edges[e].first];
                        bool swapped = (g.edges[f].first != img_of_first);
                        iso.half_edge_map[2 * e] = 2 * f + (swapped ? 1 : 0);
                        iso.half_edge_map[2 * e + 1] = 2 * f + (swapped ? 0 : 1);
                    }
                }
                out.push_back(std::move(iso));
            }
            return;
        }
        auto& [src, dst] = pairs[gi];
        std::vector<int> d = dst;
        std::sort(d.begin(), d.end());
        do {
            for (size_t i = 0; i < src.size(); ++i) emap[src[i]] = d[i];
            self(self, gi + 1);
        } while (std::next_permutation(d.begin(), d.end()));
    };
    rec(rec, 0);
}

}  // namespace

std::vector<GraphIsomorphism> automorphisms(const DecoratedGraph& g,
                                            const std::vector<int>* colors) {
    int nv = g.num_vertices();
    std::vector<int> cls = refine_classes(g, colors);
    std::vector<GraphIsomorphism> out;
    std::vector<int> vperm(nv, -1);
    std::vector<char> used(nv, 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == nv) {
            expand_half_edges(g, vperm, out);
            return;
        }
        for (int t = 0; t < nv; ++t) {
            if (used[t] || cls[t] != cls[v]) continue;
            bool ok = multiplicity(g, v, v) == multiplicity(g, t, t);
            for (int u = 0; ok && u < v; ++u)
                if (multiplicity(g, v, u) != multiplicity(g, t, vperm[u])) ok = false;
            if (!ok) continue;
            vperm[v] = t;
            used[t] = 1;
            self(self, v + 1);
            used[t] = 0;
            vperm[v] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
        return false;
    return canonical_form(a).encoding == canonical_form(b).encoding;
}

}  // namespace mdc
