#include "mdc/complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mdc/aligned.hpp"
#include "mdc/canonical.hpp"

namespace mdc {

int SymmetricDeltaComplex::alive_count(int p) const {
    int c = 0;
    for (const auto& g : dims[p])
        if (g.alive) ++c;
    return c;
}

namespace {

// A generator is dead iff some automorphism induces an odd permutation of its
// labels. For aligned graphs the level labels are fixed pointwise, so only the
// induced permutation of core edges matters.
bool compute_alive(const DecoratedGraph& g, const std::vector<int>* levels,
                   const std::vector<int>& core_edges) {
    for (const auto& iso : automorphisms(g, levels)) {
        std::vector<int> emap = iso.edge_map();
        std::vector<int> perm;
        if (levels) {
            for (int e : core_edges) {
                int img = emap[e];
                auto it = std::find(core_edges.begin(), core_edges.end(), img);
                perm.push_back(static_cast<int>(it - core_edges.begin()));
            }
        } else {
            perm = emap;
        }
        if (permutation_sign(perm) < 0) return false;
    }
    return true;
}

using IndexMap = std::vector<std::map<std::string, int>>;  // per dimension

int lookup(const IndexMap& index, int p, const std::string& enc) {
    auto it = index[p].find(enc);
    if (it == index[p].end())
        throw std::logic_error("face target not among enumerated generators");
    return it->second;
}

// Sign of the face map given the images of the surviving labels. rel[q] is the
// target label of the q-th surviving source label.
int face_sign(int i, const std::vector<int>& rel, bool target_alive) {
    if (!target_alive) return 0;
    int s = permutation_sign(rel);
    return (i % 2 == 0 ? s : -s);
}

void virtual_faces(SymmetricDeltaComplex& x, const IndexMap& index) {
    for (int p = 0; p < static_cast<int>(x.dims.size()); ++p) {
        for (auto& gen : x.dims[p]) {
            for (int i = 0; i <= p; ++i) {
                if (p == 0) {
                    gen.faces.push_back(Face{-1, 1});
                    continue;
                }
                Contraction c = contract_edge(gen.graph, i);
                CanonicalForm cf = canonical_form(c.graph);
                int t = lookup(index, p - 1, cf.encoding);
                const Generator& tgt = x.dims[p - 1][t];
                std::vector<int> rel;
                for (int j = 0; j <= p; ++j)
                    if (j != i) rel.push_back(cf.edge_map[c.edge_map[j]]);
                gen.faces.push_back(Face{t, face_sign(i, rel, tgt.alive)});
            }
        }
    }
}

std::vector<int> sorted_core(const AlignedGraph& a) {
    std::vector<int> c = a.core_edges;
    std::sort(c.begin(), c.end());
    return c;
}

}  // namespace

GenusOneFaceMove genus1_face_move(const AlignedGraph& a, int i) {
    std::vector<int> core = sorted_core(a);
    int nc = static_cast<int>(core.size());
    int nlabels = nc + a.length;
    if (i < 0 || i >= nlabels) throw std::out_of_range("genus1_face_move: bad label");
    bool core_face = i < nc;
    int j = core_face ? 0 : i - nc + 1;  // merged level
    AlignedMove mv = core_face ? contract_core_edge(a, core[i]) : radial_merge(a, j);
    if (!in_tilde_category(mv.graph))
        throw std::logic_error("face left the d_min > 1 category");
    std::vector<int> tcore = sorted_core(mv.graph);
    GenusOneFaceMove out;
    out.label_map.assign(nlabels, -1);
    for (int q = 0; q < nlabels; ++q) {
        if (q == i) continue;
        if (q < nc) {
            int img = mv.edge_map[core[q]];
            auto it = std::find(tcore.begin(), tcore.end(), img);
            if (it == tcore.end())
                throw std::logic_error("core edge image is not a core edge");
            out.label_map[q] = static_cast<int>(it - tcore.begin());
        } else {
            int lvl = q - nc + 1;
            int tlvl = core_face ? lvl : (lvl < j ? lvl : lvl - 1);
            out.label_map[q] = static_cast<int>(tcore.size()) + tlvl - 1;
        }
    }
    out.graph = std::move(mv.graph);
    return out;
}

namespace {

void genus1_faces(SymmetricDeltaComplex& x, const IndexMap& index) {
    for (int p = 0; p < static_cast<int>(x.dims.size()); ++p) {
        for (auto& gen : x.dims[p]) {
            AlignedGraph a = AlignedGraph::make(gen.graph, gen.levels);
            for (int i = 0; i <= p; ++i) {
                if (p == 0) {
                    gen.faces.push_back(Face{-1, 1});
                    continue;
                }
                GenusOneFaceMove mv = genus1_face_move(a, i);
                CanonicalForm cf = canonical_form(mv.graph.base, &mv.graph.levels);
                int t = lookup(index, p - 1, cf.encoding);
                const Generator& tgt = x.dims[p - 1][t];
                // Transport label positions to the canonical representative.
                std::vector<int> tcore = sorted_core(mv.graph);
                std::vector<int> ccore = sorted_core(AlignedGraph::make(cf.graph, cf.colors));
                int ntc = static_cast<int>(tcore.size());
                std::vector<int> rel;
                for (int q = 0; q <= p; ++q) {
                    if (q == i) continue;
                    int lm = mv.label_map[q];
                    if (lm < ntc) {
                        int img = cf.edge_map[tcore[lm]];
                        auto it = std::find(ccore.begin(), ccore.end(), img);
                        if (it == ccore.end())
                            throw std::logic_error("core edge image is not a core edge");
                        rel.push_back(static_cast<int>(it - ccore.begin()));
                    } else {
                        rel.push_back(lm);  // level labels keep their positions
                    }
                }
                gen.faces.push_back(Face{t, face_sign(i, rel, tgt.alive)});
            }
        }
    }
}

IndexMap build_index(SymmetricDeltaComplex& x) {
    IndexMap index(x.dims.size());
    for (size_t p = 0; p < x.dims.size(); ++p) {
        std::sort(x.dims[p].begin(), x.dims[p].end(),
                  [](const Generator& a, const Generator& b) { return a.encoding < b.encoding; });
        for (size_t i = 0; i < x.dims[p].size(); ++i)
            index[p].emplace(x.dims[p][i].encoding, static_cast<int>(i));
    }
    return index;
}

}  // namespace

SymmetricDeltaComplex build_virtual_complex(const GraphCatalog& cat) {
    SymmetricDeltaComplex x;
    x.kind = ComplexKind::Virtual;
    x.g = cat.g;
    x.n = cat.n;
    x.d = cat.d;
    x.dims.resize(cat.max_edge_count());
    for (const auto& [enc, g] : cat.classes) {
        Generator gen;
        gen.graph = g;
        gen.p = g.num_edges() - 1;
        for (int e = 0; e < g.num_edges(); ++e) gen.labels.push_back("e" + std::to_string(e));
        gen.alive = compute_alive(g, nullptr, {});
        gen.encoding = enc;
        x.dims[gen.p].push_back(std::move(gen));
    }
    IndexMap index = build_index(x);
    virtual_faces(x, index);
    return x;
}

SymmetricDeltaComplex build_genus1_complex(int n, int d) {
    SymmetricDeltaComplex x;
    x.kind = ComplexKind::GenusOne;
    x.g = 1;
    x.n = n;
    x.d = d;
    for (const AlignedGraph& a : aligned_graphs(n, d)) {
        Generator gen;
        std::vector<int> core = sorted_core(a);
        gen.p = static_cast<int>(core.size()) + a.length - 1;
        for (int e : core) gen.labels.push_back("e" + std::to_string(e));
        for (int j = 1; j <= a.length; ++j) gen.labels.push_back("r" + std::to_string(j));
        gen.alive = compute_alive(a.base, &a.levels, core);
        gen.encoding = canonical_form(a.base, &a.levels).encoding;
        gen.graph = a.base;
        gen.levels = a.levels;
        if (gen.p >= static_cast<int>(x.dims.size())) x.dims.resize(gen.p + 1);
        x.dims[gen.p].push_back(std::move(gen));
    }
    IndexMap index = build_index(x);
    genus1_faces(x, index);
    return x;
}

SparseMatrix boundary_matrix(const SymmetricDeltaComplex& x, int p, bool reduced) {
    if (p < 0 || p >= static_cast<int>(x.dims.size()))
        throw std::out_of_range("boundary_matrix: dimension out of range");
    std::vector<int> col_of(x.dims[p].size(), -1);
    int ncols = 0;
    for (size_t i = 0; i < x.dims[p].size(); ++i)
        if (x.dims[p][i].alive) col_of[i] = ncols++;
    int nrows = 0;
    std::vector<int> row_of;
    if (p == 0) {
        nrows = reduced ? 1 : 0;
    } else {
        row_of.assign(x.dims[p - 1].size(), -1);
        for (size_t i = 0; i < x.dims[p - 1].size(); ++i)
            if (x.dims[p - 1][i].alive) row_of[i] = nrows++;
    }
    SparseMatrix m(nrows, ncols);
    for (size_t i = 0; i < x.dims[p].size(); ++i) {
        const Generator& gen = x.dims[p][i];
        if (!gen.alive) continue;
        for (const Face& f : gen.faces) {
            if (f.sign == 0) continue;
            if (f.target < 0) {
                if (reduced) m.add(0, col_of[i], f.sign);
            } else {
                m.add(row_of[f.target], col_of[i], f.sign);
            }
        }
    }
    return m;
}

bool BettiTable::all_zero() const {
    return std::all_of(betti.begin(), betti.end(), [](int b) { return b == 0; });
}

BettiTable betti_numbers(const SymmetricDeltaComplex& x, bool reduced) {
    BettiTable t;
    int dim = x.dimension();
    t.min_p = reduced ? -1 : 0;
    std::vector<int> alive(dim + 1, 0), rk(dim + 2, 0);
    for (int p = 0; p <= dim; ++p) {
        alive[p] = x.alive_count(p);
        rk[p] = rank(boundary_matrix(x, p, reduced));
    }
    t.alive_counts = alive;
    if (reduced) t.betti.push_back(1 - rk[0]);
    for (int p = 0; p <= dim; ++p) t.betti.push_back(alive[p] - rk[p] - rk[p + 1]);
    for (int p = 0; p <= dim; ++p)
        t.euler_from_counts += (p % 2 == 0 ? alive[p] : -alive[p]);
    long long eb = 0;
    for (size_t i = 0; i < t.betti.size(); ++i) {
        int p = t.min_p + static_cast<int>(i);
        eb += ((p % 2 + 2) % 2 == 0 ? t.betti[i] : -t.betti[i]);
    }
    t.euler_from_betti = reduced ? 1 + eb : eb;
    return t;
}

std::string complex_to_json(const SymmetricDeltaComplex& x) {
    nlohmann::ordered_json j;
    j["kind"] = x.kind == ComplexKind::Virtual ? "virtual" : "genus1";
    j["g"] = x.g;
    j["n"] = x.n;
    j["d"] = x.d;
    j["dims"] = nlohmann::ordered_json::array();
    for (int p = 0; p <= x.dimension(); ++p) {
        nlohmann::ordered_json jd;
        jd["p"] = p;
        jd["generators"] = nlohmann::ordered_json::array();
        for (const auto& gen : x.dims[p]) {
            nlohmann::ordered_json jg;
            jg["graph"] = nlohmann::ordered_json::parse(to_json(gen.graph));
            if (!gen.levels.empty()) jg["levels"] = gen.levels;
            jg["labels"] = gen.labels;
            jg["alive"] = gen.alive;
            jg["faces"] = nlohmann::ordered_json::array();
            for (size_t i = 0; i < gen.faces.size(); ++i) {
                jg["faces"].push_back({{"i", static_cast<int>(i)},
                                       {"target", gen.faces[i].target},
                                       {"sign", gen.faces[i].sign}});
            }
            jd["generators"].push_back(std::move(jg));
        }
        j["dims"].push_back(std::move(jd));
    }
    return j.dump();
}

SymmetricDeltaComplex complex_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SymmetricDeltaComplex x;
    x.kind = j.at("kind") == "genus1" ? ComplexKind::GenusOne : ComplexKind::Virtual;
    x.g = j.at("g");
    x.n = j.at("n");
    x.d = j.at("d");
    x.dims.resize(j.at("dims").size());
    for (const auto& jd : j.at("dims")) {
        int p = jd.at("p");
        if (p < 0 || p >= static_cast<int>(x.dims.size()))
            throw std::invalid_argument("complex: bad dimension index");
        for (const auto& jg : jd.at("generators")) {
            Generator gen;
            gen.graph = graph_from_json(jg.at("graph").dump());
            if (jg.contains("levels")) gen.levels = jg.at("levels").get<std::vector<int>>();
            gen.labels = jg.at("labels").get<std::vector<std::string>>();
            gen.alive = jg.at("alive");
            gen.p = p;
            for (const auto& jf : jg.at("faces"))
                gen.faces.push_back(Face{jf.at("target"), jf.at("sign")});
            if (gen.faces.size() != static_cast<size_t>(p) + 1)
                throw std::invalid_argument("complex: generator needs p+1 faces");
            x.dims[p].push_back(std::move(gen));
        }
    }
    for (int p = 1; p <= x.dimension(); ++p)
        for (const auto& gen : x.dims[p])
            for (const auto& f : gen.faces)
                if (f.target < -1 || f.target >= static_cast<int>(x.dims[p - 1].size()))
                    throw std::invalid_argument("complex: face target out of range");
    return x;
}

}  // namespace mdc
