#include "mdc/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "mdc/canonical.hpp"
#include "mdc/complex.hpp"
#include "mdc/flow.hpp"
#include "mdc/tangent.hpp"

namespace mdc {

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step on seed + index
    std::uint64_t z = seed + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::array<int, 3>> kGenus0Grid = {
    {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {0, 1, 2},
    {0, 2, 2}, {0, 3, 2}, {0, 0, 3}, {0, 1, 3}};
const std::vector<std::array<int, 2>> kGenus1Grid = {{1, 2}, {2, 2}, {1, 3}};

std::string triple(int g, int n, int d) {
    std::ostringstream os;
    os << "(" << g << "," << n << "," << d << ")";
    return os.str();
}

// Runs fn(i) for i in [0,total); fn returns "" on success. Reports the
// lowest-index failure, independent of thread count.
template <typename F>
std::string parallel_check(int total, int threads, F&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, std::max(1, total));
    std::vector<std::string> fail(total);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i; (i = next.fetch_add(1)) < total;) {
            try {
                fail[i] = fn(i);
            } catch (const std::exception& e) {
                fail[i] = std::string("exception: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (int i = 0; i < total; ++i)
        if (!fail[i].empty()) return "sample " + std::to_string(i) + ": " + fail[i];
    return "";
}

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
    int num = 1 + static_cast<int>(rng() % max_num);
    int den = 1 + static_cast<int>(rng() % max_den);
    return Rational(num, den);
}

std::vector<Rational> random_lengths(std::mt19937_64& rng, int count) {
    std::vector<Rational> l(count);
    Rational total = 0;
    for (auto& x : l) {
        x = Rational(1 + static_cast<int>(rng() % 32));
        total += x;
    }
    for (auto& x : l) x /= total;
    return l;
}

Rational random_time(std::mt19937_64& rng) {
    // strictly inside (0,1)
    int den = 2 + static_cast<int>(rng() % 15);
    int num = 1 + static_cast<int>(rng() % (den - 1));
    return Rational(num, den);
}

struct Instance {
    int g, n, d;
    std::vector<DecoratedGraph> classes;  // boundary classes, deterministic order
};

Instance load_instance(int g, int n, int d, bool use_cache) {
    EnumerationRequest req;
    req.g = g;
    req.n = n;
    req.d = d;
    req.use_cache = use_cache;
    GraphCatalog cat = stable_graphs(req);
    Instance inst{g, n, d, {}};
    for (const auto& [enc, gr] : cat.classes) inst.classes.push_back(gr);
    return inst;
}

// Distance of each 1-end leaf from the basepoint (the core for genus 1, a
// fixed non-leaf vertex for genus 0), as pairs (leaf edge, distance).
std::vector<std::pair<int, Rational>> leaf_distances(const SproutFlow& s) {
    const DecoratedGraph& g = s.graph;
    int nv = g.num_vertices();
    std::vector<char> is_root(nv, 0);
    std::vector<char> skip_edge(g.num_edges(), 0);
    if (genus(g) == 1) {
        Core c = core(g);
        for (int v : c.vertices) is_root[v] = 1;
        for (int e : c.edges) skip_edge[e] = 1;
    } else {
        std::vector<char> leaf(nv, 0);
        for (int e = 0; e < g.num_edges(); ++e)
            if (s.is_one_end[e]) {
                int v = g.edges[e].first;
                leaf[g.valence(v) == 1 && g.vertices[v].delta == 1 ? v : g.edges[e].second] = 1;
            }
        for (int v = 0; v < nv; ++v)
            if (!leaf[v]) {
                is_root[v] = 1;
                break;
            }
    }
    std::vector<Rational> dist(nv, 0);
    std::vector<char> done(is_root.begin(), is_root.end());
    bool progress = true;
    while (progress) {
        progress = false;
        for (int e = 0; e < g.num_edges(); ++e) {
            if (skip_edge[e]) continue;
            auto [u, v] = g.edges[e];
            if (done[u] == done[v]) continue;
            int from = done[u] ? u : v, to = done[u] ? v : u;
            dist[to] = dist[from] + s.lengths[e];
            done[to] = 1;
            progress = true;
        }
    }
    std::vector<std::pair<int, Rational>> out;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (!s.is_one_end[e]) continue;
        auto [u, v] = g.edges[e];
        int leaf = (g.valence(u) == 1 && g.vertices[u].delta == 1 &&
                    g.vertices[u].w == 0 && g.vertices[u].marks.empty())
                       ? u
                       : v;
        out.emplace_back(e, dist[leaf]);
    }
    return out;
}

CriterionResult contractibility(int id, const std::string& name,
                                const std::vector<SymmetricDeltaComplex>& xs,
                                double per_instance_limit) {
    auto t0 = Clock::now();
    CriterionResult r{id, name, true, "", 0};
    std::ostringstream detail;
    for (const auto& x : xs) {
        auto ti = Clock::now();
        BettiTable t = betti_numbers(x, true);
        double secs = seconds_since(ti);
        if (!t.all_zero()) {
            r.pass = false;
            detail << triple(x.g, x.n, x.d) << " has nonzero reduced homology; ";
        } else if (secs > per_instance_limit) {
            r.pass = false;
            detail << triple(x.g, x.n, x.d) << " exceeded time limit; ";
        }
    }
    if (r.pass) detail << xs.size() << " instances, all reduced Betti numbers zero";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult euler_check(const std::vector<SymmetricDeltaComplex>& xs) {
    auto t0 = Clock::now();
    CriterionResult r{3, "Euler characteristic = 1, two ways", true, "", 0};
    std::ostringstream detail;
    for (const auto& x : xs) {
        BettiTable t = betti_numbers(x, true);
        if (t.euler_from_counts != 1 || t.euler_from_betti != 1) {
            r.pass = false;
            detail << triple(x.g, x.n, x.d) << ": counts=" << t.euler_from_counts
                   << " betti=" << t.euler_from_betti << "; ";
        }
    }
    if (r.pass) detail << "chi = 1 from generator counts and from Betti numbers";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult chain_soundness(const std::vector<SymmetricDeltaComplex>& xs) {
    auto t0 = Clock::now();
    CriterionResult r{4, "d*d = 0 and face commutation", true, "", 0};
    std::ostringstream detail;
    for (const auto& x : xs) {
        for (int p = 1; p <= x.dimension() && r.pass; ++p) {
            SparseMatrix sq =
                multiply(boundary_matrix(x, p - 1, true), boundary_matrix(x, p, true));
            if (!sq.is_zero()) {
                r.pass = false;
                detail << triple(x.g, x.n, x.d) << ": d*d != 0 at p=" << p << "; ";
            }
        }
        // d_i d_j = d_{j-1} d_i as geometric moves, checked exhaustively.
        for (int p = 2; p <= x.dimension() && r.pass; ++p) {
            for (const auto& gen : x.dims[p]) {
                for (int j = 1; j <= p && r.pass; ++j) {
                    for (int i = 0; i < j && r.pass; ++i) {
                        std::string e1, e2;
                        if (x.kind == ComplexKind::Virtual) {
                            Contraction c1 = contract_edge(gen.graph, j);
                            Contraction c2 = contract_edge(gen.graph, i);
                            e1 = canonical_form(
                                     contract_edge(c1.graph, c1.edge_map[i]).graph)
                                     .encoding;
                            e2 = canonical_form(
                                     contract_edge(c2.graph, c2.edge_map[j]).graph)
                                     .encoding;
                        } else {
                            AlignedGraph a = AlignedGraph::make(gen.graph, gen.levels);
                            GenusOneFaceMove m1 = genus1_face_move(a, j);
                            GenusOneFaceMove m2 = genus1_face_move(a, i);
                            AlignedGraph f1 =
                                genus1_face_move(m1.graph, m1.label_map[i]).graph;
                            AlignedGraph f2 =
                                genus1_face_move(m2.graph, m2.label_map[j]).graph;
                            e1 = canonical_form(f1.base, &f1.levels).encoding;
                            e2 = canonical_form(f2.base, &f2.levels).encoding;
                        }
                        if (e1 != e2) {
                            r.pass = false;
                            detail << triple(x.g, x.n, x.d) << ": face commutation fails at p="
                                   << p << " (i,j)=(" << i << "," << j << "); ";
                        }
                    }
                }
            }
        }
    }
    if (r.pass) detail << "exhaustive over all built complexes";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult retract_invariants(const VerifyOptions& opt,
                                   const std::vector<Instance>& instances) {
    auto t0 = Clock::now();
    CriterionResult r{5, "retract flow invariants", true, "", 0};
    std::ostringstream detail;
    const std::vector<Rational> z_times = {{1, 7}, {1, 3}, {1, 2}, {5, 7}, {9, 10}};
    for (size_t ii = 0; ii < instances.size() && r.pass; ++ii) {
        const Instance& inst = instances[ii];
        if (inst.classes.empty()) continue;
        MetricPoint target;
        {
            DecoratedGraph sp = sprout(interior_graph(inst.g, inst.n, inst.d));
            std::vector<Rational> uni(sp.num_edges(), Rational(1, inst.d));
            target = MetricPoint::make(std::move(sp), std::move(uni));
        }
        std::uint64_t si = sample_seed(opt.seed, 5000 + ii);
        std::vector<AlignedGraph> aligned;
        if (inst.g == 1) aligned = aligned_graphs(inst.n, inst.d);
        std::string fail = parallel_check(opt.samples, opt.threads, [&](int i) -> std::string {
            std::mt19937_64 rng(sample_seed(si, i));
            const DecoratedGraph& g = inst.classes[rng() % inst.classes.size()];
            MetricPoint p = MetricPoint::make(g, random_lengths(rng, g.num_edges()));
            if (!metric_points_equal(flow(p, 0), p)) return "flow(P,0) != P";
            if (!metric_points_equal(flow(p, 1), target))
                return "flow(P,1) is not the uniform sprouted target";
            Rational t = random_time(rng);
            // (e) shell identity p_v(t) = t/d + (1-t) p_v(0)
            SproutFlow s0 = flow_on_sprout(p, 0);
            SproutFlow st = flow_on_sprout(p, t);
            auto d0 = leaf_distances(s0);
            auto dt = leaf_distances(st);
            for (size_t k = 0; k < d0.size(); ++k) {
                if (dt[k].second != t / inst.d + (1 - t) * d0[k].second)
                    return "p_v(t) closed form violated";
            }
            // (c) gluing coherence across a random contraction
            if (g.num_edges() >= 2) {
                int e = static_cast<int>(rng() % g.num_edges());
                Contraction c = contract_edge(g, e);
                std::vector<Rational> lprime = random_lengths(rng, c.graph.num_edges());
                std::vector<Rational> ext(g.num_edges(), Rational(0));
                for (int f = 0; f < g.num_edges(); ++f)
                    if (c.edge_map[f] >= 0) ext[f] = lprime[c.edge_map[f]];
                MetricPoint after = flow_raw(g, ext, t);
                MetricPoint before = flow(MetricPoint::make(c.graph, lprime), t);
                if (!metric_points_equal(after, before)) return "gluing coherence violated";
            }
            // (d) Z-preservation in genus 1
            if (inst.g == 1 && !aligned.empty()) {
                const AlignedGraph& a = aligned[rng() % aligned.size()];
                int nc = static_cast<int>(a.core_edges.size());
                std::vector<Rational> all = random_lengths(rng, nc + a.length);
                DualPoint q = DualPoint::make(
                    a, {all.begin(), all.begin() + nc}, {all.begin() + nc, all.end()});
                MetricPoint z = embed_dual(q);
                if (!in_Z(z)) return "embedded dual point not in Z";
                int dmin0 = canonical_alignment(z).d_min;
                for (const Rational& zt : z_times) {
                    MetricPoint fz = flow(z, zt);
                    if (!in_Z(fz)) return "Z not preserved by the flow";
                    if (canonical_alignment(fz).d_min < dmin0) return "d_min decreased";
                }
            }
            return "";
        });
        if (!fail.empty()) {
            r.pass = false;
            detail << triple(inst.g, inst.n, inst.d) << ": " << fail;
        }
    }
    if (r.pass)
        detail << instances.size() << " instances x " << opt.samples
               << " samples, zero failures";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult embedding_roundtrip(const VerifyOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult r{6, "embed/project round-trip", true, "", 0};
    std::ostringstream detail;
    for (size_t ii = 0; ii < kGenus1Grid.size() && r.pass; ++ii) {
        auto [n, d] = kGenus1Grid[ii];
        std::vector<AlignedGraph> aligned = aligned_graphs(n, d);
        std::uint64_t si = sample_seed(opt.seed, 6000 + ii);
        std::string fail = parallel_check(opt.samples, opt.threads, [&](int i) -> std::string {
            std::mt19937_64 rng(sample_seed(si, i));
            const AlignedGraph& a = aligned[rng() % aligned.size()];
            int nc = static_cast<int>(a.core_edges.size());
            std::vector<Rational> all = random_lengths(rng, nc + a.length);
            DualPoint q = DualPoint::make(a, {all.begin(), all.begin() + nc},
                                          {all.begin() + nc, all.end()});
            MetricPoint p = embed_dual(q);
            DualPoint q2 = project_to_dual(p);
            if (q2.graph.levels != q.graph.levels || q2.core_lengths != q.core_lengths ||
                q2.level_lengths != q.level_lengths)
                return "project(embed(Q)) != Q";
            MetricPoint p2 = embed_dual(q2);
            if (!isomorphic(p2.graph, p.graph) || p2.lengths != p.lengths)
                return "embed(project(P)) != P";
            return "";
        });
        if (!fail.empty()) {
            r.pass = false;
            detail << "(" << n << "," << d << "): " << fail;
        }
    }
    if (r.pass)
        detail << kGenus1Grid.size() << " instances x " << opt.samples
               << " round-trips, exact";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult dmin_monotonicity() {
    auto t0 = Clock::now();
    CriterionResult r{7, "d_min monotone under moves", true, "", 0};
    std::ostringstream detail;
    long long moves = 0;
    for (auto [n, d] : kGenus1Grid) {
        for (const AlignedGraph& a : aligned_graphs(n, d)) {
            for (int e : a.core_edges) {
                AlignedMove mv = contract_core_edge(a, e);
                ++moves;
                if (mv.graph.d_min < a.d_min) {
                    r.pass = false;
                    detail << "core contraction decreased d_min in (" << n << "," << d << "); ";
                }
            }
            for (int j = 1; j <= a.length; ++j) {
                AlignedMove mv = radial_merge(a, j);
                ++moves;
                if (mv.graph.d_min < a.d_min) {
                    r.pass = false;
                    detail << "radial merge decreased d_min in (" << n << "," << d << "); ";
                }
            }
        }
    }
    if (r.pass) detail << "exhaustive over " << moves << " moves";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

bool parallel_vectors(const std::vector<Rational>& u, const std::vector<Rational>& v) {
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

// Independent case analysis for m <= 3 (zero vectors are unconstrained).
bool dependency_oracle(const TangentVectorList& v) {
    std::vector<std::vector<Rational>> s;
    for (const auto& vec : v.vectors)
        if (std::any_of(vec.begin(), vec.end(), [](const Rational& x) { return x != 0; }))
            s.push_back(vec);
    if (s.empty()) return true;
    if (s.size() == 1) return false;
    if (s.size() == 2) return parallel_vectors(s[0], s[1]);
    bool p01 = parallel_vectors(s[0], s[1]);
    bool p02 = parallel_vectors(s[0], s[2]);
    bool p12 = parallel_vectors(s[1], s[2]);
    if (p01 && p02) return true;  // all parallel
    if (p01 || p02 || p12) return false;  // one parallel pair, third independent
    // pairwise independent: true iff the three are linearly dependent
    SparseMatrix m(static_cast<int>(s[0].size()), 3);
    for (int c = 0; c < 3; ++c)
        for (size_t j = 0; j < s[c].size(); ++j)
            m.add(static_cast<int>(j), c, s[c][j]);
    return rank(m) == 2;
}

CriterionResult tangent_checks(const VerifyOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult r{8, "tangent predicates vs oracles", true, "", 0};
    std::ostringstream detail;
    // Exhaustive m <= 3, dim <= 3, entries in {-2..2}.
    for (int m = 1; m <= 3 && r.pass; ++m) {
        for (int dim = 1; dim <= 3 && r.pass; ++dim) {
            long long total = 1;
            for (int i = 0; i < m * dim; ++i) total *= 5;
            std::string fail = parallel_check(
                static_cast<int>(total), opt.threads, [&](int idx) -> std::string {
                    TangentVectorList v;
                    long long code = idx;
                    for (int c = 0; c < m; ++c) {
                        std::vector<Rational> vec(dim);
                        for (int j = 0; j < dim; ++j) {
                            vec[j] = static_cast<int>(code % 5) - 2;
                            code /= 5;
                        }
                        v.vectors.push_back(std::move(vec));
                    }
                    if (has_nonvanishing_dependency(v) != dependency_oracle(v))
                        return "dependency predicate disagrees with oracle";
                    return "";
                });
            if (!fail.empty()) {
                r.pass = false;
                detail << "m=" << m << " dim=" << dim << ": " << fail;
            }
        }
    }
    // fiber_witness over random draws.
    if (r.pass) {
        std::uint64_t si = sample_seed(opt.seed, 8000);
        std::string fail =
            parallel_check(opt.fiber_draws, opt.threads, [&](int i) -> std::string {
                std::mt19937_64 rng(sample_seed(si, i));
                int d = 1 + static_cast<int>(rng() % 4);
                int r1 = 2 + static_cast<int>(rng() % 3);  // r+1 coordinates
                std::vector<Rational> v(r1);
                if (rng() % 4 == 0) {
                    Rational c = random_rational(rng, 5, 3) - 2;
                    std::fill(v.begin(), v.end(), c);  // zero class
                } else {
                    for (auto& x : v) x = random_rational(rng, 11, 4) - 3;
                }
                auto w = fiber_witness(v, d);
                bool expect_none = (d == 1 && zero_mod_diagonal(v));
                if (w.has_value() == expect_none)
                    return expect_none ? "witness returned for d=1, v=0"
                                       : "witness missing";
                if (w) {
                    if (!equal_mod_diagonal(derivative_at_marked_point(*w), v))
                        return "witness does not map to v";
                    if (has_basepoint(*w)) return "witness has a basepoint";
                }
                return "";
            });
        if (!fail.empty()) {
            r.pass = false;
            detail << "fiber: " << fail;
        }
    }
    if (r.pass)
        detail << "exhaustive m<=3 grid and " << opt.fiber_draws << " fiber draws";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult sharpness_probe(const VerifyOptions& opt) {
    auto t0 = Clock::now();
    CriterionResult r{9, "edge bound sharpness (+2 adds nothing)", true, "", 0};
    std::ostringstream detail;
    auto check = [&](int g, int n, int d) {
        EnumerationRequest req;
        req.g = g;
        req.n = n;
        req.d = d;
        req.use_cache = opt.use_cache;
        GraphCatalog base = stable_graphs(req);
        req.max_edges = base.edge_bound + 2;
        GraphCatalog probe = stable_graphs(req);
        if (base.classes.size() != probe.classes.size() ||
            !std::equal(base.classes.begin(), base.classes.end(), probe.classes.begin(),
                        [](const auto& a, const auto& b) { return a.first == b.first; })) {
            r.pass = false;
            detail << triple(g, n, d) << ": probe found new classes; ";
        }
    };
    for (auto [g, n, d] : kGenus0Grid) check(g, n, d);
    for (auto [n, d] : kGenus1Grid) check(1, n, d);
    if (r.pass) detail << "all grid instances stable under bound+2";
    r.detail = detail.str();
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_retract(int g, int n, int d, const VerifyOptions& opt,
                                         std::vector<Rational> times) {
    if (times.empty()) times = {{1, 7}, {1, 3}, {1, 2}, {5, 7}, {9, 10}};
    std::vector<CriterionResult> out;
    Instance inst = load_instance(g, n, d, opt.use_cache);
    std::vector<AlignedGraph> aligned;
    if (g == 1 && d >= 2) aligned = aligned_graphs(n, d);
    auto row = [&](int id, const std::string& name, auto&& fn) {
        auto t0 = Clock::now();
        CriterionResult r{id, name, true, "", 0};
        if (inst.classes.empty()) {
            r.detail = "no boundary classes; vacuous";
        } else {
            std::uint64_t si = sample_seed(opt.seed, 100 + id);
            std::string fail = parallel_check(opt.samples, opt.threads, [&](int i) {
                std::mt19937_64 rng(sample_seed(si, i));
                const DecoratedGraph& gr = inst.classes[rng() % inst.classes.size()];
                MetricPoint p = MetricPoint::make(gr, random_lengths(rng, gr.num_edges()));
                return fn(rng, gr, p);
            });
            r.pass = fail.empty();
            r.detail = r.pass ? std::to_string(opt.samples) + " samples, exact" : fail;
        }
        r.seconds = seconds_since(t0);
        out.push_back(std::move(r));
    };
    row(1, "flow(P,0) = P",
        [&](std::mt19937_64&, const DecoratedGraph&, const MetricPoint& p) -> std::string {
            return metric_points_equal(flow(p, 0), p) ? "" : "identity violated";
        });
    MetricPoint target;
    {
        DecoratedGraph sp = sprout(interior_graph(g, n, d));
        std::vector<Rational> uni(sp.num_edges(), Rational(1, std::max(d, 1)));
        target = MetricPoint::make(std::move(sp), std::move(uni));
    }
    row(2, "flow(P,1) = uniform sprouted target",
        [&](std::mt19937_64&, const DecoratedGraph&, const MetricPoint& p) -> std::string {
            return metric_points_equal(flow(p, 1), target) ? "" : "endpoint mismatch";
        });
    row(3, "gluing coherence under contraction",
        [&](std::mt19937_64& rng, const DecoratedGraph& gr,
            const MetricPoint&) -> std::string {
            if (gr.num_edges() < 2) return "";
            int e = static_cast<int>(rng() % gr.num_edges());
            Contraction c = contract_edge(gr, e);
            std::vector<Rational> lprime = random_lengths(rng, c.graph.num_edges());
            std::vector<Rational> ext(gr.num_edges(), Rational(0));
            for (int f = 0; f < gr.num_edges(); ++f)
                if (c.edge_map[f] >= 0) ext[f] = lprime[c.edge_map[f]];
            Rational t = random_time(rng);
            MetricPoint after = flow_raw(gr, ext, t);
            MetricPoint before = flow(MetricPoint::make(c.graph, lprime), t);
            return metric_points_equal(after, before) ? "" : "gluing violated";
        });
    row(4, "shell identity p_v(t) = t/d + (1-t) p_v(0)",
        [&](std::mt19937_64& rng, const DecoratedGraph&,
            const MetricPoint& p) -> std::string {
            Rational t = random_time(rng);
            SproutFlow s0 = flow_on_sprout(p, 0);
            SproutFlow st = flow_on_sprout(p, t);
            auto d0 = leaf_distances(s0);
            auto dt = leaf_distances(st);
            for (size_t k = 0; k < d0.size(); ++k)
                if (dt[k].second != t / d + (1 - t) * d0[k].second)
                    return "closed form violated";
            return "";
        });
    {
        auto t0 = Clock::now();
        CriterionResult r{5, "Z-preservation and d_min monotonicity", true, "", 0};
        if (g != 1) {
            r.detail = "not applicable (genus 0)";
        } else if (aligned.empty()) {
            r.detail = "tilde category empty; vacuous";
        } else {
            std::uint64_t si = sample_seed(opt.seed, 105);
            std::string fail = parallel_check(opt.samples, opt.threads, [&](int i) -> std::string {
                std::mt19937_64 rng(sample_seed(si, i));
                const AlignedGraph& a = aligned[rng() % aligned.size()];
                int nc = static_cast<int>(a.core_edges.size());
                std::vector<Rational> all = random_lengths(rng, nc + a.length);
                DualPoint q = DualPoint::make(a, {all.begin(), all.begin() + nc},
                                              {all.begin() + nc, all.end()});
                MetricPoint z = embed_dual(q);
                int dmin0 = canonical_alignment(z).d_min;
                for (const Rational& zt : times) {
                    MetricPoint fz = flow(z, zt);
                    if (!in_Z(fz)) return "Z not preserved";
                    if (canonical_alignment(fz).d_min < dmin0) return "d_min decreased";
                }
                return "";
            });
            r.pass = fail.empty();
            r.detail = r.pass ? std::to_string(opt.samples) + " samples x " +
                                    std::to_string(times.size()) + " times, exact"
                              : fail;
        }
        r.seconds = seconds_since(t0);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
    std::vector<CriterionResult> out;

    std::vector<SymmetricDeltaComplex> xs0, xs1;
    std::vector<Instance> instances;
    for (auto [g, n, d] : kGenus0Grid) {
        EnumerationRequest req;
        req.g = g;
        req.n = n;
        req.d = d;
        req.use_cache = opt.use_cache;
        GraphCatalog cat = stable_graphs(req);
        Instance inst{g, n, d, {}};
        for (const auto& [enc, gr] : cat.classes) inst.classes.push_back(gr);
        xs0.push_back(build_virtual_complex(cat));
        instances.push_back(std::move(inst));
    }
    for (auto [n, d] : kGenus1Grid) {
        xs1.push_back(build_genus1_complex(n, d));
        instances.push_back(load_instance(1, n, d, opt.use_cache));
    }
    std::vector<SymmetricDeltaComplex> all = xs0;
    all.insert(all.end(), xs1.begin(), xs1.end());

    out.push_back(contractibility(1, "genus-0 virtual complexes contractible", xs0, 120.0));
    out.push_back(contractibility(2, "genus-1 dual complexes contractible", xs1, 600.0));
    out.push_back(euler_check(all));
    out.push_back(chain_soundness(all));
    out.push_back(retract_invariants(opt, instances));
    out.push_back(embedding_roundtrip(opt));
    out.push_back(dmin_monotonicity());
    out.push_back(tangent_checks(opt));
    out.push_back(sharpness_probe(opt));
    return out;
}

}  // namespace mdc
