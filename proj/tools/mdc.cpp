#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdc/aligned.hpp"
#include "mdc/complex.hpp"
#include "mdc/enumerate.hpp"
#include "mdc/graph.hpp"
#include "mdc/flow.hpp"
#include "mdc/tangent.hpp"
#include "mdc/verify.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content << "\n";
}

std::string read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<mdc::Rational> parse_times(const std::string& csv) {
    std::vector<mdc::Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        mdc::Rational t = mdc::parse_rational(item);
        if (t < 0 || t > 1) throw std::invalid_argument("time outside [0,1]: " + item);
        out.push_back(t);
    }
    return out;
}

void print_results(const std::vector<mdc::CriterionResult>& results, bool& ok) {
    for (const auto& r : results) {
        if (!r.pass) ok = false;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name
                  << "  (" << std::fixed << std::setprecision(2) << r.seconds << "s)  "
                  << r.detail << "\n";
    }
}

void print_betti(const mdc::BettiTable& t, bool reduced) {
    std::cout << (reduced ? "reduced" : "unreduced") << " rational Betti numbers\n";
    std::cout << "  p    generators    b_p\n";
    for (size_t i = 0; i < t.betti.size(); ++i) {
        int p = t.min_p + static_cast<int>(i);
        std::cout << "  " << std::setw(3) << p << "  " << std::setw(10)
                  << (p < 0 ? 1 : t.alive_counts[p]) << "    " << t.betti[i] << "\n";
    }
    std::cout << "chi from generator counts: " << t.euler_from_counts << "\n";
    std::cout << "chi from Betti numbers:    " << t.euler_from_betti << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mdc;
    CLI::App app{"Dual complexes of Kontsevich spaces: enumeration, exact homology, "
                 "retract flow, tangent checks"};
    app.require_subcommand(1);

    int g = 0, n = 0, d = 0;
    int max_edges = -1;
    bool no_cache = false, radial = false, unreduced = false;
    int threads = 0, samples = 1000, fiber_draws = 10000;
    std::uint64_t seed = 20260824;
    std::string out_path = "-", in_path, kind, check, criterion = "dmin", times_csv, suite = "desk";

    auto add_gnd = [&](CLI::App* sub, bool need_g = true) {
        if (need_g) sub->add_option("-g,--genus", g, "genus (0 or 1)")->required();
        sub->add_option("-n,--markings", n, "number of markings")->required();
        sub->add_option("-d,--degree", d, "total degree")->required();
    };

    CLI::App* enumerate = app.add_subcommand("enumerate", "list stable graph classes");
    add_gnd(enumerate);
    enumerate->add_flag("--radial", radial, "list radially aligned classes (genus 1)");
    enumerate->add_option("--max-edges", max_edges, "override the derived edge bound");
    enumerate->add_flag("--no-cache", no_cache, "ignore and bypass the on-disk cache");
    enumerate->add_option("--nonempty-criterion", criterion,
                          "stratum nonemptiness reading for --radial")
        ->check(CLI::IsMember({"dmin", "rad-aware"}));
    enumerate->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* complex = app.add_subcommand("complex", "build a dual complex");
    complex->add_option("--kind", kind, "virtual or genus1")
        ->required()
        ->check(CLI::IsMember({"virtual", "genus1"}));
    add_gnd(complex);
    complex->add_flag("--no-cache", no_cache, "bypass the enumeration cache");
    complex->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* homology = app.add_subcommand("homology", "Betti table of a complex file");
    homology->add_option("file", in_path, "complex JSON file")->required();
    homology->add_flag("--unreduced", unreduced, "unreduced homology");

    CLI::App* retract = app.add_subcommand("retract", "sampled retract-flow invariants");
    add_gnd(retract);
    retract->add_option("--samples", samples, "samples per invariant");
    retract->add_option("--seed", seed, "random seed");
    retract->add_option("--times", times_csv, "comma-separated rational times in [0,1]");
    retract->add_flag("--no-cache", no_cache, "bypass the enumeration cache");
    retract->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* tangent = app.add_subcommand("tangent", "tangent-space predicates");
    tangent->add_option("--check", check, "dependency or fiber")
        ->required()
        ->check(CLI::IsMember({"dependency", "fiber"}));
    tangent->add_option("--input", in_path, "input JSON file")->required();

    CLI::App* embed = app.add_subcommand("embed", "embed a dual point into the virtual complex");
    embed->add_option("--input", in_path, "dual point JSON file")->required();
    embed->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* project = app.add_subcommand("project", "project a Z-point to a dual point");
    project->add_option("--input", in_path, "metric point JSON file")->required();
    project->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* dot = app.add_subcommand("dot", "DOT export of a graph JSON file");
    dot->add_option("--input", in_path, "graph or aligned-graph JSON file")->required();
    dot->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"desk"}));
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--samples", samples, "samples per instance");
    verify->add_option("--fiber-draws", fiber_draws, "fiber_witness random draws");
    verify->add_flag("--no-cache", no_cache, "bypass the enumeration cache");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enumerate->parsed()) {
            if (radial) {
                if (g != 1)
                    throw std::invalid_argument("--radial requires --genus 1");
                NonemptinessCriterion crit = criterion == "dmin"
                                                 ? NonemptinessCriterion::DMin
                                                 : NonemptinessCriterion::RadAware;
                nlohmann::ordered_json j;
                j["g"] = 1;
                j["n"] = n;
                j["d"] = d;
                j["criterion"] = criterion;
                j["aligned"] = nlohmann::ordered_json::array();
                for (const AlignedGraph& a : aligned_graphs(n, d, crit))
                    j["aligned"].push_back(nlohmann::ordered_json::parse(to_json(a)));
                write_output(out_path, j.dump());
            } else {
                EnumerationRequest req;
                req.g = g;
                req.n = n;
                req.d = d;
                if (max_edges >= 0) req.max_edges = max_edges;
                req.use_cache = !no_cache;
                write_output(out_path, catalog_to_json(stable_graphs(req)));
            }
        } else if (complex->parsed()) {
            SymmetricDeltaComplex x;
            if (kind == "virtual") {
                EnumerationRequest req;
                req.g = g;
                req.n = n;
                req.d = d;
                req.use_cache = !no_cache;
                x = build_virtual_complex(stable_graphs(req));
            } else {
                if (g != 1)
                    throw std::invalid_argument("--kind genus1 requires --genus 1");
                x = build_genus1_complex(n, d);
            }
            write_output(out_path, complex_to_json(x));
        } else if (homology->parsed()) {
            SymmetricDeltaComplex x = complex_from_json(read_input(in_path));
            print_betti(betti_numbers(x, !unreduced), !unreduced);
        } else if (retract->parsed()) {
            if (d < 1) throw std::invalid_argument("retract requires d >= 1");
            if (g == 0 && n + d < 3)
                throw std::invalid_argument(
                    "retract refused for g=0 with n+d<3 (unstable retract target)");
            VerifyOptions opt;
            opt.seed = seed;
            opt.samples = samples;
            opt.use_cache = !no_cache;
            opt.threads = threads;
            std::cout << "retract invariants for (g,n,d) = (" << g << "," << n << ","
                      << d << "), seed " << seed << "\n";
            bool ok = true;
            print_results(run_retract(g, n, d, opt, parse_times(times_csv)), ok);
            return ok ? 0 : 1;
        } else if (tangent->parsed()) {
            nlohmann::json j = nlohmann::json::parse(read_input(in_path));
            if (check == "dependency") {
                TangentVectorList v;
                for (const auto& jv : j.at("vectors")) {
                    std::vector<Rational> vec;
                    for (const auto& x : jv) vec.push_back(parse_rational(x.get<std::string>()));
                    v.vectors.push_back(std::move(vec));
                }
                std::cout << (has_nonvanishing_dependency(v) ? "true" : "false") << "\n";
            } else {
                std::vector<Rational> v;
                for (const auto& x : j.at("v")) v.push_back(parse_rational(x.get<std::string>()));
                auto w = fiber_witness(v, j.at("d").get<int>());
                if (!w) {
                    std::cout << "none\n";
                } else {
                    nlohmann::ordered_json jw;
                    jw["roots"] = nlohmann::ordered_json::array();
                    for (const auto& ri : w->roots) {
                        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
                        for (const auto& y : ri) jr.push_back(to_string(y));
                        jw["roots"].push_back(std::move(jr));
                    }
                    std::cout << jw.dump() << "\n";
                }
            }
        } else if (embed->parsed()) {
            DualPoint q = dual_from_json(read_input(in_path));
            write_output(out_path, to_json(embed_dual(q)));
        } else if (project->parsed()) {
            MetricPoint p = metric_from_json(read_input(in_path));
            write_output(out_path, to_json(project_to_dual(p)));
        } else if (dot->parsed()) {
            nlohmann::json j = nlohmann::json::parse(read_input(in_path));
            if (j.contains("levels")) {
                AlignedGraph a = aligned_from_json(j.dump());
                write_output(out_path, to_dot(a.base, &a.levels));
            } else {
                write_output(out_path, to_dot(graph_from_json(j.dump())));
            }
        } else if (verify->parsed()) {
            VerifyOptions opt;
            opt.seed = seed;
            opt.samples = samples;
            opt.fiber_draws = fiber_draws;
            opt.use_cache = !no_cache;
            opt.threads = threads;
            std::cout << "acceptance suite '" << suite << "', seed " << seed << "\n";
            bool ok = true;
            print_results(run_acceptance(opt), ok);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
