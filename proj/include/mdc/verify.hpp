#ifndef MDC_VERIFY_HPP
#define MDC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mdc/rational.hpp"

namespace mdc {

struct VerifyOptions {
    std::uint64_t seed = 20260824;
    int samples = 1000;       // metric/dual point samples per instance
    int fiber_draws = 10000;  // fiber_witness random draws
    bool use_cache = true;
    int threads = 0;  // 0 = hardware concurrency
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance suite (criteria 1-9). Deterministic given seed;
// thread-count independent.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);

// Per-instance retract invariant table (flow identities, endpoint, gluing,
// Z-preservation, shell closed form) for the CLI retract subcommand. The
// times apply to the Z-preservation rows (genus 1); empty uses the default
// set {1/7, 1/3, 1/2, 5/7, 9/10}.
std::vector<CriterionResult> run_retract(int g, int n, int d, const VerifyOptions& opt,
                                         std::vector<Rational> times);

// Deterministic per-sample stream: mixes the seed with the sample index.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mdc

#endif
