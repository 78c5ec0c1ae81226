#ifndef MPSIG_COST_REPORT_HPP
#define MPSIG_COST_REPORT_HPP

#include <string>
#include <vector>

#include "mpsig/multiproxy.hpp"

namespace mpsig {

enum class Phase {
    ProxyGenerationWithVerification,
    MultiProxySignatureGeneration,
    MultiProxyVerification,
};

std::string phase_name(Phase phase);

struct PhaseCosts {
    Phase phase;
    OpCounter counts;
    unsigned n = 0;
};

/// Runs one full protocol execution for a group of n proxies with a fresh
/// counter per phase. Phase boundaries: delegation plus all share
/// verifications; the signing session (key derivation, rounds 1-2, partial
/// verification, aggregation); final verification. Counts depend only on n,
/// never on key or message values.
std::vector<PhaseCosts> measure(unsigned n, RandomSource& rng, const ParamsPtr& params);

/// Reference formula claimed for this phase (for annotation only; the
/// measured counts are the ground truth, and the claimed verification-phase
/// figure is itself quoted inconsistently in its source).
std::string claimed_formula(Phase phase);
std::string claimed_formula_evaluated(Phase phase, unsigned n);

/// Published cost rows of Lin et al.'s scheme, rendered as a static
/// annotation block for comparison.
std::string lin_reference_block();

/// Aligned table: measured E/M/I/H per phase next to the claimed formulas.
std::string render_table(const std::vector<PhaseCosts>& costs);

std::string render_csv(const std::vector<PhaseCosts>& costs);

}  // namespace mpsig

#endif
