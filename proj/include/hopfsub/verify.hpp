#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfsub/geometry.hpp"
#include "hopfsub/report.hpp"

namespace hopfsub {

struct RunConfig {
    std::vector<std::string> fibrations;  // empty means the full catalogue
    int samples = 500;
    std::uint64_t seed = 12345;
    bool expensive = false;
    std::string format = "json";  // json | markdown
    std::map<std::string, double> tolerance_overrides;
    int m = 2;  // family parameters for pi_C, pi_A, pi_H, pi_B and composites
    int t = 1;
};

Tolerances tolerances_from(const RunConfig& config);

/// Evaluator-level checks: quadric mapping, submersion isometry, splitting
/// orthogonality, differential rank, lifts, fibre geodesics, transport and
/// holonomy isometries, and the pi9 polynomial conformance.
std::vector<IdentityResult> membership_checks(const Fibration& f, int samples,
                                              std::uint64_t seed, const Tolerances& tol);

/// Composite fibrations: chaining, fibre-dimension additivity, orbit equality.
std::vector<IdentityResult> composite_checks(const Fibration& f, int samples,
                                             std::uint64_t seed, const Tolerances& tol);

/// Composition-algebra audits across all six algebras.
std::vector<IdentityResult> algebra_checks(int samples, std::uint64_t seed,
                                           const Tolerances& tol);

/// Componentwise agreement of the algebra-multiplication evaluator of pi9
/// with the literal nine-component polynomial table.
IdentityResult pi9_conformance(int samples, std::uint64_t seed, const Tolerances& tol);

VerificationReport verify_fibration(const std::string& id, const RunConfig& config);

/// The full driver: an algebra report followed by one report per selected
/// fibration, in catalogue order.
std::vector<VerificationReport> run_verify(const RunConfig& config);

std::string report_to_json(const VerificationReport& report, const RunConfig& config,
                           const Tolerances& tol);
std::string report_to_markdown(const VerificationReport& report);
std::string summary_to_json(const std::vector<VerificationReport>& reports,
                            const RunConfig& config);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace hopfsub
