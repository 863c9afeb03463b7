#pragma once

// From a parsed config to rings, bracket tables, KP contexts and command reports.

#include <optional>
#include <string>
#include <vector>

#include "kpalg/config.hpp"
#include "kpalg/geometry.hpp"
#include "kpalg/report.hpp"
#include "kpalg/skewnf.hpp"

namespace kpalg {

struct Algebra {
    RingPtr ring;
    BracketTable P;
};

/// Parses every polynomial and element of the config against its generators.
Algebra build_algebra(const AlgebraConfig& cfg, const RingOptions& opts = {});

struct KPSetup {
    KPPtr kp;
    /// Present for `metric: construct`.
    std::optional<MetricConstruction> construction;
    KPVerifyReport verify;
};

/// Assembles g and eta (or runs the metric construction) and evaluates the
/// KP relation without throwing on failure.
KPSetup build_kp(const AlgebraConfig& cfg, const Algebra& alg);

struct RunOptions {
    std::size_t pair_budget = BuchbergerOptions{}.pair_budget;
    /// Argument of `laplacian`.
    std::optional<std::string> expr;
};

const std::vector<std::string>& command_names();

/// Runs one command. Verification failures of the command's own checks are
/// reported as FAIL lines; failures of prerequisites throw VerificationError.
Report run_command(const std::string& command, const AlgebraConfig& cfg, const RunOptions& opts = {});

}  // namespace kpalg
