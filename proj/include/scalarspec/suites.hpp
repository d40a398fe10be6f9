// SPDX-License-Identifier: Apache-2.0
//
// Verification suites: batches of identity, bound, lemma-machinery,
// discrete-confirmation and centering checks over a parameter sweep, each
// producing deterministic report rows.  Sweep cells may run concurrently
// (capped by SCALARSPEC_THREADS); row order is fixed by sorting afterward.

#pragma once

#include "scalarspec/report.hpp"

namespace scalarspec {

enum class Suite { Identities, Bounds, Lemmas, Discrete, Center, All };

Suite suite_from_string(const std::string& name);
std::string to_string(Suite suite);

/// Execute one suite over the sweep; deterministic given the config/seed.
RunReport run_suite(const SweepConfig& config, Suite suite);

/// Concurrency cap: SCALARSPEC_THREADS (0 or unset means hardware default).
int thread_cap();

// ---------------------------------------------------------------------------
// Fuzz drivers shared between the suites and the acceptance harness
// ---------------------------------------------------------------------------

/// Worst relative residual of the two Newton identities and the Gauss
/// relation over `trials` random curvature vectors.
double newton_identity_fuzz(int n, int trials, std::uint64_t seed);

/// Smallest pointwise gradient-gap value over `trials` constrained samples
/// with random gradients (expected >= -1e-12 for n >= 5).
double gradient_gap_fuzz_min(int n, int trials, std::uint64_t seed);

struct MoebiusFuzz {
  double max_norm_defect = 0.0;       // | |F_g(p)| - 1 |
  double max_conformal_defect = 0.0;  // relative conformal-factor error
  double max_differential_defect = 0.0;  // relative FD mismatch of dF_g
};

/// Random (g, p, v, w) trials in the given ambient dimension with |g| <= 0.95
/// (|g| <= 0.9 for the finite-difference comparison).
MoebiusFuzz moebius_fuzz(int ambient_dim, int trials, std::uint64_t seed);

}  // namespace scalarspec
