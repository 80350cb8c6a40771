// Copyright 2026 The locc3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Branch-tree execution of protocol plans: exhaustive enumeration of every
 * measurement path, seeded Monte Carlo sampling, and the determinism verdict.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "locc3/plan.hpp"
#include "locc3/qcore.hpp"
#include "locc3/tolerances.hpp"

namespace locc3 {

/// A branch path is the list of outcomes (1 or 2), one per step.
using BranchPath = std::vector<int>;

inline std::string path_string(const BranchPath& path) {
    if (path.empty()) return "root";
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "-" : "") + std::to_string(path[i]);
    return out;
}

struct Leaf {
    BranchPath path;
    double probability = 0.0;
    std::optional<StateVector> state;          // after corrections
    std::optional<double> fidelity;             // corrected leaf vs target
    std::optional<double> uncorrected_fidelity; // same path, corrections skipped
    bool negligible = false;                    // probability below the floor; fidelity omitted
};

struct ExecutionReport {
    std::vector<Leaf> leaves;
    double total_probability = 0.0;
    bool deterministic = false;
    double max_fidelity_defect = 0.0;
};

namespace detail {

struct Branch {
    BranchPath path;
    double probability = 1.0;
    StateVector corrected;
    StateVector uncorrected;
    bool dead = false;
};

} // namespace detail

inline ExecutionReport execute_exhaustive(const ProtocolPlan& plan, const Tolerances& tol = {}) {
    std::vector<detail::Branch> frontier{{{}, 1.0, plan.initial, plan.initial, false}};
    for (const ProtocolStep& step : plan.steps) {
        std::vector<detail::Branch> next;
        next.reserve(frontier.size() * 2);
        for (const detail::Branch& b : frontier) {
            for (int k = 1; k <= 2; ++k) {
                detail::Branch child;
                child.path = b.path;
                child.path.push_back(k);
                const LocalOperator& op = step.pair.outcome(k);
                const double p = b.dead ? 0.0 : branch_probability(op, b.corrected);
                child.probability = b.probability * p;
                if (b.dead || p < tol.negligible_branch) {
                    child.dead = true;
                    child.corrected = b.corrected;
                    child.uncorrected = b.uncorrected;
                } else {
                    const StateVector measured = (1.0 / std::sqrt(p)) * apply_local(op, b.corrected);
                    child.corrected = step.corrections[k - 1].apply(measured);
                    const StateVector raw = apply_local(op, b.uncorrected);
                    child.uncorrected = raw.norm() > 0.0 ? raw.normalized() : raw;
                }
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    ExecutionReport report;
    bool all_faithful = true;
    for (const detail::Branch& b : frontier) {
        Leaf leaf;
        leaf.path = b.path;
        leaf.probability = b.probability;
        report.total_probability += b.probability;
        if (b.dead || b.probability < tol.negligible_branch) {
            leaf.negligible = true;
        } else {
            leaf.state = b.corrected;
            leaf.fidelity = fidelity_up_to_phase(b.corrected, plan.target);
            leaf.uncorrected_fidelity =
                b.uncorrected.norm() > 0.0 ? fidelity_up_to_phase(b.uncorrected, plan.target) : 0.0;
            report.max_fidelity_defect = std::max(report.max_fidelity_defect, 1.0 - *leaf.fidelity);
            if (*leaf.fidelity < 1.0 - tol.fidelity) all_faithful = false;
        }
        report.leaves.push_back(std::move(leaf));
    }
    report.deterministic = all_faithful && std::abs(report.total_probability - 1.0) <= tol.probability;
    return report;
}

/// Deterministic iff the total probability is 1 and every leaf reaches the
/// target; the reason names the first failure otherwise.
inline FeasibilityVerdict verify_deterministic(const ExecutionReport& report, const Tolerances& tol = {}) {
    const double deficit = 1.0 - report.total_probability;
    if (std::abs(deficit) > tol.probability) {
        FeasibilityVerdict v{false, "probability deficit: total " + std::to_string(report.total_probability), deficit, {}};
        return v;
    }
    for (const Leaf& leaf : report.leaves) {
        if (leaf.fidelity && *leaf.fidelity < 1.0 - tol.fidelity) {
            const double defect = 1.0 - *leaf.fidelity;
            return {false, "leaf " + path_string(leaf.path) + " misses the target (fidelity defect " + std::to_string(defect) + ")",
                    defect, {}};
        }
    }
    if (!report.deterministic) return {false, "report is flagged non-deterministic", 0.0, {}};
    return FeasibilityVerdict::ok("every leaf reaches the target");
}

/// SplitMix64 (Steele, Lea, Flood). Splitting seeds a fresh stream from the
/// parent's next output.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    SplitMix64 split() { return SplitMix64(next()); }

    /// Independent stream for one trial of a seeded experiment.
    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        SplitMix64 root(seed);
        SplitMix64 mixer(root.next() ^ (trial * 0xD1B54A32D192ED03ull));
        return mixer.split();
    }

  private:
    std::uint64_t state_;
};

struct SampledReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<BranchPath> paths;       // every path, in exhaustive order
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> exact;           // exact leaf probabilities
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double chi_square_bound = 0.0;       // 3-sigma (0.9973) quantile
    double max_z = 0.0;                  // largest |f - p| / sigma over leaves with 0 < p < 1
    bool within_envelope = true;
};

/// Samples one outcome per step from the exact conditional probabilities.
/// Trial t uses SplitMix64::for_trial(seed, t), so the result depends only on
/// (plan, trials, seed).
inline SampledReport execute_sampled(const ProtocolPlan& plan, std::uint64_t trials, std::uint64_t seed,
                                     const Tolerances& tol = {}) {
    if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    const ExecutionReport exact = execute_exhaustive(plan, tol);
    const std::size_t steps = plan.steps.size();
    const std::size_t leaves = exact.leaves.size();

    // Heap-ordered tree of path masses: node n has children 2n+1 (outcome 1)
    // and 2n+2 (outcome 2); leaves sit at the bottom level in exhaustive order.
    std::vector<double> mass((std::size_t{1} << (steps + 1)) - 1, 0.0);
    const std::size_t first_leaf = leaves - 1;
    for (std::size_t i = 0; i < leaves; ++i) mass[first_leaf + i] = exact.leaves[i].probability;
    for (std::size_t n = first_leaf; n-- > 0;) mass[n] = mass[2 * n + 1] + mass[2 * n + 2];

    SampledReport r;
    r.trials = trials;
    r.seed = seed;
    r.counts.assign(leaves, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, t);
        std::size_t node = 0;
        for (std::size_t s = 0; s < steps; ++s) {
            const double total = mass[node];
            const double p1 = total > 0.0 ? mass[2 * node + 1] / total : 0.5;
            node = rng.uniform() < p1 ? 2 * node + 1 : 2 * node + 2;
        }
        ++r.counts[node - first_leaf];
    }

    const double n = static_cast<double>(trials);
    int support = 0;
    for (std::size_t i = 0; i < leaves; ++i) {
        r.paths.push_back(exact.leaves[i].path);
        const double p = exact.leaves[i].probability / exact.total_probability;
        r.exact.push_back(p);
        r.frequencies.push_back(static_cast<double>(r.counts[i]) / n);
        if (p > 0.0) {
            ++support;
            const double diff = static_cast<double>(r.counts[i]) - n * p;
            r.chi_square += diff * diff / (n * p);
            if (p < 1.0) r.max_z = std::max(r.max_z, std::abs(diff) / std::sqrt(n * p * (1.0 - p)));
        } else if (r.counts[i] > 0) {
            r.chi_square = std::numeric_limits<double>::infinity();
        }
    }
    r.degrees_of_freedom = std::max(0, support - 1);
    if (r.degrees_of_freedom > 0) {
        const boost::math::chi_squared_distribution<double> dist(r.degrees_of_freedom);
        r.chi_square_bound = boost::math::quantile(dist, 0.9973);
        r.within_envelope = r.chi_square <= r.chi_square_bound;
    } else {
        r.within_envelope = r.chi_square == 0.0;
    }
    return r;
}

} // namespace locc3
