#pragma once

#include "zap/router.hpp"
#include "zap/scheduler.hpp"

#include <random>
#include <vector>

namespace zap {

enum class PlacementKind { Initial, Stage, Layer };

/// One full qubit placement at a moment of the compiled program.
struct PlacementPoint {
    PlacementKind kind = PlacementKind::Initial;
    int index = 0; // stage/layer number
    Occupancy occ;
};

/// The placement timeline: Initial, then Stage k / Layer k alternating.
/// Layer k holds the retained qubits (stage k intersect stage k+1) at
/// their stage-k slots and everyone else in storage; the final layer
/// returns every qubit to storage.
struct PlacementSequence {
    std::vector<PlacementPoint> points;

    std::size_t n_transitions() const { return points.empty() ? 0 : points.size() - 1; }
    int stage_point(int k) const { return 1 + 2 * k; }
    int layer_point(int k) const { return 2 + 2 * k; }
};

/// Row-major storage fill: qubit i sits at (i / cols, i % cols).
PlacementPoint initial_placement(const ArchitectureConfig& cfg, std::size_t n_qubits);

/// Greedy stage assignment: each gate takes the free site and orientation
/// minimizing the flight time of its two qubits from their previous
/// positions; exact ties break uniformly at random.
PlacementPoint propose_stage_placement(const Circuit& c, const StagePlan& plan, int k,
                                       const PlacementPoint& prev, const ArchitectureConfig& cfg,
                                       std::mt19937_64& rng);

/// Full proposal for a stage plan. With reuse off, every layer returns
/// every participant to storage.
PlacementSequence propose_sequence(const Circuit& c, const StagePlan& plan,
                                   const ArchitectureConfig& cfg, bool reuse,
                                   std::mt19937_64& rng);

/// Checks every point is a full placement, stage participants sit paired
/// on sites (and match the blockade geometry), non-participants sit in
/// storage, and the final layer is all-storage. Throws std::logic_error
/// on violation.
void validate_placement(const PlacementSequence& seq, const Circuit& c, const StagePlan& plan,
                        const ArchitectureConfig& cfg);

struct TransitionCost {
    double movement_us = 0; // sum of per-move flight times over endpoint distance
    int batches = 0;        // order-preserving batch count
};

TransitionCost transition_cost(const Occupancy& from, const Occupancy& to,
                               const ArchitectureConfig& cfg);

struct CostBreakdown {
    double movement_us = 0;
    int batches = 0;
    double lambda = 0;
    double total() const { return movement_us + lambda * batches; }
};

CostBreakdown placement_cost(const PlacementSequence& seq, const ArchitectureConfig& cfg,
                             double lambda);

struct SaParams {
    double t_initial = -1;    // < 0: initial cost / ln 2
    double cooling = 0.95;    // geometric factor per level
    double frozen_ratio = 1e-3; // stop at t_initial * ratio
    int iters_per_qubit = 100;  // iterations per temperature level per qubit
    double lambda = -1;       // < 0: mean batch flight time of the proposal
    int batch_slack = 0;      // allowed batch-count growth per acceptance
    std::uint64_t seed = 1;
    int restarts = 1;
    bool audit = false;

    static SaParams from_config(const KeyValueConfig& kv);
    std::string echo() const;
};

/// One acceptance decision, for statistical audit of the annealer.
struct AuditRecord {
    double temperature = 0;
    double delta_cost = 0;
    double probability = 0; // min(1, exp(-delta/T))
    bool batch_ok = false;  // batch-count guard passed
    bool accepted = false;
};

struct AnnealResult {
    PlacementSequence best;
    CostBreakdown proposal_cost;
    CostBreakdown best_cost;
    double lambda_used = 0;
    double t_initial_used = 0;
    std::uint64_t seed = 0;
    std::size_t proposals = 0;
    std::size_t accepts = 0;
    std::vector<double> best_cost_per_level; // nonincreasing
    std::vector<AuditRecord> audit;          // filled when params.audit
};

/// Simulated annealing over three move kinds: swap the site assignments
/// of two gates in a stage, flip one gate's slot orientation, or send a
/// returning qubit to a different free storage trap. An improving move
/// must not raise the batch count; a worsening move passes a Metropolis
/// draw at the current temperature under the same batch guard.
AnnealResult anneal_placement(const PlacementSequence& proposal, const Circuit& c,
                              const StagePlan& plan, const ArchitectureConfig& cfg,
                              const SaParams& params);

} // namespace zap
