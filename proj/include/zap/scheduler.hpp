#pragma once

#include "zap/circuit.hpp"

#include <map>
#include <string>
#include <vector>

namespace zap {

/// Parallel stage assignment: stages hold cz gate ids; every single-qubit
/// gate is attached to a boundary b in [0, n_stages], meaning it runs
/// after stage b-1 and before stage b.
struct StagePlan {
    std::vector<std::vector<int>> stages;
    std::map<int, int> boundary_of; // single-qubit gate id -> boundary index

    std::size_t n_stages() const { return stages.size(); }
    std::size_t max_stage_width() const;

    /// Gate ids attached to one boundary, in program order.
    std::vector<int> boundary_gates(int boundary) const;

    /// Qubits touched by stage k, ascending.
    std::vector<QubitIndex> stage_qubits(const Circuit& c, int k) const;

    std::string to_text(const Circuit& c) const;
};

/// Earliest-stage assignment: a cz gate lands one stage after the latest
/// cz it depends on; single-qubit gates pass dependency levels through
/// without opening stages.
StagePlan asap_schedule(const Circuit& c, const GateDag& dag);

struct StagePlanViolation {
    enum class Kind {
        None,
        MissingGate,
        DuplicateGate,
        UnknownGate,
        QubitConflict,
        DependencyInversion,
        BoundaryOrder,
    };
    Kind kind = Kind::None;
    int gate_a = -1;
    int gate_b = -1;
    std::string message;

    bool ok() const { return kind == Kind::None; }
};

/// Checks completeness, per-stage qubit-disjointness, cz dependency
/// order across stages, and single-qubit boundary placement against the
/// DAG. Returns the first violation found.
StagePlanViolation validate_stage_plan(const StagePlan& plan, const Circuit& c, const GateDag& dag);

} // namespace zap
