#pragma once

#include "zap/fidelity.hpp"
#include "zap/placement.hpp"
#include "zap/schedule.hpp"

#include <optional>

namespace zap {

/// Raised when the target geometry cannot host the circuit.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CompileOptions {
    bool reuse = true;
    SaParams sa;
    std::optional<ArchitectureConfig> arch; // default: sized to the circuit
};

struct CompileResult {
    ArchitectureConfig arch;
    StagePlan plan;
    AnnealResult anneal;
    Schedule schedule;
};

/// Full pipeline: dependency DAG, stage assignment, capacity check,
/// placement proposal, annealing, transition routing, timeline assembly.
CompileResult compile_circuit(const Circuit& c, const CompileOptions& opts);

/// Capacity verdict for a circuit against a geometry (stage widths come
/// from the earliest-stage assignment).
CapacityVerdict min_capacity_check(const ArchitectureConfig& cfg, const Circuit& c);

} // namespace zap
