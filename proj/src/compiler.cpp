#include "zap/compiler.hpp"

namespace zap {

CapacityVerdict min_capacity_check(const ArchitectureConfig& cfg, const Circuit& c) {
    StagePlan plan = asap_schedule(c, build_dag(c));
    return min_capacity_check(cfg, c.n_qubits, plan.max_stage_width());
}

CompileResult compile_circuit(const Circuit& c, const CompileOptions& opts) {
    c.validate();
    GateDag dag = build_dag(c);

    CompileResult res;
    res.plan = asap_schedule(c, dag);
    {
        StagePlanViolation v = validate_stage_plan(res.plan, c, dag);
        if (!v.ok()) throw std::logic_error("stage assignment violated an invariant: " + v.message);
    }

    res.arch = opts.arch ? *opts.arch
                         : ArchitectureConfig::sized_for(c.n_qubits, res.plan.max_stage_width());
    CapacityVerdict cap = min_capacity_check(res.arch, c.n_qubits, res.plan.max_stage_width());
    if (!cap.ok) throw CapacityError(cap.message);

    std::mt19937_64 rng(opts.sa.seed);
    PlacementSequence proposal = propose_sequence(c, res.plan, res.arch, opts.reuse, rng);
    validate_placement(proposal, c, res.plan, res.arch);

    res.anneal = anneal_placement(proposal, c, res.plan, res.arch, opts.sa);
    validate_placement(res.anneal.best, c, res.plan, res.arch);

    res.schedule = assemble_schedule(c, res.plan, res.anneal.best, res.arch);
    return res;
}

} // namespace zap
