#include "zap/scheduler.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zap {

std::size_t StagePlan::max_stage_width() const {
    std::size_t w = 0;
    for (const auto& s : stages) w = std::max(w, s.size());
    return w;
}

std::vector<int> StagePlan::boundary_gates(int boundary) const {
    std::vector<int> out;
    for (const auto& [gate, b] : boundary_of)
        if (b == boundary) out.push_back(gate);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QubitIndex> StagePlan::stage_qubits(const Circuit& c, int k) const {
    std::vector<QubitIndex> qs;
    for (int id : stages.at(k))
        for (QubitIndex q : c.gates.at(id).qubits) qs.push_back(q);
    std::sort(qs.begin(), qs.end());
    return qs;
}

std::string StagePlan::to_text(const Circuit& c) const {
    std::ostringstream os;
    for (std::size_t k = 0; k < stages.size(); ++k) {
        os << "stage " << k << ":";
        for (int id : stages[k]) {
            const Gate& g = c.gates.at(id);
            os << " g" << id << "(" << g.qubits[0] << "," << g.qubits[1] << ")";
        }
        os << "\n";
    }
    return os.str();
}

StagePlan asap_schedule(const Circuit& c, const GateDag& dag) {
    StagePlan plan;
    std::vector<int> level(c.gates.size(), 0);
    for (const Gate& g : c.gates) {
        int lvl = 0;
        for (int p : dag.preds[g.id]) {
            int after = level[p] + (c.gates[p].is_cz() ? 1 : 0);
            lvl = std::max(lvl, after);
        }
        level[g.id] = lvl;
        if (g.is_cz()) {
            if (plan.stages.size() <= static_cast<std::size_t>(lvl))
                plan.stages.resize(lvl + 1);
            plan.stages[lvl].push_back(g.id);
        }
    }
    // A single-qubit gate runs at the boundary before the stage of the
    // first cz that depends on it; with no such cz it runs at the end.
    for (const Gate& g : c.gates) {
        if (g.is_cz()) continue;
        int boundary = static_cast<int>(plan.stages.size());
        std::vector<int> frontier = {g.id};
        // Follow successor chains through single-qubit gates.
        std::set<int> seen;
        while (!frontier.empty()) {
            int node = frontier.back();
            frontier.pop_back();
            for (int s : dag.succs[node]) {
                if (!seen.insert(s).second) continue;
                if (c.gates[s].is_cz())
                    boundary = std::min(boundary, level[s]);
                else
                    frontier.push_back(s);
            }
        }
        plan.boundary_of[g.id] = boundary;
    }
    return plan;
}

namespace {

StagePlanViolation violation(StagePlanViolation::Kind kind, int a, int b, std::string msg) {
    StagePlanViolation v;
    v.kind = kind;
    v.gate_a = a;
    v.gate_b = b;
    v.message = std::move(msg);
    return v;
}

} // namespace

StagePlanViolation validate_stage_plan(const StagePlan& plan, const Circuit& c, const GateDag& dag) {
    using Kind = StagePlanViolation::Kind;
    std::vector<int> stage_of(c.gates.size(), -1);
    for (std::size_t k = 0; k < plan.stages.size(); ++k) {
        for (int id : plan.stages[k]) {
            if (id < 0 || static_cast<std::size_t>(id) >= c.gates.size() || !c.gates[id].is_cz())
                return violation(Kind::UnknownGate, id, -1,
                                 "stage entry is not a cz gate of this circuit");
            if (stage_of[id] >= 0)
                return violation(Kind::DuplicateGate, id, -1,
                                 "gate " + std::to_string(id) + " appears in two stages");
            stage_of[id] = static_cast<int>(k);
        }
        std::vector<QubitIndex> qs = plan.stage_qubits(c, static_cast<int>(k));
        for (std::size_t i = 1; i < qs.size(); ++i)
            if (qs[i] == qs[i - 1])
                return violation(Kind::QubitConflict, -1, -1,
                                 "qubit " + std::to_string(qs[i]) + " used twice in stage " +
                                     std::to_string(k));
    }
    for (const Gate& g : c.gates) {
        if (g.is_cz() && stage_of[g.id] < 0)
            return violation(Kind::MissingGate, g.id, -1,
                             "cz gate " + std::to_string(g.id) + " missing from plan");
        if (!g.is_cz() && !plan.boundary_of.count(g.id))
            return violation(Kind::MissingGate, g.id, -1,
                             "single-qubit gate " + std::to_string(g.id) + " missing from plan");
    }
    // Execution slot: cz gates sit at 2*stage+1, boundary b at 2*b, so a
    // boundary gate precedes the stage it attaches to.
    auto slot = [&](int id) {
        return c.gates[id].is_cz() ? 2 * stage_of[id] + 1 : 2 * plan.boundary_of.at(id);
    };
    for (const Gate& g : c.gates) {
        for (int p : dag.preds[g.id]) {
            bool both_cz = g.is_cz() && c.gates[p].is_cz();
            if (both_cz && stage_of[p] >= stage_of[g.id])
                return violation(Kind::DependencyInversion, p, g.id,
                                 "gate " + std::to_string(g.id) + " scheduled no later than its dependency " +
                                     std::to_string(p));
            if (!both_cz && slot(p) > slot(g.id))
                return violation(Kind::BoundaryOrder, p, g.id,
                                 "gate " + std::to_string(g.id) + " runs before its dependency " +
                                     std::to_string(p));
        }
    }
    return {};
}

} // namespace zap
