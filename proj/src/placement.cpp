#include "zap/placement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace zap {

PlacementPoint initial_placement(const ArchitectureConfig& cfg, std::size_t n_qubits) {
    if (n_qubits > cfg.storage_capacity())
        throw std::logic_error("storage capacity too small for initial placement");
    PlacementPoint p;
    p.kind = PlacementKind::Initial;
    p.index = 0;
    p.occ = Occupancy(n_qubits);
    for (QubitIndex q = 0; q < n_qubits; ++q)
        p.occ.place(q, Site::storage(static_cast<int>(q) / cfg.storage_cols,
                                     static_cast<int>(q) % cfg.storage_cols));
    return p;
}

namespace {

struct SlotChoice {
    Site a_slot;
    Site b_slot;
    double cost;
};

} // namespace

PlacementPoint propose_stage_placement(const Circuit& c, const StagePlan& plan, int k,
                                       const PlacementPoint& prev, const ArchitectureConfig& cfg,
                                       std::mt19937_64& rng) {
    const std::vector<int>& gates = plan.stages.at(k);
    if (gates.size() > cfg.ent_site_capacity())
        throw std::logic_error("stage wider than the entanglement zone");

    PlacementPoint pt;
    pt.kind = PlacementKind::Stage;
    pt.index = k;
    pt.occ = prev.occ;

    std::set<std::int64_t> claimed;
    for (int id : gates) {
        const Gate& g = c.gates.at(id);
        QubitIndex a = g.qubits[0];
        QubitIndex b = g.qubits[1];
        Point pa = cfg.site_position(*prev.occ.site_of(a));
        Point pb = cfg.site_position(*prev.occ.site_of(b));

        std::vector<SlotChoice> ties;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < cfg.ent_rows; ++r)
            for (int s = 0; s < cfg.ent_sites_per_row; ++s) {
                Site left = Site::ent(r, s, PairSlot::Left);
                Site right = Site::ent(r, s, PairSlot::Right);
                if (claimed.count(left.key())) continue;
                auto free_for = [&](const Site& slot) {
                    auto occ_q = pt.occ.at(slot);
                    return !occ_q || *occ_q == a || *occ_q == b;
                };
                if (!free_for(left) || !free_for(right)) continue;
                Point pl = cfg.site_position(left);
                Point pr = cfg.site_position(right);
                for (int orient = 0; orient < 2; ++orient) {
                    const Site& sa = orient == 0 ? left : right;
                    const Site& sb = orient == 0 ? right : left;
                    const Point& qa = orient == 0 ? pl : pr;
                    const Point& qb = orient == 0 ? pr : pl;
                    double cost = cfg.timing.move_time(distance(pa, qa)) +
                                  cfg.timing.move_time(distance(pb, qb));
                    if (cost < best) {
                        best = cost;
                        ties.clear();
                    }
                    if (cost == best) ties.push_back({sa, sb, cost});
                }
            }
        if (ties.empty())
            throw std::logic_error("no free entanglement site for stage " + std::to_string(k));
        const SlotChoice& pick =
            ties.size() == 1 ? ties[0]
                             : ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];
        pt.occ.remove(a);
        pt.occ.remove(b);
        pt.occ.place(a, pick.a_slot);
        pt.occ.place(b, pick.b_slot);
        claimed.insert(Site::ent(pick.a_slot.row, pick.a_slot.col, PairSlot::Left).key());
    }
    return pt;
}

namespace {

PlacementPoint propose_layer(const Circuit& c, const StagePlan& plan, int k,
                             const PlacementPoint& stage_pt, const std::vector<Site>& homes,
                             bool reuse) {
    PlacementPoint pt;
    pt.kind = PlacementKind::Layer;
    pt.index = k;
    pt.occ = stage_pt.occ;
    std::set<QubitIndex> keep;
    if (reuse && k + 1 < static_cast<int>(plan.n_stages())) {
        std::vector<QubitIndex> cur = plan.stage_qubits(c, k);
        std::vector<QubitIndex> nxt = plan.stage_qubits(c, k + 1);
        std::set_intersection(cur.begin(), cur.end(), nxt.begin(), nxt.end(),
                              std::inserter(keep, keep.end()));
    }
    for (QubitIndex q : plan.stage_qubits(c, k))
        if (!keep.count(q)) pt.occ.relocate(q, homes[q]);
    return pt;
}

} // namespace

PlacementSequence propose_sequence(const Circuit& c, const StagePlan& plan,
                                   const ArchitectureConfig& cfg, bool reuse,
                                   std::mt19937_64& rng) {
    PlacementSequence seq;
    seq.points.push_back(initial_placement(cfg, c.n_qubits));
    std::vector<Site> homes(c.n_qubits);
    for (QubitIndex q = 0; q < c.n_qubits; ++q) homes[q] = *seq.points[0].occ.site_of(q);
    for (int k = 0; k < static_cast<int>(plan.n_stages()); ++k) {
        seq.points.push_back(propose_stage_placement(c, plan, k, seq.points.back(), cfg, rng));
        seq.points.push_back(propose_layer(c, plan, k, seq.points.back(), homes, reuse));
    }
    return seq;
}

void validate_placement(const PlacementSequence& seq, const Circuit& c, const StagePlan& plan,
                        const ArchitectureConfig& cfg) {
    std::size_t S = plan.n_stages();
    std::size_t expect = S == 0 ? 1 : 1 + 2 * S;
    if (seq.points.size() != expect)
        throw std::logic_error("placement sequence has wrong point count");
    if (!seq.points[0].occ.all_in_storage())
        throw std::logic_error("initial placement must be all-storage");

    for (std::size_t k = 0; k < S; ++k) {
        const Occupancy& at_stage = seq.points[seq.stage_point(static_cast<int>(k))].occ;
        if (!at_stage.all_placed()) throw std::logic_error("stage placement misses a qubit");

        std::vector<std::pair<QubitIndex, QubitIndex>> want;
        std::set<QubitIndex> participants;
        for (int id : plan.stages[k]) {
            const Gate& g = c.gates.at(id);
            QubitIndex a = g.qubits[0];
            QubitIndex b = g.qubits[1];
            participants.insert(a);
            participants.insert(b);
            Site sa = *at_stage.site_of(a);
            Site sb = *at_stage.site_of(b);
            if (sa.zone != Zone::Entanglement || sb.zone != Zone::Entanglement ||
                sa.row != sb.row || sa.col != sb.col || sa.slot == sb.slot)
                throw std::logic_error("stage " + std::to_string(k) + ": gate " +
                                       std::to_string(id) + " not paired on one site");
            want.emplace_back(std::min(a, b), std::max(a, b));
        }
        for (QubitIndex q = 0; q < c.n_qubits; ++q)
            if (!participants.count(q) && at_stage.site_of(q)->zone != Zone::Storage)
                throw std::logic_error("stage " + std::to_string(k) + ": idle qubit " +
                                       std::to_string(q) + " left in the entanglement zone");
        std::sort(want.begin(), want.end());
        if (blockade_pairs(cfg, at_stage) != want)
            throw std::logic_error("stage " + std::to_string(k) +
                                   ": blockade pairs do not match the gate set");

        const Occupancy& at_layer = seq.points[seq.layer_point(static_cast<int>(k))].occ;
        if (!at_layer.all_placed()) throw std::logic_error("layer placement misses a qubit");
        bool final_layer = k + 1 == S;
        for (QubitIndex q = 0; q < c.n_qubits; ++q) {
            Site s = *at_layer.site_of(q);
            if (s.zone == Zone::Storage) continue;
            if (final_layer)
                throw std::logic_error("final layer must return every qubit to storage");
            if (!participants.count(q) || s != *at_stage.site_of(q))
                throw std::logic_error("layer " + std::to_string(k) + ": qubit " +
                                       std::to_string(q) + " held outside its stage slot");
            std::vector<QubitIndex> nxt = plan.stage_qubits(c, static_cast<int>(k) + 1);
            if (!std::binary_search(nxt.begin(), nxt.end(), q))
                throw std::logic_error("layer " + std::to_string(k) + ": qubit " +
                                       std::to_string(q) + " retained without a next-stage gate");
        }
    }
}

TransitionCost transition_cost(const Occupancy& from, const Occupancy& to,
                               const ArchitectureConfig& cfg) {
    std::vector<Move> moves;
    for (QubitIndex q = 0; q < from.n_qubits(); ++q) {
        Site s = *from.site_of(q);
        Site t = *to.site_of(q);
        if (s != t) moves.push_back(make_move(q, s, t, cfg));
    }
    TransitionCost tc;
    for (const Move& m : moves) tc.movement_us += cfg.timing.move_time(m.displacement());
    tc.batches = static_cast<int>(batch_moves(moves, cfg).batches.size());
    return tc;
}

CostBreakdown placement_cost(const PlacementSequence& seq, const ArchitectureConfig& cfg,
                             double lambda) {
    CostBreakdown cb;
    cb.lambda = lambda;
    for (std::size_t i = 0; i + 1 < seq.points.size(); ++i) {
        TransitionCost tc = transition_cost(seq.points[i].occ, seq.points[i + 1].occ, cfg);
        cb.movement_us += tc.movement_us;
        cb.batches += tc.batches;
    }
    return cb;
}

SaParams SaParams::from_config(const KeyValueConfig& kv) {
    SaParams p;
    p.t_initial = kv.get_double("sa.t_initial", p.t_initial);
    p.cooling = kv.get_double("sa.cooling", p.cooling);
    p.frozen_ratio = kv.get_double("sa.frozen_ratio", p.frozen_ratio);
    p.iters_per_qubit = static_cast<int>(kv.get_int("sa.iters_per_qubit", p.iters_per_qubit));
    p.lambda = kv.get_double("sa.lambda", p.lambda);
    p.batch_slack = static_cast<int>(kv.get_int("sa.batch_slack", p.batch_slack));
    p.seed = static_cast<std::uint64_t>(kv.get_int("sa.seed", static_cast<long>(p.seed)));
    p.restarts = static_cast<int>(kv.get_int("sa.restarts", p.restarts));
    p.audit = kv.get_bool("sa.audit", p.audit);
    if (p.cooling <= 0 || p.cooling >= 1) throw ConfigError("sa.cooling must be in (0, 1)");
    if (p.frozen_ratio <= 0 || p.frozen_ratio >= 1)
        throw ConfigError("sa.frozen_ratio must be in (0, 1)");
    if (p.iters_per_qubit < 1) throw ConfigError("sa.iters_per_qubit must be >= 1");
    if (p.restarts < 1) throw ConfigError("sa.restarts must be >= 1");
    if (p.batch_slack < 0) throw ConfigError("sa.batch_slack must be >= 0");
    return p;
}

std::string SaParams::echo() const {
    std::ostringstream os;
    os.precision(17);
    os << "sa.t_initial=" << t_initial << "\n"
       << "sa.cooling=" << cooling << "\n"
       << "sa.frozen_ratio=" << frozen_ratio << "\n"
       << "sa.iters_per_qubit=" << iters_per_qubit << "\n"
       << "sa.lambda=" << lambda << "\n"
       << "sa.batch_slack=" << batch_slack << "\n"
       << "sa.seed=" << seed << "\n"
       << "sa.restarts=" << restarts << "\n"
       << "sa.audit=" << (audit ? "true" : "false") << "\n";
    return os.str();
}

namespace {

struct Edit {
    int point;
    QubitIndex q;
    Site to;
};

void apply_edits(PlacementSequence& seq, const std::vector<Edit>& edits) {
    std::map<int, std::vector<const Edit*>> by_point;
    for (const Edit& e : edits) by_point[e.point].push_back(&e);
    for (auto& [pt, group] : by_point) {
        Occupancy& occ = seq.points[pt].occ;
        for (const Edit* e : group) occ.remove(e->q);
        for (const Edit* e : group) occ.place(e->q, e->to);
    }
}

std::vector<Edit> record_undo(const PlacementSequence& seq, const std::vector<Edit>& edits) {
    std::vector<Edit> undo;
    undo.reserve(edits.size());
    for (const Edit& e : edits)
        undo.push_back({e.point, e.q, *seq.points[e.point].occ.site_of(e.q)});
    return undo;
}

// Annealer working state for one restart.
struct Annealer {
    const Circuit& c;
    const StagePlan& plan;
    const ArchitectureConfig& cfg;
    const SaParams& params;
    PlacementSequence seq;
    std::mt19937_64 rng;

    std::vector<TransitionCost> cache;
    double movement = 0;
    int batches = 0;
    double lambda;

    std::vector<int> multi_stages; // stages with two or more gates
    std::vector<Site> storage;

    Annealer(const PlacementSequence& proposal, const Circuit& c_, const StagePlan& plan_,
             const ArchitectureConfig& cfg_, const SaParams& params_, double lambda_,
             std::uint64_t seed)
        : c(c_), plan(plan_), cfg(cfg_), params(params_), seq(proposal), rng(seed),
          lambda(lambda_), storage(cfg_.storage_sites()) {
        for (std::size_t k = 0; k < plan.n_stages(); ++k)
            if (plan.stages[k].size() >= 2) multi_stages.push_back(static_cast<int>(k));
        cache.resize(seq.n_transitions());
        for (std::size_t i = 0; i < cache.size(); ++i) {
            cache[i] = transition_cost(seq.points[i].occ, seq.points[i + 1].occ, cfg);
            movement += cache[i].movement_us;
            batches += cache[i].batches;
        }
    }

    double total() const { return movement + lambda * batches; }

    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }

    // Swap the sites of two gates in one stage, or flip one gate's slots.
    bool build_stage_move(bool swap_pair, std::vector<Edit>& edits) {
        if (swap_pair && multi_stages.empty()) return false;
        if (plan.n_stages() == 0) return false;
        int k = swap_pair ? multi_stages[pick(multi_stages.size())]
                          : static_cast<int>(pick(plan.n_stages()));
        const auto& gates = plan.stages[k];
        if (gates.empty()) return false;
        int sp = seq.stage_point(k);
        int lp = seq.layer_point(k);
        const Occupancy& stage_occ = seq.points[sp].occ;

        auto slots_of = [&](int gate_id) {
            const Gate& g = c.gates[gate_id];
            return std::array<std::pair<QubitIndex, Site>, 2>{
                std::make_pair(g.qubits[0], *stage_occ.site_of(g.qubits[0])),
                std::make_pair(g.qubits[1], *stage_occ.site_of(g.qubits[1]))};
        };

        if (swap_pair) {
            std::size_t i = pick(gates.size());
            std::size_t j = pick(gates.size() - 1);
            if (j >= i) ++j;
            auto s1 = slots_of(gates[i]);
            auto s2 = slots_of(gates[j]);
            for (auto& [q, s] : s1)
                edits.push_back({sp, q, Site::ent(s2[0].second.row, s2[0].second.col, s.slot)});
            for (auto& [q, s] : s2)
                edits.push_back({sp, q, Site::ent(s1[0].second.row, s1[0].second.col, s.slot)});
        } else {
            auto s = slots_of(gates[pick(gates.size())]);
            edits.push_back({sp, s[0].first, s[1].second});
            edits.push_back({sp, s[1].first, s[0].second});
        }
        // Retained qubits follow their stage slot into the layer point.
        if (lp < static_cast<int>(seq.points.size())) {
            const Occupancy& layer_occ = seq.points[lp].occ;
            std::vector<Edit> layer_edits;
            for (const Edit& e : edits) {
                if (e.point != sp) continue;
                if (*layer_occ.site_of(e.q) == *stage_occ.site_of(e.q))
                    layer_edits.push_back({lp, e.q, e.to});
            }
            edits.insert(edits.end(), layer_edits.begin(), layer_edits.end());
        }
        return true;
    }

    // Send one returning qubit to a different free storage trap for its
    // whole storage dwell.
    bool build_rehome_move(std::vector<Edit>& edits) {
        if (plan.n_stages() == 0) return false;
        int k = static_cast<int>(pick(plan.n_stages()));
        int lp = seq.layer_point(k);
        std::vector<QubitIndex> returning;
        for (QubitIndex q : plan.stage_qubits(c, k))
            if (seq.points[lp].occ.site_of(q)->zone == Zone::Storage) returning.push_back(q);
        if (returning.empty()) return false;
        QubitIndex q = returning[pick(returning.size())];
        Site x = *seq.points[lp].occ.site_of(q);
        int m = lp;
        while (m + 1 < static_cast<int>(seq.points.size()) &&
               *seq.points[m + 1].occ.site_of(q) == x)
            ++m;
        for (int attempt = 0; attempt < 16; ++attempt) {
            Site y = storage[pick(storage.size())];
            if (y == x) continue;
            bool free = true;
            for (int p = lp; p <= m && free; ++p)
                if (seq.points[p].occ.at(y)) free = false;
            if (!free) continue;
            for (int p = lp; p <= m; ++p) edits.push_back({p, q, y});
            return true;
        }
        return false;
    }

    std::set<int> affected_transitions(const std::vector<Edit>& edits) const {
        std::set<int> out;
        for (const Edit& e : edits) {
            if (e.point > 0) out.insert(e.point - 1);
            if (e.point < static_cast<int>(seq.n_transitions())) out.insert(e.point);
        }
        return out;
    }
};

} // namespace

AnnealResult anneal_placement(const PlacementSequence& proposal, const Circuit& c,
                              const StagePlan& plan, const ArchitectureConfig& cfg,
                              const SaParams& params) {
    AnnealResult res;
    res.seed = params.seed;

    CostBreakdown raw = placement_cost(proposal, cfg, 0);
    double lambda = params.lambda >= 0
                        ? params.lambda
                        : (raw.batches > 0 ? raw.movement_us / raw.batches : 0.0);
    res.lambda_used = lambda;
    res.proposal_cost = placement_cost(proposal, cfg, lambda);
    res.best = proposal;
    res.best_cost = res.proposal_cost;

    double c0 = res.proposal_cost.total();
    double t0 = params.t_initial > 0 ? params.t_initial : c0 / std::log(2.0);
    res.t_initial_used = t0;
    if (proposal.n_transitions() == 0 || c0 <= 0 || t0 <= 0) return res;

    double best_total = c0;
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);

    for (int restart = 0; restart < params.restarts; ++restart) {
        Annealer an(proposal, c, plan, cfg, params, lambda,
                    params.seed + static_cast<std::uint64_t>(restart));
        double cur_total = an.total();
        PlacementSequence restart_best = an.seq;
        double restart_best_total = cur_total;

        long iters = static_cast<long>(params.iters_per_qubit) * static_cast<long>(c.n_qubits);
        for (double temp = t0; temp > t0 * params.frozen_ratio; temp *= params.cooling) {
            for (long it = 0; it < iters; ++it) {
                std::vector<Edit> edits;
                for (int attempt = 0; attempt < 8 && edits.empty(); ++attempt) {
                    switch (an.pick(3)) {
                    case 0:
                        an.build_stage_move(true, edits);
                        break;
                    case 1:
                        an.build_stage_move(false, edits);
                        break;
                    default:
                        an.build_rehome_move(edits);
                        break;
                    }
                }
                if (edits.empty()) continue;
                ++res.proposals;

                std::vector<Edit> undo = record_undo(an.seq, edits);
                apply_edits(an.seq, edits);

                std::set<int> affected = an.affected_transitions(edits);
                double d_move = 0;
                int d_batch = 0;
                std::vector<std::pair<int, TransitionCost>> updated;
                for (int i : affected) {
                    TransitionCost tc =
                        transition_cost(an.seq.points[i].occ, an.seq.points[i + 1].occ, cfg);
                    d_move += tc.movement_us - an.cache[i].movement_us;
                    d_batch += tc.batches - an.cache[i].batches;
                    updated.emplace_back(i, tc);
                }
                double delta = d_move + lambda * d_batch;
                bool batch_ok = d_batch <= params.batch_slack;
                double prob = delta <= 0 ? 1.0 : std::exp(-delta / temp);
                bool metropolis = delta <= 0 || uniform01(an.rng) < prob;
                bool accepted = batch_ok && metropolis;

                if (params.audit)
                    res.audit.push_back({temp, delta, prob, batch_ok, accepted});

                if (accepted) {
                    ++res.accepts;
                    for (auto& [i, tc] : updated) {
                        an.movement += tc.movement_us - an.cache[i].movement_us;
                        an.batches += tc.batches - an.cache[i].batches;
                        an.cache[i] = tc;
                    }
                    cur_total += delta;
                    if (cur_total < restart_best_total) {
                        restart_best_total = cur_total;
                        restart_best = an.seq;
                    }
                } else {
                    apply_edits(an.seq, undo);
                }
            }
            if (restart == 0)
                res.best_cost_per_level.push_back(std::min(best_total, restart_best_total));
        }
        if (restart_best_total < best_total) {
            best_total = restart_best_total;
            res.best = restart_best;
        }
    }
    res.best_cost = placement_cost(res.best, cfg, lambda);
    return res;
}

} // namespace zap
