#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zap/benchmarks.hpp"
#include "zap/placement.hpp"

#include <cmath>
#include <set>

using namespace zap;

namespace {

Circuit seven_qubit_reference() {
    return parse_circuit(
        "qubits 7;\n"
        "cz 0 1;\ncz 2 3;\ncz 5 6;\ncz 0 5;\ncz 1 6;\n"
        "cz 3 6;\ncz 4 6;\ncz 0 1;\ncz 2 4;\ncz 3 5;\n");
}

ArchitectureConfig tiny_arch() {
    ArchitectureConfig cfg;
    cfg.storage_rows = 2;
    cfg.storage_cols = 2;
    cfg.ent_rows = 1;
    cfg.ent_sites_per_row = 1;
    cfg.validate();
    return cfg;
}

} // namespace

TEST_CASE("initial placement fills storage row-major") {
    ArchitectureConfig cfg;
    PlacementPoint p = initial_placement(cfg, 13);
    CHECK(p.occ.all_placed());
    CHECK(p.occ.all_in_storage());
    CHECK(*p.occ.site_of(0) == Site::storage(0, 0));
    CHECK(*p.occ.site_of(9) == Site::storage(0, 9));
    CHECK(*p.occ.site_of(10) == Site::storage(1, 0));
    CHECK(*p.occ.site_of(12) == Site::storage(1, 2));
    CHECK_THROWS_AS(initial_placement(cfg, 101), std::logic_error);
}

TEST_CASE("greedy stage placement picks the cheapest site and orientation") {
    ArchitectureConfig cfg = tiny_arch();
    Circuit c = parse_circuit("qubits 2;\ncz 0 1;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    std::mt19937_64 rng(1);

    PlacementPoint init = initial_placement(cfg, 2);
    PlacementPoint stage = propose_stage_placement(c, plan, 0, init, cfg, rng);

    // q0 starts directly under the left trap; the straight lift plus the
    // short diagonal for q1 beats every other assignment.
    CHECK(*stage.occ.site_of(0) == Site::ent(0, 0, PairSlot::Left));
    CHECK(*stage.occ.site_of(1) == Site::ent(0, 0, PairSlot::Right));
}

TEST_CASE("proposed sequences validate, with and without reuse") {
    Circuit c = seven_qubit_reference();
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg = ArchitectureConfig::sized_for(7, plan.max_stage_width());
    std::mt19937_64 rng(2);

    PlacementSequence reuse = propose_sequence(c, plan, cfg, true, rng);
    REQUIRE(reuse.points.size() == 11); // initial + 5 stage/layer pairs
    validate_placement(reuse, c, plan, cfg);

    // Stage 2 {g5(3,6), g7(0,1)} and stage 3 {g6(4,6), g9(3,5)} share
    // qubits 3 and 6; the layer between them keeps exactly those two in
    // the entanglement zone, parked at their stage-2 slots.
    const Occupancy& stage2 = reuse.points[reuse.stage_point(2)].occ;
    const Occupancy& layer2 = reuse.points[reuse.layer_point(2)].occ;
    for (QubitIndex q : {3u, 6u}) {
        CHECK(layer2.site_of(q)->zone == Zone::Entanglement);
        CHECK(*layer2.site_of(q) == *stage2.site_of(q));
    }
    for (QubitIndex q : {0u, 1u, 2u, 4u, 5u}) CHECK(layer2.site_of(q)->zone == Zone::Storage);

    // The final layer always empties the entanglement zone.
    CHECK(reuse.points.back().occ.all_in_storage());

    std::mt19937_64 rng2(2);
    PlacementSequence flat = propose_sequence(c, plan, cfg, false, rng2);
    validate_placement(flat, c, plan, cfg);
    for (std::size_t k = 0; k < plan.n_stages(); ++k)
        CHECK(flat.points[flat.layer_point(static_cast<int>(k))].occ.all_in_storage());
}

TEST_CASE("validator rejects broken placements") {
    Circuit c = parse_circuit("qubits 3;\ncz 0 1;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg;
    std::mt19937_64 rng(3);
    PlacementSequence good = propose_sequence(c, plan, cfg, true, rng);
    validate_placement(good, c, plan, cfg);

    PlacementSequence idle_in_ent = good;
    idle_in_ent.points[1].occ.relocate(2, Site::ent(3, 4, PairSlot::Left));
    CHECK_THROWS_AS(validate_placement(idle_in_ent, c, plan, cfg), std::logic_error);

    PlacementSequence unpaired = good;
    unpaired.points[1].occ.relocate(1, Site::ent(1, 1, PairSlot::Right));
    CHECK_THROWS_AS(validate_placement(unpaired, c, plan, cfg), std::logic_error);

    PlacementSequence dirty_final = good;
    dirty_final.points[2].occ.relocate(0, Site::ent(0, 0, PairSlot::Left));
    CHECK_THROWS_AS(validate_placement(dirty_final, c, plan, cfg), std::logic_error);

    PlacementSequence truncated = good;
    truncated.points.pop_back();
    CHECK_THROWS_AS(validate_placement(truncated, c, plan, cfg), std::logic_error);
}

TEST_CASE("transition cost sums flight times and counts batches") {
    ArchitectureConfig cfg;
    Occupancy from(2);
    from.place(0, Site::storage(0, 0));
    from.place(1, Site::storage(0, 1));

    Occupancy parallel(2);
    parallel.place(0, Site::storage(1, 0));
    parallel.place(1, Site::storage(1, 1));
    TransitionCost tc = transition_cost(from, parallel, cfg);
    CHECK(tc.batches == 1);
    CHECK(tc.movement_us == doctest::Approx(2 * cfg.timing.move_time(6.0)).epsilon(1e-12));

    Occupancy crossed(2);
    crossed.place(0, Site::storage(0, 1));
    crossed.place(1, Site::storage(0, 0));
    TransitionCost swap = transition_cost(from, crossed, cfg);
    CHECK(swap.batches == 2);
    CHECK(swap.movement_us == doctest::Approx(2 * cfg.timing.move_time(6.0)).epsilon(1e-12));

    TransitionCost idle = transition_cost(from, from, cfg);
    CHECK(idle.batches == 0);
    CHECK(idle.movement_us == 0.0);
}

TEST_CASE("sequence cost is the sum over transitions plus the batch penalty") {
    Circuit c = parse_circuit("qubits 2;\ncz 0 1;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg = tiny_arch();
    std::mt19937_64 rng(4);
    PlacementSequence seq = propose_sequence(c, plan, cfg, true, rng);

    CostBreakdown cb = placement_cost(seq, cfg, 10.0);
    double movement = 0;
    int batches = 0;
    for (std::size_t i = 0; i + 1 < seq.points.size(); ++i) {
        TransitionCost tc = transition_cost(seq.points[i].occ, seq.points[i + 1].occ, cfg);
        movement += tc.movement_us;
        batches += tc.batches;
    }
    CHECK(cb.movement_us == doctest::Approx(movement).epsilon(1e-12));
    CHECK(cb.batches == batches);
    CHECK(cb.total() == doctest::Approx(movement + 10.0 * batches).epsilon(1e-12));
}

TEST_CASE("annealing a one-gate circuit reaches the exhaustive optimum") {
    ArchitectureConfig cfg = tiny_arch();
    Circuit c = parse_circuit("qubits 2;\ncz 0 1;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    std::mt19937_64 rng(5);
    PlacementSequence proposal = propose_sequence(c, plan, cfg, true, rng);

    const double lambda = 20.0;
    double brute_best = std::numeric_limits<double>::infinity();
    std::vector<Site> traps = cfg.storage_sites();
    for (int orient = 0; orient < 2; ++orient)
        for (const Site& ra : traps)
            for (const Site& rb : traps) {
                if (ra == rb) continue;
                PlacementSequence seq;
                seq.points.push_back(initial_placement(cfg, 2));
                PlacementPoint stage;
                stage.kind = PlacementKind::Stage;
                stage.occ = Occupancy(2);
                stage.occ.place(0, Site::ent(0, 0, orient ? PairSlot::Right : PairSlot::Left));
                stage.occ.place(1, Site::ent(0, 0, orient ? PairSlot::Left : PairSlot::Right));
                seq.points.push_back(stage);
                PlacementPoint layer;
                layer.kind = PlacementKind::Layer;
                layer.occ = Occupancy(2);
                layer.occ.place(0, ra);
                layer.occ.place(1, rb);
                seq.points.push_back(layer);
                validate_placement(seq, c, plan, cfg);
                brute_best = std::min(brute_best, placement_cost(seq, cfg, lambda).total());
            }

    SaParams params;
    params.lambda = lambda;
    params.seed = 5;
    // The greedy proposal is a fixed point under a zero batch allowance: every
    // single edit breaks order preservation somewhere and adds a batch. Two
    // steps of slack reconnect the search space; the batch term still charges
    // lambda per batch, so the optimum itself is unchanged.
    params.batch_slack = 2;
    AnnealResult res = anneal_placement(proposal, c, plan, cfg, params);
    validate_placement(res.best, c, plan, cfg);
    CHECK(res.best_cost.total() == doctest::Approx(brute_best).epsilon(1e-9));
    CHECK(res.best_cost.total() <= res.proposal_cost.total() + 1e-9);
}

TEST_CASE("annealer bookkeeping: cooling ladder, audit, and guards") {
    Circuit c = seven_qubit_reference();
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg = ArchitectureConfig::sized_for(7, plan.max_stage_width());
    std::mt19937_64 rng(6);
    PlacementSequence proposal = propose_sequence(c, plan, cfg, true, rng);

    SaParams params;
    params.seed = 9;
    params.audit = true;
    AnnealResult res = anneal_placement(proposal, c, plan, cfg, params);

    // Auto lambda balances movement against batch count of the proposal;
    // auto T0 makes the initial cost worth one bit.
    CHECK(res.lambda_used ==
          doctest::Approx(res.proposal_cost.movement_us / res.proposal_cost.batches)
              .epsilon(1e-12));
    CHECK(res.t_initial_used ==
          doctest::Approx(res.proposal_cost.total() / std::log(2.0)).epsilon(1e-12));

    // Geometric ladder from T0 down to the freeze ratio: 135 levels.
    REQUIRE(res.best_cost_per_level.size() == 135);
    for (std::size_t i = 1; i < res.best_cost_per_level.size(); ++i)
        CHECK(res.best_cost_per_level[i] <= res.best_cost_per_level[i - 1]);
    CHECK(res.best_cost_per_level.back() ==
          doctest::Approx(res.best_cost.total()).epsilon(1e-6));
    CHECK(res.best_cost.total() <= res.proposal_cost.total() + 1e-9);

    REQUIRE(!res.audit.empty());
    CHECK(res.audit.size() == res.proposals);
    std::set<double> temps;
    std::size_t accepted = 0;
    for (const AuditRecord& a : res.audit) {
        temps.insert(a.temperature);
        CHECK(a.probability >= 0.0);
        CHECK(a.probability <= 1.0);
        if (a.delta_cost <= 0) {
            CHECK(a.probability == 1.0);
            CHECK(a.accepted == a.batch_ok);
        } else {
            CHECK(a.probability ==
                  doctest::Approx(std::exp(-a.delta_cost / a.temperature)).epsilon(1e-12));
        }
        if (a.accepted) CHECK(a.batch_ok);
        if (!a.batch_ok) CHECK_FALSE(a.accepted);
        accepted += a.accepted ? 1 : 0;
    }
    CHECK(accepted == res.accepts);
    CHECK(temps.size() == 135);
    CHECK(*temps.rbegin() == doctest::Approx(res.t_initial_used).epsilon(1e-12));
    // Successive levels differ by the cooling factor.
    std::vector<double> ladder(temps.rbegin(), temps.rend());
    for (std::size_t i = 1; i < ladder.size(); ++i)
        CHECK(ladder[i] == doctest::Approx(ladder[i - 1] * 0.95).epsilon(1e-12));

    validate_placement(res.best, c, plan, cfg);
}

TEST_CASE("restarts never lose to the single run") {
    Circuit c = parse_circuit("qubits 4;\ncz 0 1;\ncz 2 3;\ncz 1 2;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg = ArchitectureConfig::sized_for(4, plan.max_stage_width());
    std::mt19937_64 rng(7);
    PlacementSequence proposal = propose_sequence(c, plan, cfg, true, rng);

    SaParams one;
    one.seed = 21;
    AnnealResult single = anneal_placement(proposal, c, plan, cfg, one);
    SaParams three = one;
    three.restarts = 3;
    AnnealResult multi = anneal_placement(proposal, c, plan, cfg, three);
    CHECK(multi.best_cost.total() <= single.best_cost.total() + 1e-9);
    validate_placement(multi.best, c, plan, cfg);
}

TEST_CASE("a circuit with no two-qubit gates anneals trivially") {
    Circuit c = parse_circuit("qubits 3;\nh 0;\nx 1;\n");
    StagePlan plan = asap_schedule(c, build_dag(c));
    ArchitectureConfig cfg;
    std::mt19937_64 rng(8);
    PlacementSequence proposal = propose_sequence(c, plan, cfg, true, rng);
    REQUIRE(proposal.points.size() == 1);
    CHECK(proposal.n_transitions() == 0);

    SaParams params;
    AnnealResult res = anneal_placement(proposal, c, plan, cfg, params);
    CHECK(res.proposals == 0);
    CHECK(res.accepts == 0);
    CHECK(res.audit.empty());
    CHECK(res.best_cost.total() == 0.0);
}

TEST_CASE("sa parameters parse and reject bad ranges") {
    SaParams p = SaParams::from_config(KeyValueConfig::from_string(
        "sa.cooling=0.9\nsa.iters_per_qubit=7\nsa.seed=42\nsa.restarts=2\nsa.audit=true\n"));
    CHECK(p.cooling == 0.9);
    CHECK(p.iters_per_qubit == 7);
    CHECK(p.seed == 42);
    CHECK(p.restarts == 2);
    CHECK(p.audit);

    CHECK_THROWS_AS(SaParams::from_config(KeyValueConfig::from_string("sa.cooling=1.5\n")),
                    ConfigError);
    CHECK_THROWS_AS(SaParams::from_config(KeyValueConfig::from_string("sa.restarts=0\n")),
                    ConfigError);
    CHECK_THROWS_AS(SaParams::from_config(KeyValueConfig::from_string("sa.frozen_ratio=2\n")),
                    ConfigError);
}
