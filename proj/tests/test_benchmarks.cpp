#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zap/benchmarks.hpp"
#include "zap/scheduler.hpp"
#include "zap/sim.hpp"

#include <map>
#include <set>

using namespace zap;

namespace {

std::size_t stage_count(const Circuit& c) {
    return asap_schedule(c, build_dag(c)).n_stages();
}

} // namespace

TEST_CASE("cat circuits chain one entangler per added qubit") {
    Circuit c = make_cat(35);
    CHECK(c.n_qubits == 35);
    CHECK(c.count_cz() == 34);
    CHECK(stage_count(c) == 34);
    CHECK_THROWS_AS(make_cat(1), std::invalid_argument);
}

TEST_CASE("bv queries every data qubit against the ancilla once") {
    Circuit c = make_bv(14);
    CHECK(c.n_qubits == 14);
    CHECK(c.count_cz() == 13);
    CHECK(stage_count(c) == 13);

    // The all-ones secret reads back on the data qubits; the ancilla
    // stays in its phase-kickback state.
    Circuit small = make_bv(4);
    StateVector sv = simulate_circuit(small);
    const auto& a = sv.amplitudes();
    CHECK(std::norm(a[0b0111]) + std::norm(a[0b1111]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("qft carries a controlled phase per qubit pair") {
    Circuit c = make_qft(10);
    CHECK(c.n_qubits == 10);
    CHECK(c.count_cz() == 90); // two entanglers per controlled phase
    CHECK(stage_count(c) == 34);
    CHECK(make_qft(4).count_cz() == 12);
}

TEST_CASE("one ising trotter step packs into four stages") {
    Circuit c = make_ising(26, 1);
    CHECK(c.n_qubits == 26);
    CHECK(c.count_cz() == 50); // 13 even bonds + 12 odd bonds, 2 cz each
    CHECK(stage_count(c) == 4);

    Circuit two = make_ising(26, 2);
    CHECK(two.count_cz() == 100);
    CHECK(stage_count(two) == 8);
}

TEST_CASE("qaoa on a 3-regular graph spends two entanglers per edge per layer") {
    Circuit c = make_qaoa(6, 3, 3, 1);
    CHECK(c.n_qubits == 6);
    CHECK(c.count_cz() == 54); // 9 edges x 3 layers x 2

    Circuit one = make_qaoa(6, 3, 1, 1);
    CHECK(one.count_cz() == 18);
}

TEST_CASE("the fixed arithmetic circuits carry their pinned entangler counts") {
    Circuit adder = make_adder4();
    CHECK(adder.n_qubits == 4);
    CHECK(adder.count_cz() == 10);

    Circuit shor = make_shor5();
    CHECK(shor.n_qubits == 5);
    CHECK(shor.count_cz() == 15);
}

TEST_CASE("random regular graphs have exact degree and no duplicate edges") {
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        auto edges = random_regular_edges(20, 3, seed);
        CHECK(edges.size() == 30);
        std::map<int, int> degree;
        std::set<std::pair<int, int>> seen;
        for (auto [u, v] : edges) {
            CHECK(u != v);
            CHECK(u < v);
            CHECK(seen.insert({u, v}).second);
            ++degree[u];
            ++degree[v];
        }
        REQUIRE(degree.size() == 20);
        for (auto& [v, d] : degree) CHECK(d == 3);
    }

    CHECK(random_regular_edges(20, 3, 5) == random_regular_edges(20, 3, 5));
    CHECK(random_regular_edges(20, 3, 5) != random_regular_edges(20, 3, 6));

    CHECK_THROWS_AS(random_regular_edges(5, 3, 1), std::invalid_argument);  // odd n*d
    CHECK_THROWS_AS(random_regular_edges(4, 4, 1), std::invalid_argument);  // d >= n
    CHECK_THROWS_AS(random_regular_edges(1, 1, 1), std::invalid_argument);
}

TEST_CASE("random regular circuits place one entangler per edge") {
    Circuit c = make_random_regular(100, 4, 1);
    CHECK(c.n_qubits == 100);
    CHECK(c.count_cz() == 200);
    CHECK(c.count_single_qubit() == 0);

    Circuit again = make_random_regular(100, 4, 1);
    CHECK(c.gates.size() == again.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        CHECK(c.gates[i].qubits == again.gates[i].qubits);
}

TEST_CASE("benchmark labels name the workload and its knobs") {
    CHECK(BenchmarkSpec{"cat", 35}.label() == "cat-35");
    CHECK(BenchmarkSpec{"qaoa", 6, 3, 3}.label() == "qaoa-6-d3-p3");
    CHECK(BenchmarkSpec{"ising", 26, 3, 3, 1}.label() == "ising-26-s1");
    CHECK(BenchmarkSpec{"random_regular", 100, 4}.label() == "random_regular-100-d4");
}

TEST_CASE("the generator dispatches by kind and rejects unknowns") {
    BenchmarkSpec spec{"qft", 5};
    CHECK(generate_benchmark(spec).count_cz() == 20);
    BenchmarkSpec bogus{"grover", 5};
    CHECK_THROWS_AS(generate_benchmark(bogus), std::invalid_argument);
}

TEST_CASE("the reference suite is the seven standard rows") {
    auto specs = reference_suite();
    REQUIRE(specs.size() == 7);
    CHECK(specs[0].label() == "adder-4");
    CHECK(specs[1].label() == "shor-5");
    CHECK(specs[2].label() == "qaoa-6-d3-p3");
    CHECK(specs[3].label() == "qft-10");
    CHECK(specs[4].label() == "bv-14");
    CHECK(specs[5].label() == "ising-26-s1");
    CHECK(specs[6].label() == "cat-35");
    for (const BenchmarkSpec& s : specs) {
        Circuit c = generate_benchmark(s);
        c.validate();
        CHECK(c.n_qubits == static_cast<std::size_t>(s.n));
    }
}

TEST_CASE("every generated circuit passes structural validation") {
    for (Circuit c : {make_cat(5), make_bv(6), make_qft(6), make_ising(8, 2),
                      make_qaoa(8, 3, 2, 3), make_adder4(), make_shor5(),
                      make_random_regular(12, 3, 9)}) {
        c.validate();
        StagePlan plan = asap_schedule(c, build_dag(c));
        CHECK(validate_stage_plan(plan, c, build_dag(c)).ok());
    }
}
