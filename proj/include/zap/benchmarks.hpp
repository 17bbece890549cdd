#pragma once

#include "zap/circuit.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zap {

/// Seeded d-regular graph via the pairing model with rejection of
/// self-loops and parallel edges. Throws std::invalid_argument when n*d
/// is odd or d >= n; std::runtime_error if rejection keeps failing.
std::vector<std::pair<int, int>> random_regular_edges(int n, int d, std::uint64_t seed);

Circuit make_cat(int n);
Circuit make_bv(int n); // all-ones secret, qubit n-1 is the ancilla
Circuit make_qft(int n);
Circuit make_ising(int n, int steps);
Circuit make_qaoa(int n, int degree, int layers, std::uint64_t seed);
Circuit make_adder4();
Circuit make_shor5();
Circuit make_random_regular(int n, int degree, std::uint64_t seed); // one cz per edge

struct BenchmarkSpec {
    std::string kind; // cat, bv, qft, ising, qaoa, adder, shor, random_regular
    int n = 0;
    int degree = 3;
    int layers = 3;
    int steps = 1;
    std::uint64_t seed = 1;

    std::string label() const;
};

Circuit generate_benchmark(const BenchmarkSpec& spec);

/// The reference workload: Adder(4), Shor(5), QAOA(6, 3-regular, 3
/// layers), QFT(10), BV(14), Ising(26, 1 step), Cat(35).
std::vector<BenchmarkSpec> reference_suite();

} // namespace zap
