#pragma once

#include "zap/benchmarks.hpp"
#include "zap/compiler.hpp"

#include <string>
#include <vector>

namespace zap {

struct RunRecord {
    std::string label;
    std::size_t n_qubits = 0;
    std::size_t cz_gates = 0;
    std::size_t single_qubit_gates = 0;
    std::size_t stages = 0;
    std::size_t batches = 0;
    std::size_t moves = 0;
    std::size_t n_trans = 0;
    std::size_t n_res = 0;
    double makespan_us = 0;
    double gate_term = 0;
    double crosstalk_term = 0;
    double transfer_term = 0;
    double decoherence_term = 0;
    double fidelity = 0;
    double compile_ms = 0;
    std::uint64_t seed = 0;
    bool verified = false;  // simulator equivalence, small circuits only
    bool verify_ran = false;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct SuiteResult {
    std::vector<RunRecord> records;

    std::string to_csv() const;
    std::string to_table() const;
};

struct BenchOptions {
    SaParams sa;
    PhysicalParams phys;
    bool reuse = true;
    bool verify = true; // simulate circuits up to the qubit cap
    double verify_tol = 1e-9;
};

/// Generates, compiles, and scores each benchmark; failures are recorded
/// per row rather than thrown.
SuiteResult run_suite(const std::vector<BenchmarkSpec>& specs, const BenchOptions& opts);

} // namespace zap
