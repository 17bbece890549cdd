#include "zap/bench.hpp"

#include "zap/sim.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace zap {

SuiteResult run_suite(const std::vector<BenchmarkSpec>& specs, const BenchOptions& opts) {
    SuiteResult out;
    for (const BenchmarkSpec& spec : specs) {
        RunRecord rec;
        rec.label = spec.label();
        rec.seed = opts.sa.seed;
        try {
            Circuit c = generate_benchmark(spec);
            rec.n_qubits = c.n_qubits;
            rec.cz_gates = c.count_cz();
            rec.single_qubit_gates = c.count_single_qubit();

            CompileOptions copts;
            copts.reuse = opts.reuse;
            copts.sa = opts.sa;
            auto t0 = std::chrono::steady_clock::now();
            CompileResult res = compile_circuit(c, copts);
            auto t1 = std::chrono::steady_clock::now();
            rec.compile_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

            rec.stages = res.plan.n_stages();
            rec.batches = res.schedule.batch_count;
            rec.moves = res.schedule.move_count;
            rec.n_trans = res.schedule.n_trans;
            rec.n_res = res.schedule.n_res;
            rec.makespan_us = res.schedule.makespan_us;

            FidelityReport fr = evaluate_fidelity(res.schedule, opts.phys);
            rec.gate_term = fr.gate_term;
            rec.crosstalk_term = fr.crosstalk_term;
            rec.transfer_term = fr.transfer_term;
            rec.decoherence_term = fr.decoherence_term;
            rec.fidelity = fr.total;

            if (opts.verify && c.n_qubits <= kSimQubitCap) {
                rec.verify_ran = true;
                StateVector ref = simulate_circuit(c);
                StateVector got = simulate_schedule(res.schedule, c, res.arch);
                rec.verified = equivalent_up_to_global_phase(ref, got, opts.verify_tol);
                if (!rec.verified) rec.error = "schedule diverges from the circuit semantics";
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::string SuiteResult::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "label,n_qubits,cz_gates,single_qubit_gates,stages,batches,moves,n_trans,n_res,"
          "makespan_us,gate_term,crosstalk_term,transfer_term,decoherence_term,fidelity,"
          "compile_ms,seed,verified,error\n";
    for (const RunRecord& r : records) {
        os << r.label << ',' << r.n_qubits << ',' << r.cz_gates << ',' << r.single_qubit_gates
           << ',' << r.stages << ',' << r.batches << ',' << r.moves << ',' << r.n_trans << ','
           << r.n_res << ',' << r.makespan_us << ',' << r.gate_term << ',' << r.crosstalk_term
           << ',' << r.transfer_term << ',' << r.decoherence_term << ',' << r.fidelity << ','
           << r.compile_ms << ',' << r.seed << ','
           << (r.verify_ran ? (r.verified ? "yes" : "no") : "skipped") << ','
           << '"' << r.error << '"' << "\n";
    }
    return os.str();
}

std::string SuiteResult::to_table() const {
    std::ostringstream os;
    os << std::left << std::setw(22) << "benchmark" << std::right << std::setw(7) << "qubits"
       << std::setw(7) << "cz" << std::setw(8) << "stages" << std::setw(9) << "batches"
       << std::setw(9) << "n_trans" << std::setw(14) << "makespan_us" << std::setw(11)
       << "fidelity" << std::setw(12) << "compile_ms" << std::setw(10) << "verified" << "\n";
    for (const RunRecord& r : records) {
        os << std::left << std::setw(22) << r.label << std::right << std::setw(7) << r.n_qubits
           << std::setw(7) << r.cz_gates << std::setw(8) << r.stages << std::setw(9) << r.batches
           << std::setw(9) << r.n_trans << std::setw(14) << std::fixed << std::setprecision(1)
           << r.makespan_us << std::setw(11) << std::setprecision(6) << r.fidelity
           << std::setw(12) << std::setprecision(1) << r.compile_ms << std::setw(10)
           << (r.verify_ran ? (r.verified ? "yes" : "NO") : "-");
        os.unsetf(std::ios::fixed);
        if (!r.ok()) os << "  ! " << r.error;
        os << "\n";
    }
    return os.str();
}

} // namespace zap
