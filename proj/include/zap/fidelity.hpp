#pragma once

#include "zap/config.hpp"
#include "zap/schedule.hpp"

#include <string>
#include <vector>

namespace zap {

/// Physical error-model parameters. Fidelities are per-operation success
/// probabilities; times in microseconds.
struct PhysicalParams {
    double f1 = 0.9999;           // single-qubit gate
    double f2 = 0.995;            // cz gate
    double f_excited = 0.9975;    // spectator atom in blockade range of a pulse
    double f_trans = 0.999;       // one trap transfer
    double t2_us = 1.5e6;         // coherence time
    double t_trans_per_op_us = 15.0; // handoff time charged per transfer

    static PhysicalParams from_config(const KeyValueConfig& kv);
    void validate() const;
    std::string echo() const;
};

/// Raw inputs to the fidelity product: operation counts plus each qubit's
/// coherence window and transfer count.
struct FidelityInputs {
    std::size_t g1 = 0;
    std::size_t g2 = 0;
    std::size_t n_res = 0;
    std::size_t n_trans = 0;
    std::vector<double> qubit_window_us;
    std::vector<int> qubit_transfers;

    static FidelityInputs from_schedule(const Schedule& s);
};

struct FidelityReport {
    FidelityInputs inputs;
    double gate_term = 1;        // f1^g1 * f2^g2
    double crosstalk_term = 1;   // f_excited^n_res
    double transfer_term = 1;    // f_trans^n_trans
    double decoherence_term = 1; // prod_q (1 - t_q / T2)
    double total = 1;
    double log_total = 0; // sum of per-factor logs

    std::string to_text(const PhysicalParams& p) const;
};

/// Evaluates the success-probability product. Throws std::domain_error
/// when a qubit's busy time (window plus transfer handoff) reaches T2.
FidelityReport evaluate_fidelity(const FidelityInputs& in, const PhysicalParams& p);

inline FidelityReport evaluate_fidelity(const Schedule& s, const PhysicalParams& p) {
    return evaluate_fidelity(FidelityInputs::from_schedule(s), p);
}

/// Re-evaluates total fidelity over a grid of values for one parameter
/// (f1, f2, f_excited, f_trans, t2_us, t_trans_per_op_us). Returns
/// (value, total) rows. Throws ConfigError for an unknown name or an
/// out-of-range grid value.
std::vector<std::pair<double, double>> sensitivity_sweep(const FidelityInputs& in,
                                                         const PhysicalParams& base,
                                                         const std::string& param,
                                                         const std::vector<double>& grid);

} // namespace zap
