#include "zap/fidelity.hpp"

#include <cmath>
#include <sstream>

namespace zap {

PhysicalParams PhysicalParams::from_config(const KeyValueConfig& kv) {
    PhysicalParams p;
    p.f1 = kv.get_double("phys.f1", p.f1);
    p.f2 = kv.get_double("phys.f2", p.f2);
    p.f_excited = kv.get_double("phys.f_excited", p.f_excited);
    p.f_trans = kv.get_double("phys.f_trans", p.f_trans);
    p.t2_us = kv.get_double("phys.t2_us", p.t2_us);
    p.t_trans_per_op_us = kv.get_double("phys.t_trans_per_op_us", p.t_trans_per_op_us);
    p.validate();
    return p;
}

void PhysicalParams::validate() const {
    auto fidelity = [](double v, const char* name) {
        if (!(v > 0.0) || v > 1.0)
            throw ConfigError(std::string(name) + " must be in (0, 1]");
    };
    fidelity(f1, "phys.f1");
    fidelity(f2, "phys.f2");
    fidelity(f_excited, "phys.f_excited");
    fidelity(f_trans, "phys.f_trans");
    if (!(t2_us > 0)) throw ConfigError("phys.t2_us must be positive");
    if (t_trans_per_op_us < 0) throw ConfigError("phys.t_trans_per_op_us must be >= 0");
}

std::string PhysicalParams::echo() const {
    std::ostringstream os;
    os.precision(17);
    os << "phys.f1=" << f1 << "\n"
       << "phys.f2=" << f2 << "\n"
       << "phys.f_excited=" << f_excited << "\n"
       << "phys.f_trans=" << f_trans << "\n"
       << "phys.t2_us=" << t2_us << "\n"
       << "phys.t_trans_per_op_us=" << t_trans_per_op_us << "\n";
    return os.str();
}

FidelityInputs FidelityInputs::from_schedule(const Schedule& s) {
    FidelityInputs in;
    in.g1 = s.g1;
    in.g2 = s.g2;
    in.n_res = s.n_res;
    in.n_trans = s.n_trans;
    in.qubit_window_us.reserve(s.n_qubits);
    in.qubit_transfers.reserve(s.n_qubits);
    for (const QubitStats& q : s.qubits) {
        in.qubit_window_us.push_back(q.window_us());
        in.qubit_transfers.push_back(q.transfers);
    }
    return in;
}

FidelityReport evaluate_fidelity(const FidelityInputs& in, const PhysicalParams& p) {
    p.validate();
    if (in.qubit_transfers.size() != in.qubit_window_us.size())
        throw std::logic_error("fidelity inputs: per-qubit arrays disagree");

    FidelityReport r;
    r.inputs = in;
    r.gate_term = std::pow(p.f1, static_cast<double>(in.g1)) *
                  std::pow(p.f2, static_cast<double>(in.g2));
    r.crosstalk_term = std::pow(p.f_excited, static_cast<double>(in.n_res));
    r.transfer_term = std::pow(p.f_trans, static_cast<double>(in.n_trans));
    r.decoherence_term = 1.0;
    r.log_total = static_cast<double>(in.g1) * std::log(p.f1) +
                  static_cast<double>(in.g2) * std::log(p.f2) +
                  static_cast<double>(in.n_res) * std::log(p.f_excited) +
                  static_cast<double>(in.n_trans) * std::log(p.f_trans);
    for (std::size_t q = 0; q < in.qubit_window_us.size(); ++q) {
        double busy = in.qubit_window_us[q] + in.qubit_transfers[q] * p.t_trans_per_op_us;
        if (busy >= p.t2_us)
            throw std::domain_error("qubit " + std::to_string(q) + " busy for " +
                                    std::to_string(busy) + " us, at or beyond T2");
        double keep = 1.0 - busy / p.t2_us;
        r.decoherence_term *= keep;
        r.log_total += std::log(keep);
    }
    r.total = r.gate_term * r.crosstalk_term * r.transfer_term * r.decoherence_term;
    return r;
}

std::string FidelityReport::to_text(const PhysicalParams& p) const {
    std::ostringstream os;
    os.precision(17);
    os << p.echo();
    os << "counts.g1=" << inputs.g1 << "\n"
       << "counts.g2=" << inputs.g2 << "\n"
       << "counts.n_res=" << inputs.n_res << "\n"
       << "counts.n_trans=" << inputs.n_trans << "\n"
       << "fidelity.gate_term=" << gate_term << "\n"
       << "fidelity.crosstalk_term=" << crosstalk_term << "\n"
       << "fidelity.transfer_term=" << transfer_term << "\n"
       << "fidelity.decoherence_term=" << decoherence_term << "\n"
       << "fidelity.log_total=" << log_total << "\n"
       << "fidelity.total=" << total << "\n";
    return os.str();
}

std::vector<std::pair<double, double>> sensitivity_sweep(const FidelityInputs& in,
                                                         const PhysicalParams& base,
                                                         const std::string& param,
                                                         const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(grid.size());
    for (double v : grid) {
        PhysicalParams p = base;
        if (param == "f1") p.f1 = v;
        else if (param == "f2") p.f2 = v;
        else if (param == "f_excited") p.f_excited = v;
        else if (param == "f_trans") p.f_trans = v;
        else if (param == "t2_us") p.t2_us = v;
        else if (param == "t_trans_per_op_us") p.t_trans_per_op_us = v;
        else throw ConfigError("unknown sweep parameter '" + param + "'");
        p.validate();
        rows.emplace_back(v, evaluate_fidelity(in, p).total);
    }
    return rows;
}

} // namespace zap
