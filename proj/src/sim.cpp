#include "zap/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace zap {

namespace {

const Amplitude kI{0.0, 1.0};

} // namespace

Mat2 Mat2::h() {
    double s = 1.0 / std::sqrt(2.0);
    return {{{s, s}, {s, -s}}};
}

Mat2 Mat2::x() { return {{{0, 1}, {1, 0}}}; }

Mat2 Mat2::rz(double theta) {
    return {{{std::exp(-kI * (theta / 2)), 0}, {0, std::exp(kI * (theta / 2))}}};
}

Mat2 Mat2::rotation(double theta, double phi) {
    Amplitude c = std::cos(theta);
    Amplitude s = std::sin(theta);
    return {{{c, -kI * std::exp(kI * phi) * s}, {-kI * std::exp(-kI * phi) * s, c}}};
}

bool Mat2::is_unitary(double tol) const {
    // U * U^dagger == I
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Amplitude dot = m[i][0] * std::conj(m[j][0]) + m[i][1] * std::conj(m[j][1]);
            Amplitude want = i == j ? Amplitude{1, 0} : Amplitude{0, 0};
            if (std::abs(dot - want) > tol) return false;
        }
    return true;
}

Mat2 gate_matrix(const Gate& g) {
    if (g.name == "h") return Mat2::h();
    if (g.name == "x") return Mat2::x();
    if (g.name == "rz") return Mat2::rz(g.params.at(0));
    throw std::logic_error("no single-qubit matrix for gate '" + g.name + "'");
}

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
    amps_.assign(std::size_t{1} << n_, Amplitude{0, 0});
    amps_[0] = Amplitude{1, 0};
}

void StateVector::apply_single(QubitIndex q, const Mat2& u) {
    if (q >= n_) throw std::out_of_range("qubit index beyond state size");
    std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            Amplitude a0 = amps_[i];
            Amplitude a1 = amps_[i + stride];
            amps_[i] = u.m[0][0] * a0 + u.m[0][1] * a1;
            amps_[i + stride] = u.m[1][0] * a0 + u.m[1][1] * a1;
        }
    check_norm();
}

void StateVector::apply_cz(QubitIndex a, QubitIndex b) {
    if (a >= n_ || b >= n_) throw std::out_of_range("qubit index beyond state size");
    if (a == b) throw std::logic_error("cz needs two distinct qubits");
    std::size_t ma = std::size_t{1} << a;
    std::size_t mb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & ma) && (i & mb)) amps_[i] = -amps_[i];
    check_norm();
}

double StateVector::norm() const {
    double s = 0;
    for (const Amplitude& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::check_norm() const {
    if (std::abs(norm() - 1.0) > 1e-12)
        throw std::logic_error("statevector norm drifted from 1");
}

StateVector simulate_circuit(const Circuit& c, std::size_t cap) {
    if (c.n_qubits > cap)
        throw std::length_error("circuit exceeds the " + std::to_string(cap) + "-qubit cap");
    c.validate();
    StateVector sv(c.n_qubits);
    for (const Gate& g : c.gates) {
        if (g.is_cz())
            sv.apply_cz(g.qubits[0], g.qubits[1]);
        else
            sv.apply_single(g.qubits[0], gate_matrix(g));
    }
    return sv;
}

StateVector simulate_schedule(const Schedule& s, const Circuit& c,
                              const ArchitectureConfig& cfg, std::size_t cap) {
    if (s.n_qubits > cap)
        throw std::length_error("schedule exceeds the " + std::to_string(cap) + "-qubit cap");
    if (s.n_qubits != c.n_qubits)
        throw std::logic_error("schedule and circuit disagree on qubit count");

    std::set<std::pair<QubitIndex, QubitIndex>> cz_pairs;
    for (const Gate& g : c.gates)
        if (g.is_cz())
            cz_pairs.insert({std::min(g.qubits[0], g.qubits[1]),
                             std::max(g.qubits[0], g.qubits[1])});

    StateVector sv(s.n_qubits);
    Occupancy occ = s.initial;
    if (!occ.all_in_storage())
        throw std::logic_error("schedule replay: atoms must start in storage");

    for (const ScheduleEvent& ev : s.events) {
        switch (ev.kind) {
        case EventKind::MoveBatch:
            for (const Move& m : ev.moves) {
                auto here = occ.site_of(m.qubit);
                if (!here || *here != m.from)
                    throw std::logic_error("schedule replay: move picks qubit " +
                                           std::to_string(m.qubit) + " from the wrong trap");
                occ.relocate(m.qubit, m.to);
            }
            break;
        case EventKind::RydbergPulse: {
            auto pairs = blockade_pairs(cfg, occ);
            if (pairs != ev.pairs)
                throw std::logic_error("schedule replay: blockade pairs diverge at stage " +
                                       std::to_string(ev.stage));
            for (const auto& [a, b] : pairs) {
                if (!cz_pairs.count({a, b}))
                    throw std::logic_error("schedule replay: pulse entangles " +
                                           std::to_string(a) + "," + std::to_string(b) +
                                           " which share no cz gate");
                sv.apply_cz(a, b);
            }
            break;
        }
        case EventKind::SingleQubitRound:
            for (int id : ev.gate_ids) {
                const Gate& g = c.gates.at(id);
                if (g.is_cz())
                    throw std::logic_error("schedule replay: cz gate in a single-qubit round");
                sv.apply_single(g.qubits[0], gate_matrix(g));
            }
            break;
        }
    }
    return sv;
}

double overlap_magnitude(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::logic_error("overlap of states with different qubit counts");
    Amplitude dot{0, 0};
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    for (std::size_t i = 0; i < va.size(); ++i) dot += std::conj(va[i]) * vb[i];
    return std::abs(dot);
}

bool equivalent_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    return overlap_magnitude(a, b) >= 1.0 - tol;
}

} // namespace zap
