#pragma once

#include "zap/circuit.hpp"
#include "zap/schedule.hpp"

#include <complex>
#include <vector>

namespace zap {

using Amplitude = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2 {
    Amplitude m[2][2];

    static Mat2 h();
    static Mat2 x();
    static Mat2 rz(double theta);
    /// Rotation by theta about the axis (cos phi, -sin phi, 0):
    /// [[cos t, -i e^{i phi} sin t], [-i e^{-i phi} sin t, cos t]].
    static Mat2 rotation(double theta, double phi);

    bool is_unitary(double tol = 1e-12) const;
};

Mat2 gate_matrix(const Gate& g);

/// Little-endian statevector: qubit 0 is the least significant index bit.
class StateVector {
public:
    explicit StateVector(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

    void apply_single(QubitIndex q, const Mat2& u);
    void apply_cz(QubitIndex a, QubitIndex b);

    double norm() const;

private:
    std::size_t n_;
    std::vector<Amplitude> amps_;
    void check_norm() const;
};

inline constexpr std::size_t kSimQubitCap = 12;

/// Runs the gate list in program order. Throws std::length_error above
/// the qubit cap.
StateVector simulate_circuit(const Circuit& c, std::size_t cap = kSimQubitCap);

/// Replays a schedule: tracks atom positions through move batches,
/// recomputes blockade pairs at every pulse from the tracked occupancy,
/// and applies boundary gates at single-qubit rounds. Throws
/// std::logic_error when the replayed pulse pairs diverge from the
/// event's recorded pairs or from the circuit's gates.
StateVector simulate_schedule(const Schedule& s, const Circuit& c,
                              const ArchitectureConfig& cfg, std::size_t cap = kSimQubitCap);

/// |<a|b>| >= 1 - tol, i.e. equality up to global phase.
bool equivalent_up_to_global_phase(const StateVector& a, const StateVector& b, double tol = 1e-9);

/// |<a|b>| itself, for reporting.
double overlap_magnitude(const StateVector& a, const StateVector& b);

} // namespace zap
