#pragma once

#include "zap/placement.hpp"

#include <iosfwd>

namespace zap {

enum class EventKind { MoveBatch, RydbergPulse, SingleQubitRound };

struct ScheduleEvent {
    EventKind kind = EventKind::MoveBatch;
    double start_us = 0;
    double duration_us = 0;

    std::vector<Move> moves; // MoveBatch

    int stage = -1;                                        // RydbergPulse
    std::vector<std::pair<QubitIndex, QubitIndex>> pairs;  // RydbergPulse

    std::vector<int> gate_ids; // RydbergPulse: cz ids; SingleQubitRound: 1q ids
};

struct QubitStats {
    bool involved = false;
    double first_us = 0;
    double last_us = 0;
    int transfers = 0;

    /// Coherence window: first to last event touching this qubit.
    double window_us() const { return involved ? last_us - first_us : 0.0; }
};

/// Executable timeline plus the counters the fidelity model consumes.
struct Schedule {
    std::size_t n_qubits = 0;
    std::string config_echo; // effective architecture settings
    Occupancy initial;
    std::vector<ScheduleEvent> events;
    std::vector<QubitStats> qubits;

    std::size_t g1 = 0;      // single-qubit gates
    std::size_t g2 = 0;      // cz gates
    std::size_t n_res = 0;   // non-participating atoms in range at pulses
    std::size_t n_trans = 0; // trap transfers (pick + drop per move)
    std::size_t move_count = 0;
    std::size_t batch_count = 0;
    double total_move_time_us = 0;
    double makespan_us = 0;

    void write(std::ostream& os) const;
    static Schedule read(std::istream& is);
};

/// Lays out the full timeline: per boundary the single-qubit round, then
/// the move batches into the stage, the stage pulse, and the move batches
/// out to the layer. Verifies after every fetch transition that the
/// blockade pairs equal the stage's gate pairs and that no spectator
/// atom sits in the entanglement zone.
Schedule assemble_schedule(const Circuit& c, const StagePlan& plan, const PlacementSequence& seq,
                           const ArchitectureConfig& cfg);

} // namespace zap
