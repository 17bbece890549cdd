#pragma once

#include "zap/architecture.hpp"

#include <stdexcept>
#include <vector>

namespace zap {

class RoutingError : public std::runtime_error {
public:
    explicit RoutingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One atom relocation, described by its endpoint 4-vector
/// (start_x, end_x, start_y, end_y) plus the planned waypoint path.
struct Move {
    QubitIndex qubit = 0;
    Site from;
    Site to;
    double start_x = 0, end_x = 0, start_y = 0, end_y = 0;

    /// Axis-aligned waypoints including both endpoints; empty for a
    /// zero-length move, endpoints only until a path is planned.
    std::vector<Point> path;

    Point start() const { return {start_x, start_y}; }
    Point end() const { return {end_x, end_y}; }
    double displacement() const { return distance(start(), end()); }
    double path_length() const;
};

Move make_move(QubitIndex q, const Site& from, const Site& to, const ArchitectureConfig& cfg);

/// Two moves can share a tone set iff their endpoint deltas agree in sign
/// on both axes (sign includes zero): sgn(sx_a - sx_b) == sgn(ex_a - ex_b)
/// and likewise in y. Order preservation keeps rows/columns of the moving
/// grid from crossing.
bool order_preserving(const Move& a, const Move& b);

/// Conflict edges between moves: (a, b) means a's batch must come before
/// b's. Pair conflicts (either direction possible) carry one edge in the
/// direction the planner chose.
struct MoveConflictDag {
    std::size_t n_nodes = 0;
    std::vector<std::pair<int, int>> edges;

    bool acyclic() const;
};

struct BatchingResult {
    std::vector<std::vector<int>> batches; // indices into the input move list
    MoveConflictDag dag;
};

/// Greedy first-fit grouping by order preservation alone, scanning moves
/// sorted by (start_y, start_x). Precondition: distinct qubits. The batch
/// count is the parallelism measure the placement cost uses.
BatchingResult batch_moves(const std::vector<Move>& moves, const ArchitectureConfig& cfg);

/// Plans one move's waypoints around static obstacles: lift to an offset
/// horizontal lane, traverse, descend at an offset column, settle. Lane
/// offsets are multiples of routing.shift_delta_um, chosen so every path
/// segment keeps routing.clearance_um from every obstacle. Throws
/// RoutingError when no offset within the search range clears.
std::vector<Point> pre_shift_path(const Move& move, const std::vector<Point>& obstacles,
                                  const RoutingParams& routing);

struct MoveBatch {
    std::vector<Move> moves;
    double duration_us = 0; // flight time of the longest member path
};

struct TransitionPlan {
    std::vector<MoveBatch> batches;
    MoveConflictDag dag; // over the flattened move list, batch order
    std::size_t move_count() const;
};

/// Routes all relocations between two full placements: diff the
/// occupancies, batch order-preserving moves first-fit, respect
/// target-site dependencies (an atom cannot land on a trap another atom
/// has not yet left), detour through a free parking trap when dependencies
/// deadlock, and plan collision-free waypoints per move. Throws
/// RoutingError when no legal plan exists.
TransitionPlan plan_transition(const Occupancy& from, const Occupancy& to,
                               const ArchitectureConfig& cfg);

} // namespace zap
