#pragma once

#include "zap/config.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zap {

using QubitIndex = std::uint32_t;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class Zone { Storage, Entanglement };

/// Which of the two traps of an entanglement site an atom sits in.
enum class PairSlot { Left, Right };

/// A trap address. Storage traps are addressed (row, col); entanglement
/// traps are addressed (row, site index, slot). One site holds two traps
/// separated by the intra-pair gap.
struct Site {
    Zone zone = Zone::Storage;
    int row = 0;
    int col = 0; // storage column, or entanglement site index within the row
    PairSlot slot = PairSlot::Left;

    static Site storage(int row, int col) { return {Zone::Storage, row, col, PairSlot::Left}; }
    static Site ent(int row, int site, PairSlot slot) { return {Zone::Entanglement, row, site, slot}; }

    /// Dense ordering key; also used for map lookups.
    std::int64_t key() const {
        std::int64_t z = zone == Zone::Storage ? 0 : 1;
        std::int64_t s = (zone == Zone::Entanglement && slot == PairSlot::Right) ? 1 : 0;
        return (((z * (1 << 20) + row) * (1 << 20) + col) << 1) + s;
    }

    friend bool operator==(const Site& a, const Site& b) { return a.key() == b.key(); }
    friend bool operator!=(const Site& a, const Site& b) { return a.key() != b.key(); }
    friend bool operator<(const Site& a, const Site& b) { return a.key() < b.key(); }

    std::string to_string() const;
};

/// Atom flight-time and pulse-duration parameters, all in microseconds
/// and micrometers.
struct TimingModel {
    double move_t0_us = 200.0;  // flight time over the reference distance
    double move_d0_um = 110.0;  // reference distance
    double rydberg_pulse_us = 0.4;
    double single_qubit_us = 0.5; // per sub-round

    /// Flight time for a path of length `dist`: t0 * sqrt(dist / d0).
    double move_time(double dist) const {
        return dist <= 0.0 ? 0.0 : move_t0_us * std::sqrt(dist / move_d0_um);
    }
};

/// Collision-avoidance parameters for move path planning.
struct RoutingParams {
    double clearance_um = 2.0;   // minimum path-to-trap distance
    double shift_delta_um = 1.0; // lane offset step
    int max_lane_steps = 6;      // search offsets in [-max, +max] * delta
};

/// Zoned trap-array geometry: a storage grid below an entanglement zone of
/// paired sites, plus timing and routing parameters. All lengths in um.
struct ArchitectureConfig {
    int storage_rows = 10;
    int storage_cols = 10;
    int ent_rows = 4;
    int ent_sites_per_row = 5;

    double storage_pitch_x = 6.0;
    double storage_pitch_y = 6.0;
    double intra_pair_gap = 4.0;  // between the two traps of a site
    double inter_site_gap = 6.0;  // between adjacent sites in a row
    double ent_row_pitch = 6.0;
    double zone_gap = 12.0;       // storage top row to first entanglement row
    double rydberg_radius = 5.0;  // blockade range

    TimingModel timing;
    RoutingParams routing;

    static ArchitectureConfig from_config(const KeyValueConfig& kv);
    static ArchitectureConfig from_file(const std::string& path);

    /// Smallest square-ish geometry with the default pitches that fits
    /// `n_qubits` storage traps and `max_stage_width` entanglement sites.
    static ArchitectureConfig sized_for(std::size_t n_qubits, std::size_t max_stage_width);

    /// Throws ConfigError on non-positive dimensions or a blockade radius
    /// that couples neighbouring sites.
    void validate() const;

    /// Effective settings as config lines, for report headers.
    std::string echo() const;

    std::size_t storage_capacity() const {
        return static_cast<std::size_t>(storage_rows) * storage_cols;
    }
    std::size_t ent_site_capacity() const {
        return static_cast<std::size_t>(ent_rows) * ent_sites_per_row;
    }

    double storage_top_y() const { return (storage_rows - 1) * storage_pitch_y; }

    bool in_bounds(const Site& s) const;

    /// Physical trap position. Throws std::out_of_range for sites outside
    /// the configured grid.
    Point site_position(const Site& s) const;

    std::vector<Site> storage_sites() const;
    std::vector<Site> ent_slots() const; // both traps of every site, row-major, Left first
};

/// Bijective qubit <-> trap assignment for one moment in time.
class Occupancy {
public:
    Occupancy() = default;
    explicit Occupancy(std::size_t n_qubits) : site_of_(n_qubits) {}

    std::size_t n_qubits() const { return site_of_.size(); }

    /// Throws std::logic_error if the site is taken or the qubit is
    /// already placed.
    void place(QubitIndex q, const Site& s);
    void remove(QubitIndex q);
    void relocate(QubitIndex q, const Site& s);

    std::optional<QubitIndex> at(const Site& s) const;
    std::optional<Site> site_of(QubitIndex q) const;

    bool all_placed() const;
    bool all_in_storage() const;

    /// Occupied entanglement-zone slots with their qubits, in site order.
    std::vector<std::pair<Site, QubitIndex>> ent_occupants() const;

    friend bool operator==(const Occupancy& a, const Occupancy& b) {
        return a.by_site_ == b.by_site_ && a.site_of_.size() == b.site_of_.size();
    }

private:
    std::vector<std::optional<Site>> site_of_;
    std::map<std::int64_t, std::pair<Site, QubitIndex>> by_site_;
};

/// Qubit pairs closer than the blockade radius, each pair (lo, hi),
/// sorted. Only entanglement-zone atoms can be within range of each other
/// under a valid geometry.
std::vector<std::pair<QubitIndex, QubitIndex>>
blockade_pairs(const ArchitectureConfig& cfg, const Occupancy& occ);

struct CapacityVerdict {
    bool ok = true;
    std::size_t required_storage = 0;
    std::size_t available_storage = 0;
    std::size_t required_ent_sites = 0;
    std::size_t available_ent_sites = 0;
    std::string message; // shortfall description when !ok
};

/// Checks storage capacity against the qubit count and entanglement
/// capacity against the widest stage.
CapacityVerdict min_capacity_check(const ArchitectureConfig& cfg, std::size_t n_qubits,
                                   std::size_t max_stage_width);

} // namespace zap
