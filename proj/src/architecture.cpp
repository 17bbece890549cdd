#include "zap/architecture.hpp"

#include <algorithm>
#include <sstream>

namespace zap {

std::string Site::to_string() const {
    std::ostringstream os;
    if (zone == Zone::Storage) {
        os << "S " << row << " " << col;
    } else {
        os << "E " << row << " " << col << " " << (slot == PairSlot::Left ? "L" : "R");
    }
    return os.str();
}

ArchitectureConfig ArchitectureConfig::from_config(const KeyValueConfig& kv) {
    ArchitectureConfig c;
    c.storage_rows = static_cast<int>(kv.get_int("arch.storage_rows", c.storage_rows));
    c.storage_cols = static_cast<int>(kv.get_int("arch.storage_cols", c.storage_cols));
    c.ent_rows = static_cast<int>(kv.get_int("arch.ent_rows", c.ent_rows));
    c.ent_sites_per_row = static_cast<int>(kv.get_int("arch.ent_sites_per_row", c.ent_sites_per_row));
    c.storage_pitch_x = kv.get_double("arch.storage_pitch_x", c.storage_pitch_x);
    c.storage_pitch_y = kv.get_double("arch.storage_pitch_y", c.storage_pitch_y);
    c.intra_pair_gap = kv.get_double("arch.intra_pair_gap", c.intra_pair_gap);
    c.inter_site_gap = kv.get_double("arch.inter_site_gap", c.inter_site_gap);
    c.ent_row_pitch = kv.get_double("arch.ent_row_pitch", c.ent_row_pitch);
    c.zone_gap = kv.get_double("arch.zone_gap", c.zone_gap);
    c.rydberg_radius = kv.get_double("arch.rydberg_radius", c.rydberg_radius);
    c.timing.move_t0_us = kv.get_double("timing.move_t0_us", c.timing.move_t0_us);
    c.timing.move_d0_um = kv.get_double("timing.move_d0_um", c.timing.move_d0_um);
    c.timing.rydberg_pulse_us = kv.get_double("timing.rydberg_pulse_us", c.timing.rydberg_pulse_us);
    c.timing.single_qubit_us = kv.get_double("timing.single_qubit_us", c.timing.single_qubit_us);
    c.routing.clearance_um = kv.get_double("routing.clearance_um", c.routing.clearance_um);
    c.routing.shift_delta_um = kv.get_double("routing.shift_delta_um", c.routing.shift_delta_um);
    c.routing.max_lane_steps = static_cast<int>(kv.get_int("routing.max_lane_steps", c.routing.max_lane_steps));
    c.validate();
    return c;
}

ArchitectureConfig ArchitectureConfig::from_file(const std::string& path) {
    return from_config(KeyValueConfig::from_file(path));
}

ArchitectureConfig ArchitectureConfig::sized_for(std::size_t n_qubits, std::size_t max_stage_width) {
    ArchitectureConfig c;
    std::size_t n = std::max<std::size_t>(n_qubits, 1);
    std::size_t w = std::max<std::size_t>(max_stage_width, 1);
    c.storage_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    c.storage_rows = static_cast<int>((n + c.storage_cols - 1) / c.storage_cols);
    c.ent_sites_per_row = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(w))));
    c.ent_rows = static_cast<int>((w + c.ent_sites_per_row - 1) / c.ent_sites_per_row);
    c.validate();
    return c;
}

void ArchitectureConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    if (storage_rows < 1 || storage_cols < 1) throw ConfigError("storage grid must be at least 1x1");
    if (ent_rows < 1 || ent_sites_per_row < 1) throw ConfigError("entanglement zone must have at least one site");
    positive(storage_pitch_x, "arch.storage_pitch_x");
    positive(storage_pitch_y, "arch.storage_pitch_y");
    positive(intra_pair_gap, "arch.intra_pair_gap");
    positive(inter_site_gap, "arch.inter_site_gap");
    positive(ent_row_pitch, "arch.ent_row_pitch");
    positive(zone_gap, "arch.zone_gap");
    positive(rydberg_radius, "arch.rydberg_radius");
    positive(timing.move_t0_us, "timing.move_t0_us");
    positive(timing.move_d0_um, "timing.move_d0_um");
    positive(timing.rydberg_pulse_us, "timing.rydberg_pulse_us");
    positive(timing.single_qubit_us, "timing.single_qubit_us");
    positive(routing.clearance_um, "routing.clearance_um");
    positive(routing.shift_delta_um, "routing.shift_delta_um");
    if (routing.max_lane_steps < 0) throw ConfigError("routing.max_lane_steps must be >= 0");
    if (rydberg_radius <= intra_pair_gap)
        throw ConfigError("rydberg radius must exceed the intra-pair gap");
    // Traps of distinct sites must stay outside blockade range.
    if (inter_site_gap <= rydberg_radius)
        throw ConfigError("inter-site gap must exceed the rydberg radius");
    if (ent_row_pitch <= rydberg_radius)
        throw ConfigError("entanglement row pitch must exceed the rydberg radius");
    if (std::min(storage_pitch_x, storage_pitch_y) <= rydberg_radius)
        throw ConfigError("storage pitch must exceed the rydberg radius");
    if (zone_gap <= rydberg_radius)
        throw ConfigError("zone gap must exceed the rydberg radius");
}

std::string ArchitectureConfig::echo() const {
    std::ostringstream os;
    os.precision(17);
    os << "arch.storage_rows=" << storage_rows << "\n"
       << "arch.storage_cols=" << storage_cols << "\n"
       << "arch.ent_rows=" << ent_rows << "\n"
       << "arch.ent_sites_per_row=" << ent_sites_per_row << "\n"
       << "arch.storage_pitch_x=" << storage_pitch_x << "\n"
       << "arch.storage_pitch_y=" << storage_pitch_y << "\n"
       << "arch.intra_pair_gap=" << intra_pair_gap << "\n"
       << "arch.inter_site_gap=" << inter_site_gap << "\n"
       << "arch.ent_row_pitch=" << ent_row_pitch << "\n"
       << "arch.zone_gap=" << zone_gap << "\n"
       << "arch.rydberg_radius=" << rydberg_radius << "\n"
       << "timing.move_t0_us=" << timing.move_t0_us << "\n"
       << "timing.move_d0_um=" << timing.move_d0_um << "\n"
       << "timing.rydberg_pulse_us=" << timing.rydberg_pulse_us << "\n"
       << "timing.single_qubit_us=" << timing.single_qubit_us << "\n"
       << "routing.clearance_um=" << routing.clearance_um << "\n"
       << "routing.shift_delta_um=" << routing.shift_delta_um << "\n"
       << "routing.max_lane_steps=" << routing.max_lane_steps << "\n";
    return os.str();
}

bool ArchitectureConfig::in_bounds(const Site& s) const {
    if (s.row < 0 || s.col < 0) return false;
    if (s.zone == Zone::Storage)
        return s.row < storage_rows && s.col < storage_cols;
    return s.row < ent_rows && s.col < ent_sites_per_row;
}

Point ArchitectureConfig::site_position(const Site& s) const {
    if (!in_bounds(s)) throw std::out_of_range("site outside grid: " + s.to_string());
    if (s.zone == Zone::Storage)
        return {s.col * storage_pitch_x, s.row * storage_pitch_y};
    double x = s.col * (intra_pair_gap + inter_site_gap);
    if (s.slot == PairSlot::Right) x += intra_pair_gap;
    double y = storage_top_y() + zone_gap + s.row * ent_row_pitch;
    return {x, y};
}

std::vector<Site> ArchitectureConfig::storage_sites() const {
    std::vector<Site> out;
    out.reserve(storage_capacity());
    for (int r = 0; r < storage_rows; ++r)
        for (int c = 0; c < storage_cols; ++c) out.push_back(Site::storage(r, c));
    return out;
}

std::vector<Site> ArchitectureConfig::ent_slots() const {
    std::vector<Site> out;
    out.reserve(ent_site_capacity() * 2);
    for (int r = 0; r < ent_rows; ++r)
        for (int s = 0; s < ent_sites_per_row; ++s) {
            out.push_back(Site::ent(r, s, PairSlot::Left));
            out.push_back(Site::ent(r, s, PairSlot::Right));
        }
    return out;
}

void Occupancy::place(QubitIndex q, const Site& s) {
    if (q >= site_of_.size()) throw std::logic_error("qubit index out of range");
    if (site_of_[q]) throw std::logic_error("qubit already placed");
    if (by_site_.count(s.key())) throw std::logic_error("site already occupied: " + s.to_string());
    site_of_[q] = s;
    by_site_[s.key()] = {s, q};
}

void Occupancy::remove(QubitIndex q) {
    if (q >= site_of_.size() || !site_of_[q]) throw std::logic_error("qubit not placed");
    by_site_.erase(site_of_[q]->key());
    site_of_[q].reset();
}

void Occupancy::relocate(QubitIndex q, const Site& s) {
    remove(q);
    place(q, s);
}

std::optional<QubitIndex> Occupancy::at(const Site& s) const {
    auto it = by_site_.find(s.key());
    if (it == by_site_.end()) return std::nullopt;
    return it->second.second;
}

std::optional<Site> Occupancy::site_of(QubitIndex q) const {
    if (q >= site_of_.size()) return std::nullopt;
    return site_of_[q];
}

bool Occupancy::all_placed() const {
    return by_site_.size() == site_of_.size();
}

bool Occupancy::all_in_storage() const {
    if (!all_placed()) return false;
    return std::all_of(by_site_.begin(), by_site_.end(),
                       [](const auto& e) { return e.second.first.zone == Zone::Storage; });
}

std::vector<std::pair<Site, QubitIndex>> Occupancy::ent_occupants() const {
    std::vector<std::pair<Site, QubitIndex>> out;
    for (const auto& [key, sq] : by_site_)
        if (sq.first.zone == Zone::Entanglement) out.push_back(sq);
    return out;
}

std::vector<std::pair<QubitIndex, QubitIndex>>
blockade_pairs(const ArchitectureConfig& cfg, const Occupancy& occ) {
    std::vector<std::pair<QubitIndex, QubitIndex>> pairs;
    auto atoms = occ.ent_occupants();
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            double d = distance(cfg.site_position(atoms[i].first), cfg.site_position(atoms[j].first));
            if (d < cfg.rydberg_radius) {
                QubitIndex a = atoms[i].second;
                QubitIndex b = atoms[j].second;
                pairs.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

CapacityVerdict min_capacity_check(const ArchitectureConfig& cfg, std::size_t n_qubits,
                                   std::size_t max_stage_width) {
    CapacityVerdict v;
    v.required_storage = n_qubits;
    v.available_storage = cfg.storage_capacity();
    v.required_ent_sites = max_stage_width;
    v.available_ent_sites = cfg.ent_site_capacity();
    std::ostringstream os;
    if (v.required_storage > v.available_storage) {
        v.ok = false;
        os << "storage shortfall: need " << v.required_storage << " traps, have "
           << v.available_storage << "; ";
    }
    if (v.required_ent_sites > v.available_ent_sites) {
        v.ok = false;
        os << "entanglement shortfall: widest stage needs " << v.required_ent_sites
           << " sites, have " << v.available_ent_sites << "; ";
    }
    v.message = os.str();
    if (!v.message.empty()) v.message.pop_back(), v.message.pop_back();
    return v;
}

} // namespace zap
