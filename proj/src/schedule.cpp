#include "zap/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace zap {

namespace {

void touch(std::vector<QubitStats>& stats, QubitIndex q, double start, double end) {
    QubitStats& s = stats[q];
    if (!s.involved) {
        s.involved = true;
        s.first_us = start;
        s.last_us = end;
    } else {
        s.first_us = std::min(s.first_us, start);
        s.last_us = std::max(s.last_us, end);
    }
}

} // namespace

Schedule assemble_schedule(const Circuit& c, const StagePlan& plan, const PlacementSequence& seq,
                           const ArchitectureConfig& cfg) {
    validate_placement(seq, c, plan, cfg);
    {
        StagePlanViolation v = validate_stage_plan(plan, c, build_dag(c));
        if (!v.ok()) throw std::logic_error("invalid stage plan: " + v.message);
    }

    Schedule sched;
    sched.n_qubits = c.n_qubits;
    sched.config_echo = cfg.echo();
    sched.initial = seq.points[0].occ;
    sched.qubits.resize(c.n_qubits);
    sched.g1 = c.count_single_qubit();
    sched.g2 = c.count_cz();

    double t = 0;
    Occupancy occ = seq.points[0].occ;

    auto emit_boundary = [&](int boundary) {
        std::vector<int> ids = plan.boundary_gates(boundary);
        if (ids.empty()) return;
        std::map<QubitIndex, int> per_qubit;
        for (int id : ids) ++per_qubit[c.gates[id].qubits[0]];
        int rounds = 0;
        for (auto& [q, n] : per_qubit) rounds = std::max(rounds, n);
        ScheduleEvent ev;
        ev.kind = EventKind::SingleQubitRound;
        ev.start_us = t;
        ev.duration_us = rounds * cfg.timing.single_qubit_us;
        ev.gate_ids = ids;
        t += ev.duration_us;
        for (auto& [q, n] : per_qubit) touch(sched.qubits, q, ev.start_us, t);
        sched.events.push_back(std::move(ev));
    };

    auto emit_transition = [&](const Occupancy& target) {
        TransitionPlan tp = plan_transition(occ, target, cfg);
        for (MoveBatch& b : tp.batches) {
            ScheduleEvent ev;
            ev.kind = EventKind::MoveBatch;
            ev.start_us = t;
            ev.duration_us = b.duration_us;
            t += b.duration_us;
            for (const Move& m : b.moves) {
                touch(sched.qubits, m.qubit, ev.start_us, t);
                sched.qubits[m.qubit].transfers += 2;
                sched.n_trans += 2;
                ++sched.move_count;
            }
            sched.total_move_time_us += b.duration_us;
            ev.moves = std::move(b.moves);
            sched.events.push_back(std::move(ev));
            ++sched.batch_count;
        }
        occ = target;
    };

    std::size_t S = plan.n_stages();
    for (std::size_t k = 0; k < S; ++k) {
        emit_boundary(static_cast<int>(k));
        emit_transition(seq.points[seq.stage_point(static_cast<int>(k))].occ);

        std::vector<std::pair<QubitIndex, QubitIndex>> pairs;
        std::set<QubitIndex> participants;
        for (int id : plan.stages[k]) {
            QubitIndex a = c.gates[id].qubits[0];
            QubitIndex b = c.gates[id].qubits[1];
            pairs.emplace_back(std::min(a, b), std::max(a, b));
            participants.insert(a);
            participants.insert(b);
        }
        std::sort(pairs.begin(), pairs.end());
        auto in_range = blockade_pairs(cfg, occ);
        if (in_range != pairs)
            throw std::logic_error("stage " + std::to_string(k) +
                                   ": blockade pairs diverge from the gate set");
        for (const auto& [site, q] : occ.ent_occupants())
            if (!participants.count(q)) ++sched.n_res;

        ScheduleEvent ev;
        ev.kind = EventKind::RydbergPulse;
        ev.start_us = t;
        ev.duration_us = cfg.timing.rydberg_pulse_us;
        ev.stage = static_cast<int>(k);
        ev.pairs = pairs;
        ev.gate_ids = plan.stages[k];
        t += ev.duration_us;
        for (QubitIndex q : participants) touch(sched.qubits, q, ev.start_us, t);
        sched.events.push_back(std::move(ev));

        emit_transition(seq.points[seq.layer_point(static_cast<int>(k))].occ);
    }
    emit_boundary(static_cast<int>(S));

    sched.makespan_us = t;
    return sched;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_site(std::ostream& os, const Site& s) {
    if (s.zone == Zone::Storage)
        os << "S " << s.row << " " << s.col;
    else
        os << "E " << s.row << " " << s.col << " " << (s.slot == PairSlot::Left ? "L" : "R");
}

Site read_site(std::istringstream& is) {
    std::string zone;
    is >> zone;
    int row, col;
    is >> row >> col;
    if (zone == "S") return Site::storage(row, col);
    if (zone == "E") {
        std::string slot;
        is >> slot;
        return Site::ent(row, col, slot == "L" ? PairSlot::Left : PairSlot::Right);
    }
    throw std::runtime_error("schedule parse: bad site zone '" + zone + "'");
}

} // namespace

void Schedule::write(std::ostream& os) const {
    os << "zapsched 1\n";
    {
        std::istringstream cfg(config_echo);
        std::string line;
        while (std::getline(cfg, line))
            if (!line.empty()) os << "config " << line << "\n";
    }
    os << "qubits " << n_qubits << "\n";
    os << "counter g1 " << g1 << "\n";
    os << "counter g2 " << g2 << "\n";
    os << "counter n_res " << n_res << "\n";
    os << "counter n_trans " << n_trans << "\n";
    os << "counter moves " << move_count << "\n";
    os << "counter batches " << batch_count << "\n";
    os << "stat total_move_time_us " << fmt_double(total_move_time_us) << "\n";
    os << "stat makespan_us " << fmt_double(makespan_us) << "\n";
    for (QubitIndex q = 0; q < n_qubits; ++q) {
        const QubitStats& s = qubits[q];
        os << "qubit " << q << " " << (s.involved ? 1 : 0) << " " << fmt_double(s.first_us) << " "
           << fmt_double(s.last_us) << " " << s.transfers << "\n";
    }
    for (QubitIndex q = 0; q < n_qubits; ++q) {
        os << "init " << q << " ";
        write_site(os, *initial.site_of(q));
        os << "\n";
    }
    for (const ScheduleEvent& ev : events) {
        switch (ev.kind) {
        case EventKind::MoveBatch:
            os << "event move " << fmt_double(ev.start_us) << " " << fmt_double(ev.duration_us)
               << " " << ev.moves.size() << "\n";
            for (const Move& m : ev.moves) {
                os << "  mv " << m.qubit << " ";
                write_site(os, m.from);
                os << " ";
                write_site(os, m.to);
                os << " path";
                for (const Point& p : m.path) os << " " << fmt_double(p.x) << "," << fmt_double(p.y);
                os << "\n";
            }
            break;
        case EventKind::RydbergPulse: {
            os << "event pulse " << fmt_double(ev.start_us) << " " << fmt_double(ev.duration_us)
               << " stage " << ev.stage << " gates";
            for (std::size_t i = 0; i < ev.gate_ids.size(); ++i)
                os << (i ? "," : " ") << ev.gate_ids[i];
            os << " pairs";
            for (std::size_t i = 0; i < ev.pairs.size(); ++i)
                os << (i ? "," : " ") << ev.pairs[i].first << ":" << ev.pairs[i].second;
            os << "\n";
            break;
        }
        case EventKind::SingleQubitRound:
            os << "event sq " << fmt_double(ev.start_us) << " " << fmt_double(ev.duration_us)
               << " gates";
            for (std::size_t i = 0; i < ev.gate_ids.size(); ++i)
                os << (i ? "," : " ") << ev.gate_ids[i];
            os << "\n";
            break;
        }
    }
    os << "end\n";
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

} // namespace

Schedule Schedule::read(std::istream& in) {
    Schedule s;
    std::string line;
    if (!std::getline(in, line) || line != "zapsched 1")
        throw std::runtime_error("schedule parse: missing header");
    std::ostringstream echo;
    bool saw_end = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        if (kw == "end") {
            saw_end = true;
            break;
        } else if (kw == "config") {
            std::string rest;
            std::getline(is, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            echo << rest << "\n";
        } else if (kw == "qubits") {
            is >> s.n_qubits;
            s.qubits.resize(s.n_qubits);
            s.initial = Occupancy(s.n_qubits);
        } else if (kw == "counter") {
            std::string name;
            std::size_t v;
            is >> name >> v;
            if (name == "g1") s.g1 = v;
            else if (name == "g2") s.g2 = v;
            else if (name == "n_res") s.n_res = v;
            else if (name == "n_trans") s.n_trans = v;
            else if (name == "moves") s.move_count = v;
            else if (name == "batches") s.batch_count = v;
            else throw std::runtime_error("schedule parse: unknown counter " + name);
        } else if (kw == "stat") {
            std::string name;
            double v;
            is >> name >> v;
            if (name == "total_move_time_us") s.total_move_time_us = v;
            else if (name == "makespan_us") s.makespan_us = v;
            else throw std::runtime_error("schedule parse: unknown stat " + name);
        } else if (kw == "qubit") {
            QubitIndex q;
            int involved;
            QubitStats st;
            is >> q >> involved >> st.first_us >> st.last_us >> st.transfers;
            st.involved = involved != 0;
            s.qubits.at(q) = st;
        } else if (kw == "init") {
            QubitIndex q;
            is >> q;
            s.initial.place(q, read_site(is));
        } else if (kw == "event") {
            std::string kind;
            is >> kind;
            ScheduleEvent ev;
            is >> ev.start_us >> ev.duration_us;
            if (kind == "move") {
                ev.kind = EventKind::MoveBatch;
                std::size_t count;
                is >> count;
                for (std::size_t i = 0; i < count; ++i) {
                    if (!std::getline(in, line))
                        throw std::runtime_error("schedule parse: truncated move batch");
                    std::istringstream ms(line);
                    std::string tag;
                    ms >> tag;
                    if (tag != "mv") throw std::runtime_error("schedule parse: expected mv line");
                    Move m;
                    ms >> m.qubit;
                    m.from = read_site(ms);
                    m.to = read_site(ms);
                    ms >> tag; // "path"
                    std::string pt;
                    while (ms >> pt) {
                        auto comma = pt.find(',');
                        m.path.push_back(
                            {std::stod(pt.substr(0, comma)), std::stod(pt.substr(comma + 1))});
                    }
                    if (!m.path.empty()) {
                        m.start_x = m.path.front().x;
                        m.start_y = m.path.front().y;
                        m.end_x = m.path.back().x;
                        m.end_y = m.path.back().y;
                    }
                    ev.moves.push_back(std::move(m));
                }
            } else if (kind == "pulse") {
                ev.kind = EventKind::RydbergPulse;
                std::string tag;
                is >> tag >> ev.stage; // "stage"
                is >> tag;             // "gates"
                std::string list;
                is >> list;
                ev.gate_ids = parse_int_list(list);
                is >> tag; // "pairs"
                is >> list;
                std::istringstream ps(list);
                std::string pair;
                while (std::getline(ps, pair, ',')) {
                    auto colon = pair.find(':');
                    ev.pairs.emplace_back(
                        static_cast<QubitIndex>(std::stoul(pair.substr(0, colon))),
                        static_cast<QubitIndex>(std::stoul(pair.substr(colon + 1))));
                }
            } else if (kind == "sq") {
                ev.kind = EventKind::SingleQubitRound;
                std::string tag;
                is >> tag; // "gates"
                std::string list;
                is >> list;
                ev.gate_ids = parse_int_list(list);
            } else {
                throw std::runtime_error("schedule parse: unknown event kind " + kind);
            }
            s.events.push_back(std::move(ev));
        } else {
            throw std::runtime_error("schedule parse: unknown record '" + kw + "'");
        }
    }
    if (!saw_end) throw std::runtime_error("schedule parse: missing end marker");
    s.config_echo = echo.str();
    return s;
}

} // namespace zap
