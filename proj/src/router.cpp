#include "zap/router.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace zap {

namespace {

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    double vx = b.x - a.x;
    double vy = b.y - a.y;
    double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return distance(p, a);
    double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, {a.x + t * vx, a.y + t * vy});
}

double path_clearance(const std::vector<Point>& path, const std::vector<Point>& obstacles) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (const Point& o : obstacles)
            best = std::min(best, point_segment_distance(o, path[i], path[i + 1]));
    return best;
}

void append_waypoint(std::vector<Point>& path, const Point& p) {
    if (!path.empty() && path.back().x == p.x && path.back().y == p.y) return;
    path.push_back(p);
}

} // namespace

double Move::path_length() const {
    double len = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) len += distance(path[i], path[i + 1]);
    return len;
}

Move make_move(QubitIndex q, const Site& from, const Site& to, const ArchitectureConfig& cfg) {
    Move m;
    m.qubit = q;
    m.from = from;
    m.to = to;
    Point s = cfg.site_position(from);
    Point e = cfg.site_position(to);
    m.start_x = s.x;
    m.end_x = e.x;
    m.start_y = s.y;
    m.end_y = e.y;
    if (from != to) m.path = {s, e};
    return m;
}

bool order_preserving(const Move& a, const Move& b) {
    return sgn(a.start_x - b.start_x) == sgn(a.end_x - b.end_x) &&
           sgn(a.start_y - b.start_y) == sgn(a.end_y - b.end_y);
}

bool MoveConflictDag::acyclic() const {
    std::vector<std::vector<int>> adj(n_nodes);
    std::vector<int> indeg(n_nodes, 0);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        ++indeg[b];
    }
    std::deque<int> ready;
    for (std::size_t i = 0; i < n_nodes; ++i)
        if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
    std::size_t emitted = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        ++emitted;
        for (int w : adj[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    return emitted == n_nodes;
}

BatchingResult batch_moves(const std::vector<Move>& moves, const ArchitectureConfig& cfg) {
    (void)cfg;
    {
        std::set<QubitIndex> qs;
        for (const Move& m : moves)
            if (!qs.insert(m.qubit).second)
                throw std::logic_error("batch_moves: duplicate qubit in move list");
    }
    std::vector<int> order(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Move& ma = moves[a];
        const Move& mb = moves[b];
        if (ma.start_y != mb.start_y) return ma.start_y < mb.start_y;
        if (ma.start_x != mb.start_x) return ma.start_x < mb.start_x;
        return ma.qubit < mb.qubit;
    });

    BatchingResult res;
    std::vector<int> batch_of(moves.size(), -1);
    for (int idx : order) {
        bool placed = false;
        for (std::size_t b = 0; b < res.batches.size() && !placed; ++b) {
            bool ok = std::all_of(res.batches[b].begin(), res.batches[b].end(),
                                  [&](int j) { return order_preserving(moves[idx], moves[j]); });
            if (ok) {
                res.batches[b].push_back(idx);
                batch_of[idx] = static_cast<int>(b);
                placed = true;
            }
        }
        if (!placed) {
            batch_of[idx] = static_cast<int>(res.batches.size());
            res.batches.push_back({idx});
        }
    }
    res.dag.n_nodes = moves.size();
    for (std::size_t i = 0; i < moves.size(); ++i)
        for (std::size_t j = i + 1; j < moves.size(); ++j) {
            if (order_preserving(moves[i], moves[j])) continue;
            if (batch_of[i] <= batch_of[j])
                res.dag.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            else
                res.dag.edges.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    return res;
}

std::vector<Point> pre_shift_path(const Move& move, const std::vector<Point>& obstacles,
                                  const RoutingParams& routing) {
    if (move.displacement() == 0.0) return {};
    double sx = move.start_x, sy = move.start_y;
    double tx = move.end_x, ty = move.end_y;

    // Offsets ordered by total magnitude, then lane offset, then column
    // offset; 0 first so unobstructed moves go straight.
    std::vector<double> steps;
    steps.push_back(0.0);
    for (int k = 1; k <= routing.max_lane_steps; ++k) {
        steps.push_back(k * routing.shift_delta_um);
        steps.push_back(-k * routing.shift_delta_um);
    }
    struct Cand {
        double oy, ox, mag;
    };
    std::vector<Cand> cands;
    for (double oy : steps)
        for (double ox : steps) cands.push_back({oy, ox, std::abs(oy) + std::abs(ox)});
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.mag < b.mag;
    });

    for (const Cand& c : cands) {
        double lane_y = sy + c.oy;
        double col_x = tx + c.ox;
        std::vector<Point> path;
        append_waypoint(path, {sx, sy});
        append_waypoint(path, {sx, lane_y});
        append_waypoint(path, {col_x, lane_y});
        append_waypoint(path, {col_x, ty});
        append_waypoint(path, {tx, ty});
        if (path.size() < 2) continue;
        if (path_clearance(path, obstacles) >= routing.clearance_um) return path;
    }
    std::ostringstream os;
    os << "no collision-free lane from (" << sx << ", " << sy << ") to (" << tx << ", " << ty
       << ") within " << routing.max_lane_steps << " offset steps";
    throw RoutingError(os.str());
}

std::size_t TransitionPlan::move_count() const {
    std::size_t n = 0;
    for (const auto& b : batches) n += b.moves.size();
    return n;
}

TransitionPlan plan_transition(const Occupancy& from, const Occupancy& to,
                               const ArchitectureConfig& cfg) {
    if (from.n_qubits() != to.n_qubits())
        throw std::logic_error("plan_transition: qubit count mismatch");
    if (!from.all_placed() || !to.all_placed())
        throw std::logic_error("plan_transition: placements must cover every qubit");

    std::deque<Move> pending;
    for (QubitIndex q = 0; q < from.n_qubits(); ++q) {
        Site s = *from.site_of(q);
        Site t = *to.site_of(q);
        if (s != t) pending.push_back(make_move(q, s, t, cfg));
    }
    std::stable_sort(pending.begin(), pending.end(), [](const Move& a, const Move& b) {
        if (a.start_y != b.start_y) return a.start_y < b.start_y;
        if (a.start_x != b.start_x) return a.start_x < b.start_x;
        return a.qubit < b.qubit;
    });

    Occupancy occ = from;
    TransitionPlan plan;
    std::size_t guard = pending.size() * 4 + 16;

    while (!pending.empty()) {
        if (guard-- == 0) throw RoutingError("transition routing did not converge");

        std::vector<std::size_t> members;
        std::set<std::int64_t> member_targets;
        std::set<QubitIndex> member_qubits;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const Move& m = pending[i];
            auto launch = occ.at(m.from);
            if (!launch || *launch != m.qubit) continue; // second detour leg, not staged yet
            auto blocker = occ.at(m.to);
            if (blocker && !member_qubits.count(*blocker)) continue;
            if (member_targets.count(m.to.key())) continue;
            bool ok = std::all_of(members.begin(), members.end(), [&](std::size_t j) {
                return order_preserving(m, pending[j]);
            });
            if (!ok) continue;
            members.push_back(i);
            member_targets.insert(m.to.key());
            member_qubits.insert(m.qubit);
        }

        if (members.empty()) {
            // Every staged move waits on an occupied target: a dependency
            // cycle. Break it by sending one atom through a free trap.
            std::size_t victim = pending.size();
            for (std::size_t i = 0; i < pending.size(); ++i) {
                auto launch = occ.at(pending[i].from);
                if (launch && *launch == pending[i].qubit) {
                    victim = i;
                    break;
                }
            }
            if (victim == pending.size())
                throw RoutingError("transition routing stalled with no staged move");
            const Move m = pending[victim];

            std::set<std::int64_t> reserved;
            for (const Move& p : pending) reserved.insert(p.to.key());
            Site best{};
            double best_detour = std::numeric_limits<double>::infinity();
            bool found = false;
            auto consider = [&](const Site& s) {
                if (occ.at(s) || reserved.count(s.key())) return;
                double d = distance(cfg.site_position(m.from), cfg.site_position(s)) +
                           distance(cfg.site_position(s), cfg.site_position(m.to));
                if (d < best_detour) {
                    best_detour = d;
                    best = s;
                    found = true;
                }
            };
            for (const Site& s : cfg.storage_sites()) consider(s);
            for (const Site& s : cfg.ent_slots()) consider(s);
            if (!found)
                throw RoutingError("no free trap to break routing deadlock for qubit " +
                                   std::to_string(m.qubit));
            pending[victim] = make_move(m.qubit, m.from, best, cfg);
            pending.insert(pending.begin() + static_cast<std::ptrdiff_t>(victim) + 1,
                           make_move(m.qubit, best, m.to, cfg));
            continue;
        }

        std::vector<Point> obstacles;
        for (QubitIndex q = 0; q < from.n_qubits(); ++q) {
            if (member_qubits.count(q)) continue;
            if (auto s = occ.site_of(q)) obstacles.push_back(cfg.site_position(*s));
        }

        MoveBatch batch;
        double longest = 0;
        for (std::size_t i : members) {
            Move m = pending[i];
            try {
                m.path = pre_shift_path(m, obstacles, cfg.routing);
            } catch (const RoutingError& e) {
                throw RoutingError("qubit " + std::to_string(m.qubit) + ": " + e.what());
            }
            longest = std::max(longest, m.path_length());
            batch.moves.push_back(std::move(m));
        }
        batch.duration_us = cfg.timing.move_time(longest);
        for (const Move& m : batch.moves) occ.remove(m.qubit);
        for (const Move& m : batch.moves) occ.place(m.qubit, m.to);
        plan.batches.push_back(std::move(batch));

        for (auto it = members.rbegin(); it != members.rend(); ++it)
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*it));
    }

    // Conflict edges over the executed move list, directed by batch order.
    std::vector<const Move*> flat;
    std::vector<int> batch_of;
    for (std::size_t b = 0; b < plan.batches.size(); ++b)
        for (const Move& m : plan.batches[b].moves) {
            flat.push_back(&m);
            batch_of.push_back(static_cast<int>(b));
        }
    plan.dag.n_nodes = flat.size();
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j) {
            bool conflict = !order_preserving(*flat[i], *flat[j]) ||
                            flat[j]->to == flat[i]->from || flat[i]->to == flat[j]->from ||
                            flat[i]->qubit == flat[j]->qubit;
            if (!conflict || batch_of[i] == batch_of[j]) continue;
            if (batch_of[i] < batch_of[j])
                plan.dag.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            else
                plan.dag.edges.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    return plan;
}

} // namespace zap
