#include "zap/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zap {

namespace {

// Emission helper keeping gate ids dense.
struct Builder {
    Circuit c;

    explicit Builder(int n) { c.n_qubits = static_cast<std::size_t>(n); }

    void g1(const std::string& name, int q, std::vector<double> params = {}) {
        Gate g;
        g.id = static_cast<int>(c.gates.size());
        g.kind = GateKind::SingleQubit;
        g.name = name;
        g.params = std::move(params);
        g.qubits = {static_cast<QubitIndex>(q)};
        c.gates.push_back(std::move(g));
    }

    void h(int q) { g1("h", q); }
    void x(int q) { g1("x", q); }
    void rz(int q, double theta) { g1("rz", q, {theta}); }

    void cz(int a, int b) {
        Gate g;
        g.id = static_cast<int>(c.gates.size());
        g.kind = GateKind::CZ;
        g.name = "cz";
        g.qubits = {static_cast<QubitIndex>(a), static_cast<QubitIndex>(b)};
        c.gates.push_back(std::move(g));
    }

    void cx(int ctrl, int tgt) {
        h(tgt);
        cz(ctrl, tgt);
        h(tgt);
    }

    void ry(int q, double theta) {
        rz(q, -M_PI / 2);
        h(q);
        rz(q, theta);
        h(q);
        rz(q, M_PI / 2);
    }

    void rx(int q, double theta) {
        h(q);
        rz(q, theta);
        h(q);
    }

    // Controlled phase up to global phase: two cx gates around rz.
    void cp(int a, int b, double theta) {
        rz(a, theta / 2);
        rz(b, theta / 2);
        cx(a, b);
        rz(b, -theta / 2);
        cx(a, b);
    }

    void zz(int a, int b, double theta) {
        cx(a, b);
        rz(b, theta);
        cx(a, b);
    }

    // Relative-phase toffoli (three cx gates).
    void ccx_rel(int a, int b, int t) {
        ry(t, M_PI / 4);
        cx(b, t);
        ry(t, M_PI / 4);
        cx(a, t);
        ry(t, -M_PI / 4);
        cx(b, t);
        ry(t, -M_PI / 4);
    }

    Circuit take() {
        c.validate();
        return std::move(c);
    }
};

} // namespace

std::vector<std::pair<int, int>> random_regular_edges(int n, int d, std::uint64_t seed) {
    if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("degree must satisfy 1 <= d < n");
    if ((static_cast<long>(n) * d) % 2 != 0)
        throw std::invalid_argument("n * d must be even for a d-regular graph");
    std::mt19937_64 rng(seed);
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        points.clear();
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) points.push_back(v);
        std::shuffle(points.begin(), points.end(), rng);
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            int a = points[i];
            int b = points[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            auto e = std::make_pair(std::min(a, b), std::max(a, b));
            if (!seen.insert(e).second) {
                ok = false;
                break;
            }
            edges.push_back(e);
        }
        if (ok) return edges;
    }
    throw std::runtime_error("random regular graph generation kept colliding");
}

Circuit make_cat(int n) {
    if (n < 2) throw std::invalid_argument("cat state needs at least 2 qubits");
    Builder b(n);
    b.h(0);
    for (int i = 1; i < n; ++i) b.cx(i - 1, i);
    return b.take();
}

Circuit make_bv(int n) {
    if (n < 2) throw std::invalid_argument("bv needs at least 2 qubits");
    Builder b(n);
    int anc = n - 1;
    b.x(anc);
    b.h(anc);
    for (int i = 0; i < anc; ++i) b.h(i);
    for (int i = 0; i < anc; ++i) b.cx(i, anc);
    for (int i = 0; i < anc; ++i) b.h(i);
    return b.take();
}

Circuit make_qft(int n) {
    if (n < 1) throw std::invalid_argument("qft needs at least 1 qubit");
    Builder b(n);
    for (int i = 0; i < n; ++i) {
        b.h(i);
        for (int j = i + 1; j < n; ++j) b.cp(j, i, M_PI / std::pow(2.0, j - i));
    }
    return b.take();
}

Circuit make_ising(int n, int steps) {
    if (n < 2 || steps < 1) throw std::invalid_argument("ising needs n >= 2, steps >= 1");
    Builder b(n);
    double dt = 0.2;
    double coupling = 1.0;
    double field = 0.8;
    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i + 1 < n; i += 2) b.zz(i, i + 1, 2 * coupling * dt);
        for (int i = 1; i + 1 < n; i += 2) b.zz(i, i + 1, 2 * coupling * dt);
        for (int i = 0; i < n; ++i) b.rx(i, 2 * field * dt);
    }
    return b.take();
}

Circuit make_qaoa(int n, int degree, int layers, std::uint64_t seed) {
    if (layers < 1) throw std::invalid_argument("qaoa needs at least 1 layer");
    auto edges = random_regular_edges(n, degree, seed);
    Builder b(n);
    for (int q = 0; q < n; ++q) b.h(q);
    for (int l = 0; l < layers; ++l) {
        double gamma = 0.4 + 0.1 * l;
        double beta = 0.7 + 0.05 * l;
        for (auto [u, v] : edges) b.zz(u, v, gamma);
        for (int q = 0; q < n; ++q) b.rx(q, 2 * beta);
    }
    return b.take();
}

Circuit make_adder4() {
    // Ripple adder on (carry-in 0, a 1, b 2, carry-out 3) with
    // relative-phase toffolis; ten cz gates after cx rewriting.
    Builder b(4);
    b.x(1);
    b.x(2);
    b.cx(1, 2);
    b.cx(1, 0);
    b.ccx_rel(0, 2, 1);
    b.cx(1, 3);
    b.ccx_rel(0, 2, 1);
    b.cx(1, 0);
    return b.take();
}

Circuit make_shor5() {
    // Order-finding toy: three counting qubits, two work qubits, fixed
    // controlled cascades, inverse qft on the counters.
    Builder b(5);
    b.x(3);
    for (int q = 0; q < 3; ++q) b.h(q);
    b.cx(2, 3);
    b.cx(3, 4);
    b.cx(2, 4);
    b.cx(1, 4);
    b.cx(4, 3);
    b.cx(1, 3);
    b.cx(0, 3);
    b.cx(3, 4);
    b.cx(0, 4);
    b.h(2);
    b.cp(1, 2, -M_PI / 2);
    b.h(1);
    b.cp(0, 2, -M_PI / 4);
    b.cp(0, 1, -M_PI / 2);
    b.h(0);
    return b.take();
}

Circuit make_random_regular(int n, int degree, std::uint64_t seed) {
    auto edges = random_regular_edges(n, degree, seed);
    Builder b(n);
    for (auto [u, v] : edges) b.cz(u, v);
    return b.take();
}

std::string BenchmarkSpec::label() const {
    std::ostringstream os;
    os << kind << "-" << n;
    if (kind == "qaoa") os << "-d" << degree << "-p" << layers;
    if (kind == "ising") os << "-s" << steps;
    if (kind == "random_regular") os << "-d" << degree;
    return os.str();
}

Circuit generate_benchmark(const BenchmarkSpec& spec) {
    if (spec.kind == "cat") return make_cat(spec.n);
    if (spec.kind == "bv") return make_bv(spec.n);
    if (spec.kind == "qft") return make_qft(spec.n);
    if (spec.kind == "ising") return make_ising(spec.n, spec.steps);
    if (spec.kind == "qaoa") return make_qaoa(spec.n, spec.degree, spec.layers, spec.seed);
    if (spec.kind == "adder") return make_adder4();
    if (spec.kind == "shor") return make_shor5();
    if (spec.kind == "random_regular") return make_random_regular(spec.n, spec.degree, spec.seed);
    throw std::invalid_argument("unknown benchmark kind '" + spec.kind + "'");
}

std::vector<BenchmarkSpec> reference_suite() {
    std::vector<BenchmarkSpec> specs;
    specs.push_back({"adder", 4, 3, 3, 1, 1});
    specs.push_back({"shor", 5, 3, 3, 1, 1});
    specs.push_back({"qaoa", 6, 3, 3, 1, 1});
    specs.push_back({"qft", 10, 3, 3, 1, 1});
    specs.push_back({"bv", 14, 3, 3, 1, 1});
    specs.push_back({"ising", 26, 3, 3, 1, 1});
    specs.push_back({"cat", 35, 3, 3, 1, 1});
    return specs;
}

} // namespace zap
