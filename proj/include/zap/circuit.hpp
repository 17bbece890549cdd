#pragma once

#include "zap/architecture.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zap {

enum class GateKind { SingleQubit, CZ };

/// One gate application. Single-qubit gates are h, x, rz(theta); the only
/// two-qubit gate is cz.
struct Gate {
    int id = 0; // dense index into Circuit::gates
    GateKind kind = GateKind::SingleQubit;
    std::string name;
    std::vector<double> params; // radians
    std::vector<QubitIndex> qubits;

    bool is_cz() const { return kind == GateKind::CZ; }
    bool touches(QubitIndex q) const {
        for (QubitIndex x : qubits)
            if (x == q) return true;
        return false;
    }
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    std::size_t count_single_qubit() const;
    std::size_t count_cz() const;

    /// Throws std::logic_error on malformed gates (bad ids, out-of-range
    /// qubits, cz with repeated operand, unknown name/arity).
    void validate() const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                             ": " + msg),
          line(line), column(column) {}
    int line;
    int column;
};

enum class CircuitFormat { Auto, Native, Qasm };

/// Parses circuit text. Native grammar:
///   qubits N;
///   name q...;          or   name(p, ...) q...;
/// Comments start with '#' or '//'. Gates: h, x, rz(theta), cz.
Circuit parse_circuit(std::string_view text, CircuitFormat fmt = CircuitFormat::Native);

/// Loads from a file; Auto dispatches on the .qasm extension.
Circuit load_circuit(const std::string& path, CircuitFormat fmt = CircuitFormat::Auto);

/// Canonical native text; parse(pretty_print(c)) reproduces c.
std::string pretty_print(const Circuit& c);

/// Gate dependency DAG over immediate predecessors: for every gate and
/// each of its qubits, one edge from the latest earlier gate on that
/// qubit (edges deduplicated).
struct GateDag {
    std::size_t n_nodes = 0;
    std::vector<std::vector<int>> preds;
    std::vector<std::vector<int>> succs;

    bool has_edge(int from, int to) const;
    std::size_t edge_count() const;
};

GateDag build_dag(const Circuit& c);

} // namespace zap
