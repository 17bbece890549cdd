#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zap/circuit.hpp"

#include <cmath>

using namespace zap;

TEST_CASE("parses the native grammar") {
    Circuit c = parse_circuit(
        "# a comment\n"
        "qubits 3;\n"
        "h 0;\n"
        "rz(1.5707963267948966) 1; // inline comment\n"
        "cz 0 2;\n"
        "x 2;\n");
    CHECK(c.n_qubits == 3);
    REQUIRE(c.gates.size() == 4);
    CHECK(c.gates[0].name == "h");
    CHECK(c.gates[1].params[0] == doctest::Approx(M_PI / 2));
    CHECK(c.gates[2].is_cz());
    CHECK(c.gates[2].qubits == std::vector<QubitIndex>{0, 2});
    CHECK(c.gates[3].qubits == std::vector<QubitIndex>{2});
    CHECK(c.count_cz() == 1);
    CHECK(c.count_single_qubit() == 3);
}

TEST_CASE("empty circuit parses and builds an empty dag") {
    Circuit c = parse_circuit("qubits 0;");
    CHECK(c.n_qubits == 0);
    CHECK(c.gates.empty());
    GateDag dag = build_dag(c);
    CHECK(dag.n_nodes == 0);
    CHECK(dag.edge_count() == 0);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_circuit("qubits 2;\nbogus 0;\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
    CHECK_THROWS_AS(parse_circuit("qubits 2;\ncz 0 0;\n"), ParseError);      // repeated operand
    CHECK_THROWS_AS(parse_circuit("qubits 2;\ncz 0 2;\n"), ParseError);      // out of range
    CHECK_THROWS_AS(parse_circuit("qubits 2;\nh 0 1;\n"), ParseError);       // arity
    CHECK_THROWS_AS(parse_circuit("qubits 2;\nrz 0;\n"), ParseError);        // missing parameter
    CHECK_THROWS_AS(parse_circuit("qubits 2;\nh 0\n"), ParseError);          // missing terminator
    CHECK_THROWS_AS(parse_circuit("h 0;\n"), ParseError);                    // missing header
}

TEST_CASE("pretty print round-trips exactly") {
    Circuit c = parse_circuit(
        "qubits 4;\n"
        "rz(0.1) 0;\n"
        "cz 1 3;\n"
        "h 2;\n"
        "rz(-2.5000000000000004) 3;\n");
    Circuit back = parse_circuit(pretty_print(c));
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(back.n_qubits == c.n_qubits);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        CHECK(back.gates[i].name == c.gates[i].name);
        CHECK(back.gates[i].qubits == c.gates[i].qubits);
        REQUIRE(back.gates[i].params.size() == c.gates[i].params.size());
        for (std::size_t j = 0; j < c.gates[i].params.size(); ++j)
            CHECK(back.gates[i].params[j] == c.gates[i].params[j]); // bit-exact via %.17g
    }
}

TEST_CASE("qasm subset imports with cx rewriting") {
    Circuit c = parse_circuit(
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "qreg q[3];\n"
        "h q[0];\n"
        "cx q[0], q[1];\n"
        "rz(pi/4) q[2];\n"
        "cz q[1], q[2];\n"
        "barrier q;\n"
        "x q[2];\n",
        CircuitFormat::Qasm);
    // cx becomes h, cz, h around the target
    REQUIRE(c.gates.size() == 7);
    CHECK(c.gates[1].name == "h");
    CHECK(c.gates[1].qubits[0] == 1);
    CHECK(c.gates[2].name == "cz");
    CHECK(c.gates[3].name == "h");
    CHECK(c.gates[4].params[0] == doctest::Approx(M_PI / 4));
    CHECK(c.count_cz() == 2);
}

TEST_CASE("qasm parameter arithmetic") {
    Circuit c = parse_circuit(
        "qreg q[1];\n"
        "rz(2*pi) q[0];\n"
        "rz(-pi/2) q[0];\n"
        "rz(3*pi/4) q[0];\n"
        "rz(0.5) q[0];\n"
        "rz((1+1)*pi) q[0];\n",
        CircuitFormat::Qasm);
    CHECK(c.gates[0].params[0] == doctest::Approx(2 * M_PI));
    CHECK(c.gates[1].params[0] == doctest::Approx(-M_PI / 2));
    CHECK(c.gates[2].params[0] == doctest::Approx(3 * M_PI / 4));
    CHECK(c.gates[3].params[0] == doctest::Approx(0.5));
    CHECK(c.gates[4].params[0] == doctest::Approx(2 * M_PI));
}

TEST_CASE("qasm rejects unsupported statements") {
    CHECK_THROWS_AS(parse_circuit("qreg q[2];\ncreg c[2];\n", CircuitFormat::Qasm), ParseError);
    CHECK_THROWS_AS(parse_circuit("qreg q[2];\nmeasure q[0] -> c[0];\n", CircuitFormat::Qasm),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit("h q[0];\n", CircuitFormat::Qasm), ParseError); // no qreg
    CHECK_THROWS_AS(parse_circuit("qreg q[2];\nqreg r[2];\n", CircuitFormat::Qasm), ParseError);
}

TEST_CASE("dag links immediate predecessors only") {
    // gate 0: cz 0 1; gate 1: h 1; gate 2: cz 1 2; gate 3: cz 0 2
    Circuit c = parse_circuit("qubits 3;\ncz 0 1;\nh 1;\ncz 1 2;\ncz 0 2;\n");
    GateDag dag = build_dag(c);
    CHECK(dag.has_edge(0, 1));  // shared qubit 1
    CHECK(dag.has_edge(1, 2));  // h feeds the next cz on qubit 1
    CHECK(!dag.has_edge(0, 2)); // gate 1 interposes on qubit 1
    CHECK(dag.has_edge(0, 3));  // qubit 0 skips gates 1-2
    CHECK(dag.has_edge(2, 3));  // shared qubit 2
    CHECK(dag.edge_count() == 4);
    CHECK(dag.preds[0].empty());
}

TEST_CASE("dag deduplicates double-shared edges") {
    Circuit c = parse_circuit("qubits 2;\ncz 0 1;\ncz 0 1;\n");
    GateDag dag = build_dag(c);
    CHECK(dag.edge_count() == 1);
    CHECK(dag.has_edge(0, 1));
}

TEST_CASE("validate rejects malformed gate records") {
    Circuit c;
    c.n_qubits = 2;
    Gate g;
    g.id = 0;
    g.kind = GateKind::CZ;
    g.name = "cz";
    g.qubits = {0, 0};
    c.gates.push_back(g);
    CHECK_THROWS_AS(c.validate(), std::logic_error);
    c.gates[0].qubits = {0, 1};
    CHECK_NOTHROW(c.validate());
    c.gates[0].id = 5;
    CHECK_THROWS_AS(c.validate(), std::logic_error);
}
