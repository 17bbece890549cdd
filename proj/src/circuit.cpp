#include "zap/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zap {

namespace {

struct GateProto {
    GateKind kind;
    std::size_t n_qubits;
    std::size_t n_params;
};

const GateProto* lookup_gate(const std::string& name) {
    static const std::map<std::string, GateProto> table = {
        {"h", {GateKind::SingleQubit, 1, 0}},
        {"x", {GateKind::SingleQubit, 1, 0}},
        {"rz", {GateKind::SingleQubit, 1, 1}},
        {"cz", {GateKind::CZ, 2, 0}},
    };
    auto it = table.find(name);
    return it == table.end() ? nullptr : &it->second;
}

// Character scanner shared by both text formats.
struct Scanner {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char advance() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    std::string ident() {
        skip_space_and_comments();
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string s;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            s += advance();
        return s;
    }

    double number() {
        skip_space_and_comments();
        std::size_t start = pos;
        if (!eof() && (peek() == '-' || peek() == '+')) advance();
        bool digits = false;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance(), digits = true;
        if (!eof() && peek() == '.') {
            advance();
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance(), digits = true;
        }
        if (!digits) fail("expected number");
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            advance();
            if (!eof() && (peek() == '-' || peek() == '+')) advance();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        return std::stod(std::string(text.substr(start, pos - start)));
    }

    long integer() {
        skip_space_and_comments();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            v = v * 10 + (advance() - '0');
        return v;
    }

    void expect(char c) {
        skip_space_and_comments();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool consume(char c) {
        skip_space_and_comments();
        if (eof() || peek() != c) return false;
        advance();
        return true;
    }

    bool next_is(char c) {
        skip_space_and_comments();
        return !eof() && peek() == c;
    }

    bool next_is_digit() {
        skip_space_and_comments();
        return !eof() && std::isdigit(static_cast<unsigned char>(peek()));
    }
};

Circuit parse_native(std::string_view text) {
    Scanner sc{text};
    Circuit c;
    std::string head = sc.ident();
    if (head != "qubits") sc.fail("circuit must start with 'qubits N;'");
    long n = sc.integer();
    if (n < 0) sc.fail("negative qubit count");
    sc.expect(';');
    c.n_qubits = static_cast<std::size_t>(n);

    sc.skip_space_and_comments();
    while (!sc.eof()) {
        int at_line = sc.line;
        int at_col = sc.col;
        std::string name = sc.ident();
        const GateProto* proto = lookup_gate(name);
        if (!proto) throw ParseError("unknown gate '" + name + "'", at_line, at_col);
        Gate g;
        g.id = static_cast<int>(c.gates.size());
        g.kind = proto->kind;
        g.name = name;
        if (sc.consume('(')) {
            if (!sc.next_is(')')) {
                g.params.push_back(sc.number());
                while (sc.consume(',')) g.params.push_back(sc.number());
            }
            sc.expect(')');
        }
        if (g.params.size() != proto->n_params)
            throw ParseError("gate '" + name + "' takes " + std::to_string(proto->n_params) +
                                 " parameter(s), got " + std::to_string(g.params.size()),
                             at_line, at_col);
        while (sc.next_is_digit()) {
            long q = sc.integer();
            if (q >= static_cast<long>(c.n_qubits))
                sc.fail("qubit " + std::to_string(q) + " outside declared range of " +
                        std::to_string(c.n_qubits));
            g.qubits.push_back(static_cast<QubitIndex>(q));
        }
        if (g.qubits.size() != proto->n_qubits)
            throw ParseError("gate '" + name + "' takes " + std::to_string(proto->n_qubits) +
                                 " qubit(s), got " + std::to_string(g.qubits.size()),
                             at_line, at_col);
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
            throw ParseError("cz operands must be distinct", at_line, at_col);
        sc.expect(';');
        c.gates.push_back(std::move(g));
        sc.skip_space_and_comments();
    }
    return c;
}

// Arithmetic over numbers and pi with + - * / and parentheses, for QASM
// gate parameters.
struct ExprParser {
    Scanner& sc;

    double parse() { return sum(); }

    double sum() {
        double v = product();
        for (;;) {
            if (sc.consume('+'))
                v += product();
            else if (sc.consume('-'))
                v -= product();
            else
                return v;
        }
    }

    double product() {
        double v = unary();
        for (;;) {
            if (sc.consume('*'))
                v *= unary();
            else if (sc.consume('/')) {
                double d = unary();
                if (d == 0.0) sc.fail("division by zero in parameter");
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (sc.consume('-')) return -unary();
        if (sc.consume('(')) {
            double v = sum();
            sc.expect(')');
            return v;
        }
        sc.skip_space_and_comments();
        if (!sc.eof() && std::isalpha(static_cast<unsigned char>(sc.peek()))) {
            std::string id = sc.ident();
            if (id == "pi") return M_PI;
            sc.fail("unknown symbol '" + id + "' in parameter");
        }
        return sc.number();
    }
};

Circuit parse_qasm(std::string_view text) {
    Scanner sc{text};
    Circuit c;
    std::string reg_name;
    bool have_reg = false;

    auto operand = [&](int at_line, int at_col) -> QubitIndex {
        std::string name = sc.ident();
        if (!have_reg) throw ParseError("qubit used before qreg declaration", at_line, at_col);
        if (name != reg_name)
            throw ParseError("unknown register '" + name + "'", at_line, at_col);
        sc.expect('[');
        long i = sc.integer();
        sc.expect(']');
        if (i >= static_cast<long>(c.n_qubits))
            throw ParseError("qubit " + std::to_string(i) + " outside register of size " +
                                 std::to_string(c.n_qubits),
                             at_line, at_col);
        return static_cast<QubitIndex>(i);
    };

    auto emit = [&](const std::string& name, std::vector<double> params,
                    std::vector<QubitIndex> qubits) {
        Gate g;
        g.id = static_cast<int>(c.gates.size());
        g.kind = name == "cz" ? GateKind::CZ : GateKind::SingleQubit;
        g.name = name;
        g.params = std::move(params);
        g.qubits = std::move(qubits);
        c.gates.push_back(std::move(g));
    };

    sc.skip_space_and_comments();
    while (!sc.eof()) {
        int at_line = sc.line;
        int at_col = sc.col;
        std::string kw = sc.ident();
        if (kw == "OPENQASM") {
            sc.number();
            sc.expect(';');
        } else if (kw == "include") {
            sc.skip_space_and_comments();
            sc.expect('"');
            while (!sc.eof() && sc.peek() != '"') sc.advance();
            sc.expect('"');
            sc.expect(';');
        } else if (kw == "qreg") {
            if (have_reg) throw ParseError("only one qreg is supported", at_line, at_col);
            reg_name = sc.ident();
            sc.expect('[');
            long n = sc.integer();
            sc.expect(']');
            sc.expect(';');
            c.n_qubits = static_cast<std::size_t>(n);
            have_reg = true;
        } else if (kw == "barrier") {
            while (!sc.eof() && sc.peek() != ';') sc.advance();
            sc.expect(';');
        } else if (kw == "h" || kw == "x") {
            QubitIndex q = operand(at_line, at_col);
            sc.expect(';');
            emit(kw, {}, {q});
        } else if (kw == "rz") {
            sc.expect('(');
            double theta = ExprParser{sc}.parse();
            sc.expect(')');
            QubitIndex q = operand(at_line, at_col);
            sc.expect(';');
            emit("rz", {theta}, {q});
        } else if (kw == "cz" || kw == "cx") {
            QubitIndex a = operand(at_line, at_col);
            sc.expect(',');
            QubitIndex b = operand(at_line, at_col);
            sc.expect(';');
            if (a == b) throw ParseError("two-qubit gate operands must be distinct", at_line, at_col);
            if (kw == "cz") {
                emit("cz", {}, {a, b});
            } else {
                emit("h", {}, {b});
                emit("cz", {}, {a, b});
                emit("h", {}, {b});
            }
        } else {
            throw ParseError("unsupported statement '" + kw + "'", at_line, at_col);
        }
        sc.skip_space_and_comments();
    }
    if (!have_reg) throw ParseError("missing qreg declaration", sc.line, sc.col);
    return c;
}

} // namespace

std::size_t Circuit::count_single_qubit() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return !g.is_cz(); }));
}

std::size_t Circuit::count_cz() const { return gates.size() - count_single_qubit(); }

void Circuit::validate() const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.id != static_cast<int>(i)) throw std::logic_error("gate ids must be dense and ordered");
        const GateProto* proto = lookup_gate(g.name);
        if (!proto) throw std::logic_error("unknown gate name '" + g.name + "'");
        if (proto->kind != g.kind) throw std::logic_error("gate kind mismatch for '" + g.name + "'");
        if (g.qubits.size() != proto->n_qubits || g.params.size() != proto->n_params)
            throw std::logic_error("gate arity mismatch for '" + g.name + "'");
        for (QubitIndex q : g.qubits)
            if (q >= n_qubits) throw std::logic_error("qubit index out of range");
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
            throw std::logic_error("cz operands must be distinct");
    }
}

Circuit parse_circuit(std::string_view text, CircuitFormat fmt) {
    if (fmt == CircuitFormat::Auto || fmt == CircuitFormat::Native) return parse_native(text);
    return parse_qasm(text);
}

Circuit load_circuit(const std::string& path, CircuitFormat fmt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (fmt == CircuitFormat::Auto) {
        bool qasm = path.size() >= 5 && path.compare(path.size() - 5, 5, ".qasm") == 0;
        fmt = qasm ? CircuitFormat::Qasm : CircuitFormat::Native;
    }
    return parse_circuit(ss.str(), fmt);
}

std::string pretty_print(const Circuit& c) {
    std::ostringstream os;
    os << "qubits " << c.n_qubits << ";\n";
    char buf[64];
    for (const Gate& g : c.gates) {
        os << g.name;
        if (!g.params.empty()) {
            os << '(';
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                if (i) os << ", ";
                std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
                os << buf;
            }
            os << ')';
        }
        for (QubitIndex q : g.qubits) os << ' ' << q;
        os << ";\n";
    }
    return os.str();
}

bool GateDag::has_edge(int from, int to) const {
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n_nodes) return false;
    return std::find(succs[from].begin(), succs[from].end(), to) != succs[from].end();
}

std::size_t GateDag::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succs) n += s.size();
    return n;
}

GateDag build_dag(const Circuit& c) {
    c.validate();
    GateDag dag;
    dag.n_nodes = c.gates.size();
    dag.preds.resize(dag.n_nodes);
    dag.succs.resize(dag.n_nodes);
    std::vector<int> last(c.n_qubits, -1);
    for (const Gate& g : c.gates) {
        for (QubitIndex q : g.qubits) {
            int p = last[q];
            if (p >= 0 && !dag.has_edge(p, g.id)) {
                dag.succs[p].push_back(g.id);
                dag.preds[g.id].push_back(p);
            }
            last[q] = g.id;
        }
    }
    return dag;
}

} // namespace zap
