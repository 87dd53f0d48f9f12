#include "magnon/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace magnon {

namespace {

std::string format_angle(double angle) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", angle);
    return buf;
}

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool consume(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& line) {
        if (!consume(c))
            throw Error(Errc::parse_error, "expected '" + std::string(1, c) + "' in: " + line);
    }
};

int parse_qubit_ref(Cursor& cur, const std::string& line) {
    cur.skip_space();
    if (cur.text.compare(cur.pos, 2, "q[") != 0)
        throw Error(Errc::parse_error, "expected qubit reference in: " + line);
    cur.pos += 2;
    std::size_t end = cur.text.find(']', cur.pos);
    if (end == std::string::npos) throw Error(Errc::parse_error, "unterminated qubit index");
    int idx = std::stoi(cur.text.substr(cur.pos, end - cur.pos));
    cur.pos = end + 1;
    return idx;
}

double parse_angle(Cursor& cur, const std::string& line) {
    cur.expect('(', line);
    cur.skip_space();
    std::size_t end = cur.text.find(')', cur.pos);
    if (end == std::string::npos) throw Error(Errc::parse_error, "unterminated angle");
    std::string token = cur.text.substr(cur.pos, end - cur.pos);
    cur.pos = end + 1;
    // plain decimal literals plus the common pi forms
    double sign = 1.0;
    std::size_t i = 0;
    while (i < token.size() && std::isspace(static_cast<unsigned char>(token[i]))) ++i;
    if (i < token.size() && (token[i] == '+' || token[i] == '-')) {
        if (token[i] == '-') sign = -1.0;
        ++i;
    }
    if (token.compare(i, 2, "pi") == 0) {
        double value = M_PI;
        i += 2;
        if (i < token.size() && token[i] == '/') value /= std::stod(token.substr(i + 1));
        else if (i < token.size() && token[i] == '*') value *= std::stod(token.substr(i + 1));
        return sign * value;
    }
    std::size_t used = 0;
    double value = std::stod(token.substr(i), &used);
    return sign * value;
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.qubits << "];\n";
    out << "creg c[" << circuit.qubits << "];\n";
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::phase:
                out << "u1(" << format_angle(g.angle) << ") q[" << g.target << "];\n";
                break;
            case GateKind::rot_y:
                out << "ry(" << format_angle(g.angle) << ") q[" << g.target << "];\n";
                break;
            case GateKind::rot_z:
                out << "rz(" << format_angle(g.angle) << ") q[" << g.target << "];\n";
                break;
            case GateKind::cnot:
                out << "cx q[" << g.control << "],q[" << g.target << "];\n";
                break;
            case GateKind::unitary2q:
                throw Error(Errc::unsupported_gate, "unsupported gate kind for export");
        }
    }
    for (int q = 0; q < circuit.qubits; ++q)
        out << "measure q[" << q << "] -> c[" << q << "];\n";
    return out.str();
}

Circuit parse_qasm(const std::string& text) {
    Circuit circuit;
    circuit.qubits = 0;
    bool saw_header = false;

    std::istringstream lines(text);
    std::string raw;
    while (std::getline(lines, raw)) {
        // strip comments and trailing whitespace
        std::size_t comment = raw.find("//");
        if (comment != std::string::npos) raw.erase(comment);
        std::size_t begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t last = raw.find_last_not_of(" \t\r");
        std::string line = raw.substr(begin, last - begin + 1);
        if (line.empty()) continue;

        if (line.rfind("OPENQASM", 0) == 0) {
            saw_header = true;
            continue;
        }
        if (line.rfind("include", 0) == 0 || line.rfind("barrier", 0) == 0 ||
            line.rfind("creg", 0) == 0 || line.rfind("measure", 0) == 0)
            continue;
        if (line.rfind("qreg", 0) == 0) {
            std::size_t lb = line.find('[');
            std::size_t rb = line.find(']');
            if (lb == std::string::npos || rb == std::string::npos)
                throw Error(Errc::parse_error, "malformed qreg: " + line);
            circuit.qubits = std::stoi(line.substr(lb + 1, rb - lb - 1));
            continue;
        }

        if (circuit.qubits <= 0)
            throw Error(Errc::parse_error, "gate before qreg declaration: " + line);

        Cursor cur{line, 0};
        std::size_t name_end = 0;
        while (name_end < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[name_end])) || line[name_end] == '_'))
            ++name_end;
        std::string name = line.substr(0, name_end);
        cur.pos = name_end;

        if (name == "u1" || name == "p" || name == "ry" || name == "rz") {
            double angle = parse_angle(cur, line);
            int target = parse_qubit_ref(cur, line);
            GateKind kind = (name == "ry") ? GateKind::rot_y
                            : (name == "rz") ? GateKind::rot_z
                                             : GateKind::phase;
            circuit.gates.push_back({kind, angle, target, -1, {}});
        } else if (name == "cx") {
            int control = parse_qubit_ref(cur, line);
            cur.expect(',', line);
            int target = parse_qubit_ref(cur, line);
            circuit.gates.push_back({GateKind::cnot, 0.0, target, control, {}});
        } else if (name == "x") {
            // x == ry(pi) up to global phase; keeps the parsed circuit in
            // the native gate set
            int target = parse_qubit_ref(cur, line);
            circuit.gates.push_back({GateKind::rot_y, M_PI, target, -1, {}});
            circuit.gates.push_back({GateKind::rot_z, M_PI, target, -1, {}});
        } else {
            throw Error(Errc::parse_error, "unknown statement: " + line);
        }
        cur.expect(';', line);
    }

    if (!saw_header) throw Error(Errc::parse_error, "missing OPENQASM header");
    if (circuit.qubits <= 0) throw Error(Errc::parse_error, "missing qreg declaration");
    for (const Gate& g : circuit.gates)
        if (g.target >= circuit.qubits || (g.control >= 0 && g.control >= circuit.qubits))
            throw Error(Errc::parse_error, "gate index exceeds qreg size");
    return circuit;
}

}  // namespace magnon
