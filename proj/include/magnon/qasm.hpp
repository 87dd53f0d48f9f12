#pragma once

#include <string>

#include "magnon/circuit.hpp"

namespace magnon {

// OpenQASM 2.0 text: header, qreg/creg, one statement per line, angles with
// 12 significant digits, measure lines at the end. Gate vocabulary:
// u1 (phase), ry, rz, cx. Throws Errc::unsupported_gate on unitary2q.
std::string export_qasm(const Circuit& circuit);

// Parses the subset emitted above (plus x and barrier, ignored measures).
Circuit parse_qasm(const std::string& text);

}  // namespace magnon
