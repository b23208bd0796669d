#pragma once

#include <stdexcept>
#include <string>

#include "qcfa/machine.hpp"

// JSON machine files. Rotation entries keep their angle coefficients in
// symbolic form ((p/q)*sqrt(2)*pi + (r/s)*pi) so irrational angles are
// reconstructed at full double precision; all other matrices round-trip
// through shortest-exact double serialization.

namespace qcfa {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string serialize(const Machine& m);
void serialize_to_file(const Machine& m, const std::string& path);

/// Parses a machine document. Throws ParseError with location details
/// on malformed documents or unknown names. The result is not
/// validated; run validate() for the semantic checks.
Machine parse_machine(const std::string& text);
Machine parse_machine_file(const std::string& path);

}  // namespace qcfa
