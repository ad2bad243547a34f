#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qdlab/compiler.hpp"
#include "qdlab/decoders.hpp"

namespace qdlab {

// Raised when a loaded file fails re-verification against its sidecar
// (CLI exit code 4).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain-text, line-oriented instance format.  Rationals are always num/den.
// Compiled instances carry a sidecar (expression, placements, routes, output
// wire); loading one recompiles the expression and verifies that the result
// serializes byte-for-byte identically.  Sidecar-free files describe a bare
// decoding problem.
std::string serialize_instance(const CompiledInstance& inst);
std::string serialize_instance(const DecodingInstance& inst);

struct LoadedInstance {
  DecodingInstance decoding;
  std::optional<CompiledInstance> compiled;
};

LoadedInstance parse_instance(const std::string& text);

// File helpers (throw std::runtime_error on I/O failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qdlab
