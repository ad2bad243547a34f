#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdlab/lattice.hpp"
#include "qdlab/pauli.hpp"

namespace qdlab {

enum class Side : uint8_t { Bottom, Top, Left, Right };

struct GadgetPort {
  std::string name;
  Side side;
  int offset = 0;  // column (bottom/top) or row (left/right), template-relative
  char wire = 'X';
  bool input = false;
};

// Template-relative coordinate (col, row), row 0 at the bottom.
using RelPos = std::pair<int, int>;

struct GadgetWitness {
  std::string input_bits;   // one char per input port, in port order
  std::string output_bits;  // one char per output port
  std::map<RelPos, Letter> pattern;
};

// A gadget as a data template: per-qubit allowed letters, forced -1 syndrome
// anchors, ports, boundary-bound auxiliary string terminals, and the witness
// table (the unique local error for each input combination).
struct GadgetTemplate {
  std::string id;
  int cols = 0, rows = 0;
  std::map<RelPos, std::set<Letter>> noise;             // rel qubit -> letters
  std::vector<std::pair<StabKind, RelPos>> forced;      // -1 anchors
  std::vector<GadgetPort> ports;
  std::vector<std::pair<char, std::pair<Side, int>>> aux;  // (wire kind, terminal)
  std::vector<GadgetWitness> witnesses;

  std::vector<const GadgetPort*> input_ports() const;
  std::vector<const GadgetPort*> output_ports() const;
  const GadgetWitness& witness_for(const std::string& input_bits) const;
};

struct VerificationReport {
  std::string id;
  uint64_t enumerated = 0;
  uint64_t expected = 0;
  bool match = false;
  bool inconclusive = false;  // search budget exhausted
  uint64_t nodes = 0;
};

// Parses the plain-text template format (q/s/force/port/aux/witness/w lines).
GadgetTemplate load_template_file(const std::string& path);

// Loads a fixed template by id from the data directory, or synthesizes a
// parameterized one (FANOUT width >= 19 odd; WIRE_X / WIRE_Z length >= 1).
GadgetTemplate make_template(const std::string& id, const std::vector<int>& params,
                             const std::string& data_dir);

// Directory holding the template data files: $QDLAB_DATA_DIR if set, else the
// compiled-in source-tree default.
std::string default_gadget_dir();

// Generalized fanout shape used both for the FANOUT template and for the
// compiler's wire transport: input column, transfer column, output columns
// (template coordinates; all must be odd and pairwise >= 2 apart).
GadgetTemplate make_fanout_shape(int input_col, int transfer_col, const std::vector<int>& out_cols);

// Builds the standalone verification lattice for a template: the bounding box
// as a full rotated patch, minus boundary half-generators where a port string
// of mismatched kind would otherwise be forced to terminate (Z at top/bottom,
// X at left/right).
std::vector<uint32_t> port_excluded_generators(const GadgetTemplate& t, const RotatedLayout& lay);

// Exhaustively enumerates all domain-respecting errors consistent with the
// forced syndrome on the standalone patch and compares against the witness
// set.
VerificationReport verify_gadget(const GadgetTemplate& t);

// Mechanical confirmation of the AND case analysis: forcing Z on all three
// junction Z-qubits admits no completion; forcing Y on the X/Z-domain qubit
// admits none; the unforced count stays 4.
bool verify_exclusions(const GadgetTemplate& and_template);

// Relative positions of the labeled AND junction qubits.
inline RelPos and_junction_z1() { return {12, 20}; }
inline RelPos and_junction_z2() { return {12, 19}; }
inline RelPos and_junction_z3() { return {13, 20}; }
inline RelPos and_xz_qubit() { return {3, 3}; }

// All template ids recognized by make_template.
std::vector<std::string> known_gadget_ids();

}  // namespace qdlab
