#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdlab/formula.hpp"
#include "qdlab/lattice.hpp"
#include "qdlab/noise.hpp"
#include "qdlab/pauli.hpp"
#include "qdlab/rational.hpp"

namespace qdlab {

// Decoding-problem flavor the compiler targets.
struct CompileMode {
  enum class Tag { QMLD, QMLD_APPROX, QMLD_UNIFORM, DQMLD, DQMLD_MAJORITY };
  Tag tag = Tag::QMLD;
  ExactRational p{1, 4};               // per-letter probability, in (0, 1/4]
  ExactRational r{1, 2};               // special-qubit X probability, in (0, 1)
  std::optional<ExactRational> M;      // approximation factor >= 1

  void validate() const;               // throws std::invalid_argument
  bool is_dqmld() const { return tag == Tag::DQMLD || tag == Tag::DQMLD_MAJORITY; }
  std::string tag_name() const;
  static Tag tag_from_name(const std::string& name);
};

// One activation-gated error pattern.  The witness of an assignment is the
// XOR of the letter maps of all features active under that assignment.
struct Feature {
  enum class Kind {
    VarTrue,   // node = variable index; active iff the variable is true
    NodeTrue,  // node = circuit node id; active iff that node's value is true
    AndCombo,  // node = AND node id; active iff (left,right) values == combo
    NegRoot    // active iff the root value is false (uniform-mode extension)
  };
  Kind kind;
  int node = -1;
  int combo = -1;  // (left << 1) | right
  std::string label;
  std::map<uint32_t, Letter> letters;

  bool active(const PlanarCircuit& c, uint32_t assignment_mask) const;
};

struct Placement {
  std::string gadget;  // template id
  int node = -1;       // circuit node (or variable index), -1 if synthetic
  int col = 0, row = 0;
};

struct Route {
  char kind = 'X';  // 'X': vertical run at column `fixed`; 'Z': horizontal at row `fixed`
  int fixed = 0;
  int from = 0, to = 0;  // inclusive row (X) / column (Z) range
  std::string label;
};

struct CompiledInstance {
  RotatedLayout layout;
  NoiseModel noise;
  std::set<uint32_t> syndrome;  // flipped generator indices
  CompileMode mode;
  uint64_t ell = 0;             // the exponent scale for the special probability
  uint64_t extension_length = 0;  // uniform-mode output extension qubit count

  PlanarCircuit circuit;
  std::string expression;  // OR-free formula text; recompiling it reproduces this instance
  int num_vars = 0;

  std::vector<Feature> features;
  std::vector<Placement> placements;
  std::vector<Route> routes;

  int output_col = 0;
  std::vector<uint32_t> output_wire;        // bottom-to-top qubits of the output column
  std::optional<uint32_t> special_qubit;    // rigged qubit (absent: uniform / majority)
  uint32_t readout_qubit = 0;               // qubit whose X letter encodes the output value
  std::map<int, uint32_t> variable_ports;   // variable -> its column's bottom qubit
};

// Lays the circuit out on a rotated surface-code grid and attaches the
// mode's noise model.  Deterministic: equal inputs give identical instances.
CompiledInstance compile(const PlanarCircuit& c, const CompileMode& mode);

// Convenience: eliminate_or + to_planar_circuit + compile.
CompiledInstance compile_formula(const Formula& f, const CompileMode& mode);

// The unique nonzero-probability error realizing one assignment (bit v-1 of
// the mask holds variable v).
PauliOperator assignment_witness(const CompiledInstance& inst, uint32_t assignment_mask);

// True iff E carries an X component on the readout qubit.
bool output_value(const CompiledInstance& inst, const PauliOperator& e);

struct SeparationBounds {
  ExactRational sat_lower;
  ExactRational unsat_upper;
};

// Symbolic witness-probability bounds for the QMLD-family modes.
SeparationBounds separation_bounds(const CompiledInstance& inst);

// Logical relation between two assignments' witnesses: I iff the circuit
// outputs agree, X otherwise.
LogicalClass coset_relation(const CompiledInstance& inst, uint32_t assignment_a,
                            uint32_t assignment_b);

// Expression text regenerating a circuit through parse_expression +
// to_planar_circuit.
std::string circuit_expression(const PlanarCircuit& c);

std::string render_ascii(const CompiledInstance& inst);
std::string render_svg(const CompiledInstance& inst);

}  // namespace qdlab
