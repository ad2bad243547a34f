#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "qdlab/lattice.hpp"
#include "qdlab/pauli.hpp"

namespace qdlab {

// Exhaustive search for all Pauli errors that (a) respect per-qubit letter
// domains and (b) reproduce a target syndrome over a set of X/Z parity
// constraints.  Backtracking in ascending qubit order with forward checking:
// a constraint is rejected as soon as its last undecided qubit is assigned
// with the wrong parity, and when exactly one undecided qubit remains its
// domain is pruned to parity-feasible letters.
class SupportEnumerator {
 public:
  struct Constraint {
    StabKind kind;
    uint8_t target = 0;          // required parity
    std::vector<uint32_t> vars;  // positions into the variable order
  };

  struct Stats {
    uint64_t nodes = 0;
    uint64_t solutions = 0;
    bool budget_exhausted = false;
  };

  // domains: qubit -> allowed non-identity letters (identity always allowed).
  SupportEnumerator(uint32_t num_qubits, const std::map<uint32_t, std::vector<Letter>>& domains);

  // Adds one parity constraint over the given qubits (qubits outside the
  // domain map are ignored: they are pinned to identity).  target is the
  // required number of anticommuting letters mod 2.  Returns false if the
  // constraint involves no domain qubit but demands odd parity (then no
  // solution exists and enumerate() will yield nothing).
  bool add_constraint(StabKind kind, uint8_t target, const std::vector<uint32_t>& qubits);

  // Convenience: one constraint per layout generator, with target 1 exactly
  // for generator indices present in target_syndrome.
  bool add_layout_constraints(const RotatedLayout& lay, const std::set<uint32_t>& target_syndrome);

  // Runs the search; calls sink for every solution.  Throws std::length_error
  // if the variable count exceeds max_support.  Stops early (with
  // budget_exhausted set) after node_budget search nodes.
  Stats enumerate(const std::function<void(const PauliOperator&)>& sink,
                  size_t max_support = kDefaultMaxSupport,
                  uint64_t node_budget = kDefaultNodeBudget) const;

  // Collects all solutions in canonical (search) order.
  std::vector<PauliOperator> collect(size_t max_support = kDefaultMaxSupport,
                                     uint64_t node_budget = kDefaultNodeBudget) const;

  static constexpr size_t kDefaultMaxSupport = 4000;
  static constexpr uint64_t kDefaultNodeBudget = 50'000'000;

 private:
  uint32_t n_;
  std::vector<uint32_t> vars_;                 // qubit per variable, ascending
  std::map<uint32_t, uint32_t> var_of_qubit_;  // inverse of vars_
  std::vector<std::vector<Letter>> domains_;   // per variable
  std::vector<Constraint> constraints_;
  bool infeasible_ = false;
};

}  // namespace qdlab
