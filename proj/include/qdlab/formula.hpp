#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdlab {

// Boolean formula AST over variables x1..xn with NOT, binary AND, binary OR.
struct Formula {
  enum class Op { Var, Not, And, Or };
  struct Node {
    Op op;
    int a = -1;   // child (Not) or left child (And/Or)
    int b = -1;   // right child (And/Or)
    int var = 0;  // 1-based variable index (Var)
  };
  std::vector<Node> nodes;
  int root = -1;
  int num_vars = 0;

  const Node& node(int i) const { return nodes[static_cast<size_t>(i)]; }
  bool evaluate_node(int i, uint32_t assignment_mask) const;
  // assignment bit v-1 holds the value of variable v.
  bool evaluate(uint32_t assignment_mask) const;
  std::string to_expression() const;  // text in the expression grammar
  bool has_or() const;
  bool has_and() const;
};

// Grammar: expr := var | '!' expr | '(' expr ('&'|'|') expr ')'; var := 'x' digits.
// Variables must be numbered 1..n with every index used at least once.
Formula parse_expression(const std::string& text);

// Standard DIMACS CNF; clauses right-folded into nested AND of OR-clauses.
Formula parse_dimacs(const std::string& text);

// Rewrites every OR(a,b) as NOT(AND(NOT a, NOT b)).
Formula eliminate_or(const Formula& f);

// Number of satisfying assignments (n <= 24).
uint64_t brute_force_count(const Formula& f);

// Planar normal form: a fanout layer (one per variable) feeding a crossing
// region, feeding a crossing-free gate tree.  Columns are abstract leaf
// positions (in-order); fanout rows are per-variable layers stacked bottom-up.
struct PlanarCircuit {
  struct Node {
    enum class Kind { Leaf, Not, And };
    Kind kind;
    int var = 0;     // Leaf: variable index
    int a = -1;      // child / left child
    int b = -1;      // right child
    int column = 0;  // Leaf: left-to-right position
  };
  std::vector<Node> nodes;
  int root = -1;
  int num_vars = 0;
  std::vector<int> leaf_order;                   // node ids, left to right
  std::vector<int> occurrence_count;             // [1..n], index 0 unused
  std::vector<std::vector<int>> fanout_targets;  // per variable: leaf columns
  // (X-wire leaf column, Z-wire variable row) pairs, for risers passing over
  // the horizontal fanout layer of another variable.
  std::vector<std::pair<int, int>> crossings;

  bool simulate(int node_id, uint32_t assignment_mask) const;
  bool simulate(uint32_t assignment_mask) const { return simulate(root, assignment_mask); }
};

// Requires an OR-free formula.
PlanarCircuit to_planar_circuit(const Formula& f);

}  // namespace qdlab
