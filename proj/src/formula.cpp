#include "qdlab/formula.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qdlab {

bool Formula::evaluate_node(int i, uint32_t mask) const {
  const Node& nd = node(i);
  switch (nd.op) {
    case Op::Var: return (mask >> (nd.var - 1)) & 1u;
    case Op::Not: return !evaluate_node(nd.a, mask);
    case Op::And: return evaluate_node(nd.a, mask) && evaluate_node(nd.b, mask);
    case Op::Or: return evaluate_node(nd.a, mask) || evaluate_node(nd.b, mask);
  }
  throw std::logic_error("bad op");
}

bool Formula::evaluate(uint32_t mask) const {
  if (root < 0) throw std::logic_error("empty formula");
  return evaluate_node(root, mask);
}

namespace {
void expr_of(const Formula& f, int i, std::string& out) {
  const auto& nd = f.node(i);
  switch (nd.op) {
    case Formula::Op::Var:
      out += "x" + std::to_string(nd.var);
      break;
    case Formula::Op::Not:
      out += "!";
      expr_of(f, nd.a, out);
      break;
    case Formula::Op::And:
    case Formula::Op::Or:
      out += "(";
      expr_of(f, nd.a, out);
      out += nd.op == Formula::Op::And ? "&" : "|";
      expr_of(f, nd.b, out);
      out += ")";
      break;
  }
}
}  // namespace

std::string Formula::to_expression() const {
  std::string out;
  expr_of(*this, root, out);
  return out;
}

bool Formula::has_or() const {
  for (const auto& nd : nodes)
    if (nd.op == Op::Or) return true;
  return false;
}

bool Formula::has_and() const {
  for (const auto& nd : nodes)
    if (nd.op == Op::And) return true;
  return false;
}

namespace {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;
  Formula f;

  explicit ExprParser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  int parse_expr() {
    char c = peek();
    if (c == 'x') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected variable index after 'x'");
      int v = std::stoi(s.substr(start, pos - start));
      if (v < 1) fail("variable indices start at 1");
      f.num_vars = std::max(f.num_vars, v);
      f.nodes.push_back({Formula::Op::Var, -1, -1, v});
      return static_cast<int>(f.nodes.size()) - 1;
    }
    if (c == '!') {
      ++pos;
      int a = parse_expr();
      f.nodes.push_back({Formula::Op::Not, a, -1, 0});
      return static_cast<int>(f.nodes.size()) - 1;
    }
    if (c == '(') {
      ++pos;
      int a = parse_expr();
      char op = peek();
      if (op != '&' && op != '|') fail("expected '&' or '|'");
      ++pos;
      int b = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      f.nodes.push_back({op == '&' ? Formula::Op::And : Formula::Op::Or, a, b, 0});
      return static_cast<int>(f.nodes.size()) - 1;
    }
    fail("expected 'x<digits>', '!' or '('");
  }
};

void check_all_vars_used(const Formula& f) {
  std::vector<char> used(static_cast<size_t>(f.num_vars) + 1, 0);
  for (const auto& nd : f.nodes)
    if (nd.op == Formula::Op::Var) used[static_cast<size_t>(nd.var)] = 1;
  for (int v = 1; v <= f.num_vars; ++v)
    if (!used[static_cast<size_t>(v)])
      throw std::invalid_argument("variable x" + std::to_string(v) + " is never referenced");
  if (f.num_vars == 0) throw std::invalid_argument("formula has no variables");
}

}  // namespace

Formula parse_expression(const std::string& text) {
  ExprParser p(text);
  p.f.root = p.parse_expr();
  if (p.peek() != '\0') p.fail("trailing input");
  check_all_vars_used(p.f);
  return std::move(p.f);
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int n = -1;
  long m = -1;
  Formula f;
  std::vector<int> clause_roots;
  std::vector<long> lits;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("DIMACS line " + std::to_string(lineno) + ": " + msg);
  };
  auto flush_clause = [&]() {
    if (lits.empty()) fail("empty clause");
    int acc = -1;
    for (long lit : lits) {
      long v = lit < 0 ? -lit : lit;
      if (v > n) fail("variable index exceeds header");
      f.nodes.push_back({Formula::Op::Var, -1, -1, static_cast<int>(v)});
      int id = static_cast<int>(f.nodes.size()) - 1;
      if (lit < 0) {
        f.nodes.push_back({Formula::Op::Not, id, -1, 0});
        id = static_cast<int>(f.nodes.size()) - 1;
      }
      if (acc < 0) {
        acc = id;
      } else {
        f.nodes.push_back({Formula::Op::Or, acc, id, 0});
        acc = static_cast<int>(f.nodes.size()) - 1;
      }
    }
    clause_roots.push_back(acc);
    lits.clear();
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 0) fail("bad problem line");
      continue;
    }
    if (n < 0) fail("clause before problem line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        flush_clause();
      } else {
        lits.push_back(lit);
      }
    }
    if (ls.fail() && !ls.eof()) fail("bad literal");
  }
  if (!lits.empty()) fail("clause not terminated by 0");
  if (n < 0) throw std::invalid_argument("DIMACS: missing problem line");
  if (clause_roots.empty()) throw std::invalid_argument("DIMACS: no clauses");
  if (m >= 0 && static_cast<long>(clause_roots.size()) != m)
    throw std::invalid_argument("DIMACS: clause count differs from header");
  f.num_vars = n;
  // Right fold: c1 & (c2 & (... & ck)).
  int acc = clause_roots.back();
  for (size_t i = clause_roots.size() - 1; i-- > 0;) {
    f.nodes.push_back({Formula::Op::And, clause_roots[i], acc, 0});
    acc = static_cast<int>(f.nodes.size()) - 1;
  }
  f.root = acc;
  check_all_vars_used(f);
  return f;
}

namespace {
int copy_or_free(const Formula& src, int i, Formula& dst) {
  const auto& nd = src.node(i);
  switch (nd.op) {
    case Formula::Op::Var:
      dst.nodes.push_back(nd);
      return static_cast<int>(dst.nodes.size()) - 1;
    case Formula::Op::Not: {
      int a = copy_or_free(src, nd.a, dst);
      dst.nodes.push_back({Formula::Op::Not, a, -1, 0});
      return static_cast<int>(dst.nodes.size()) - 1;
    }
    case Formula::Op::And: {
      int a = copy_or_free(src, nd.a, dst);
      int b = copy_or_free(src, nd.b, dst);
      dst.nodes.push_back({Formula::Op::And, a, b, 0});
      return static_cast<int>(dst.nodes.size()) - 1;
    }
    case Formula::Op::Or: {
      // a | b  ->  !(!a & !b)
      int a = copy_or_free(src, nd.a, dst);
      dst.nodes.push_back({Formula::Op::Not, a, -1, 0});
      int na = static_cast<int>(dst.nodes.size()) - 1;
      int b = copy_or_free(src, nd.b, dst);
      dst.nodes.push_back({Formula::Op::Not, b, -1, 0});
      int nb = static_cast<int>(dst.nodes.size()) - 1;
      dst.nodes.push_back({Formula::Op::And, na, nb, 0});
      int an = static_cast<int>(dst.nodes.size()) - 1;
      dst.nodes.push_back({Formula::Op::Not, an, -1, 0});
      return static_cast<int>(dst.nodes.size()) - 1;
    }
  }
  throw std::logic_error("bad op");
}
}  // namespace

Formula eliminate_or(const Formula& f) {
  Formula out;
  out.num_vars = f.num_vars;
  out.root = copy_or_free(f, f.root, out);
  return out;
}

uint64_t brute_force_count(const Formula& f) {
  if (f.num_vars > 24) throw std::length_error("brute_force_count: more than 24 variables");
  uint64_t count = 0;
  for (uint32_t mask = 0; mask < (uint32_t{1} << f.num_vars); ++mask)
    if (f.evaluate(mask)) ++count;
  return count;
}

bool PlanarCircuit::simulate(int node_id, uint32_t mask) const {
  const Node& nd = nodes[static_cast<size_t>(node_id)];
  switch (nd.kind) {
    case Node::Kind::Leaf: return (mask >> (nd.var - 1)) & 1u;
    case Node::Kind::Not: return !simulate(nd.a, mask);
    case Node::Kind::And: return simulate(nd.a, mask) && simulate(nd.b, mask);
  }
  throw std::logic_error("bad node");
}

namespace {
int build_planar(const Formula& f, int i, PlanarCircuit& c) {
  const auto& nd = f.node(i);
  switch (nd.op) {
    case Formula::Op::Var: {
      c.nodes.push_back({PlanarCircuit::Node::Kind::Leaf, nd.var, -1, -1,
                         static_cast<int>(c.leaf_order.size())});
      int id = static_cast<int>(c.nodes.size()) - 1;
      c.leaf_order.push_back(id);
      c.occurrence_count[static_cast<size_t>(nd.var)]++;
      return id;
    }
    case Formula::Op::Not: {
      int a = build_planar(f, nd.a, c);
      c.nodes.push_back({PlanarCircuit::Node::Kind::Not, 0, a, -1, 0});
      return static_cast<int>(c.nodes.size()) - 1;
    }
    case Formula::Op::And: {
      int a = build_planar(f, nd.a, c);
      int b = build_planar(f, nd.b, c);
      c.nodes.push_back({PlanarCircuit::Node::Kind::And, 0, a, b, 0});
      return static_cast<int>(c.nodes.size()) - 1;
    }
    case Formula::Op::Or:
      throw std::invalid_argument("to_planar_circuit: formula contains OR");
  }
  throw std::logic_error("bad op");
}
}  // namespace

PlanarCircuit to_planar_circuit(const Formula& f) {
  PlanarCircuit c;
  c.num_vars = f.num_vars;
  c.occurrence_count.assign(static_cast<size_t>(f.num_vars) + 1, 0);
  c.root = build_planar(f, f.root, c);
  c.fanout_targets.assign(static_cast<size_t>(f.num_vars) + 1, {});
  for (int id : c.leaf_order) {
    const auto& nd = c.nodes[static_cast<size_t>(id)];
    c.fanout_targets[static_cast<size_t>(nd.var)].push_back(nd.column);
  }
  // A riser leaving variable v's fanout row crosses the fanout row of every
  // variable stacked above v whose horizontal layer extends past the riser's
  // column (layers run from the left edge to their rightmost target).
  for (int id : c.leaf_order) {
    const auto& leaf = c.nodes[static_cast<size_t>(id)];
    for (int u = 1; u <= c.num_vars; ++u) {
      if (u == leaf.var) continue;
      if (u <= leaf.var) continue;  // layer at or below this riser's origin
      const auto& targets = c.fanout_targets[static_cast<size_t>(u)];
      int max_target = *std::max_element(targets.begin(), targets.end());
      if (max_target > leaf.column) c.crossings.emplace_back(leaf.column, u - 1);
    }
  }
  return c;
}

}  // namespace qdlab
