#include "qdlab/compiler.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qdlab/gadget.hpp"

namespace qdlab {

void CompileMode::validate() const {
  if (p <= ExactRational(0) || p > ExactRational(1, 4))
    throw std::invalid_argument("mode: p must lie in (0, 1/4]");
  if (is_dqmld() && (r <= ExactRational(0) || r >= ExactRational(1)))
    throw std::invalid_argument("mode: r must lie in (0, 1)");
  if (M && *M < ExactRational(1))
    throw std::invalid_argument("mode: M must be >= 1");
  if (M && tag != Tag::QMLD_APPROX && tag != Tag::QMLD_UNIFORM)
    throw std::invalid_argument("mode: M applies only to the approx/uniform variants");
  if (tag == Tag::QMLD_APPROX && !M)
    throw std::invalid_argument("mode: the approx variant requires M");
}

std::string CompileMode::tag_name() const {
  switch (tag) {
    case Tag::QMLD: return "qmld";
    case Tag::QMLD_APPROX: return "qmld-approx";
    case Tag::QMLD_UNIFORM: return "qmld-uniform";
    case Tag::DQMLD: return "dqmld";
    case Tag::DQMLD_MAJORITY: return "dqmld-majority";
  }
  throw std::logic_error("bad mode tag");
}

CompileMode::Tag CompileMode::tag_from_name(const std::string& name) {
  if (name == "qmld") return Tag::QMLD;
  if (name == "qmld-approx") return Tag::QMLD_APPROX;
  if (name == "qmld-uniform") return Tag::QMLD_UNIFORM;
  if (name == "dqmld") return Tag::DQMLD;
  if (name == "dqmld-majority") return Tag::DQMLD_MAJORITY;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

bool Feature::active(const PlanarCircuit& c, uint32_t mask) const {
  switch (kind) {
    case Kind::VarTrue: return (mask >> (node - 1)) & 1u;
    case Kind::NodeTrue: return c.simulate(node, mask);
    case Kind::AndCombo: {
      const auto& nd = c.nodes[static_cast<size_t>(node)];
      int got = (c.simulate(nd.a, mask) ? 2 : 0) | (c.simulate(nd.b, mask) ? 1 : 0);
      return got == combo;
    }
    case Kind::NegRoot: return !c.simulate(mask);
  }
  throw std::logic_error("bad feature kind");
}

std::string circuit_expression(const PlanarCircuit& c) {
  std::function<std::string(int)> rec = [&](int id) -> std::string {
    const auto& nd = c.nodes[static_cast<size_t>(id)];
    switch (nd.kind) {
      case PlanarCircuit::Node::Kind::Leaf: return "x" + std::to_string(nd.var);
      case PlanarCircuit::Node::Kind::Not: return "!" + rec(nd.a);
      case PlanarCircuit::Node::Kind::And: return "(" + rec(nd.a) + "&" + rec(nd.b) + ")";
    }
    throw std::logic_error("bad circuit node");
  };
  return rec(c.root);
}

namespace {

using NodeKind = PlanarCircuit::Node::Kind;

// Smallest k >= 0 with (1/p)^k >= M.
uint64_t ceil_log_inv_p(const ExactRational& M, const ExactRational& p) {
  uint64_t k = 0;
  ExactRational pw(1);
  while (pw < M) {
    pw = pw / p;
    ++k;
  }
  return k;
}

struct Builder {
  const PlanarCircuit& c;
  const CompileMode& mode;
  CompiledInstance inst;

  int n = 0;
  bool has_and = false;
  std::vector<int> and_nodes;      // post-order
  std::vector<int> internal_post;  // Not + And nodes, post-order
  std::map<int, int> ax;           // And node -> patch left column
  std::map<int, int> band_base;    // internal node -> band base row
  std::map<int, int> gate_children;  // And node -> number of And-based inputs
  std::vector<int> fan_base;         // variable -> fanout band base row
  std::vector<std::vector<int>> fan_targets;  // variable -> riser columns
  uint32_t w = 0, h = 0;
  int bands_end = 0;
  int uniform_base = -1, uniform_ra = -1;
  int root_col = 0;
  std::set<int> vertical_cols;
  std::deque<Feature> feats;
  std::map<int, size_t> var_feat;            // variable -> index in feats
  std::map<std::pair<int, int>, size_t> and_feat;  // (And node, combo) -> index
  GadgetTemplate and_tpl;

  Builder(const PlanarCircuit& circuit, const CompileMode& m)
      : c(circuit), mode(m), and_tpl(make_template("AND", {}, default_gadget_dir())) {}

  int chain_base(int id) const {
    while (c.nodes[static_cast<size_t>(id)].kind == NodeKind::Not)
      id = c.nodes[static_cast<size_t>(id)].a;
    return id;
  }
  bool is_and(int id) const { return c.nodes[static_cast<size_t>(id)].kind == NodeKind::And; }
  bool is_leaf(int id) const { return c.nodes[static_cast<size_t>(id)].kind == NodeKind::Leaf; }

  int ay(int g) const { return band_base.at(g) + 4 + 10 * gate_children.at(g); }
  // Link sub-band base for the given input side of g (right child lowest).
  int link_base(int g, int side) const {
    int idx = 0;
    if (side == 0 && is_and(chain_base(c.nodes[static_cast<size_t>(g)].b)))
      idx = 1;  // a left-side link sits above the right-side one
    return band_base.at(g) + 2 + 10 * idx;
  }

  void post_order(int id) {
    const auto& nd = c.nodes[static_cast<size_t>(id)];
    if (nd.kind == NodeKind::Leaf) return;
    post_order(nd.a);
    if (nd.kind == NodeKind::And) post_order(nd.b);
    internal_post.push_back(id);
    if (nd.kind == NodeKind::And) and_nodes.push_back(id);
  }

  // ---- geometry helpers -------------------------------------------------

  uint32_t qid(int col, int row) const {
    return inst.layout.index(static_cast<uint32_t>(col), static_cast<uint32_t>(row));
  }

  static Letter xor_letters(Letter a, Letter b) {
    uint8_t bits = static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b);
    return static_cast<Letter>(bits);  // caller guarantees bits != 0 handling
  }

  void put(Feature& f, int col, int row, Letter l) {
    uint32_t q = qid(col, row);
    auto it = f.letters.find(q);
    if (it == f.letters.end()) {
      f.letters.emplace(q, l);
      return;
    }
    uint8_t bits = static_cast<uint8_t>(it->second) ^ static_cast<uint8_t>(l);
    if (bits == 0)
      f.letters.erase(it);
    else
      it->second = static_cast<Letter>(bits);
  }

  void vrun(Feature& f, int col, int r0, int r1, Letter l = Letter::X) {
    for (int r = r0; r <= r1; ++r) put(f, col, r, l);
  }
  void hrun(Feature& f, int row, int c0, int c1, Letter l = Letter::Z) {
    for (int col = c0; col <= c1; ++col) put(f, col, row, l);
  }

  void add_syndrome(StabKind kind, int anchor_col, int anchor_row) {
    auto gi = find_generator(inst.layout, kind, anchor_col, anchor_row);
    if (!gi) throw std::logic_error("compiler: forced anchor missing from the layout");
    inst.syndrome.insert(*gi);
  }

  int turn_col(int beyond) const {
    int col = beyond + 2;
    if (col % 2 == 0) ++col;
    while (vertical_cols.count(col)) col += 2;
    return col;
  }

  Feature& new_feature(Feature::Kind kind, int node, int combo, std::string label) {
    feats.push_back(Feature{kind, node, combo, std::move(label), {}});
    return feats.back();
  }

  // ---- phases -----------------------------------------------------------

  void plan() {
    n = c.num_vars;
    post_order(c.root);
    has_and = !and_nodes.empty();
    if (!has_and && n != 1)
      throw std::logic_error("compiler: a gate-free circuit must have one variable");

    const int gate_col0 = 6 * n + 6;
    for (size_t i = 0; i < and_nodes.size(); ++i)
      ax[and_nodes[i]] = gate_col0 + 36 * static_cast<int>(i);
    w = has_and ? static_cast<uint32_t>(ax.at(and_nodes.back()) + 36)
                : static_cast<uint32_t>(6 * n + 8);

    for (int g : and_nodes) {
      const auto& nd = c.nodes[static_cast<size_t>(g)];
      int gc = (is_and(chain_base(nd.a)) ? 1 : 0) + (is_and(chain_base(nd.b)) ? 1 : 0);
      gate_children[g] = gc;
    }

    fan_base.assign(static_cast<size_t>(n) + 1, 0);
    int cur = 0;
    if (has_and) {
      for (int v = 1; v <= n; ++v) fan_base[static_cast<size_t>(v)] = 10 * (v - 1);
      cur = 10 * n;
    }
    for (int id : internal_post) {
      band_base[id] = cur;
      cur += is_and(id) ? 34 + 10 * gate_children.at(id) : 6;
    }
    bands_end = cur;

    int root_base = chain_base(c.root);
    root_col = is_and(root_base) ? ax.at(root_base) + 12 : 3;

    inst.ell = 0;
    inst.extension_length = 0;
    if (mode.tag == CompileMode::Tag::QMLD_UNIFORM) {
      uniform_base = cur;
      int h0 = cur + 6;
      inst.ell = static_cast<uint64_t>(w) * static_cast<uint64_t>(h0);
      uniform_ra = (root_col % 2 == 1) ? uniform_base + 2 : uniform_base + 3;
      inst.extension_length = 2 * inst.ell + (mode.M ? 2 * ceil_log_inv_p(*mode.M, mode.p) : 0);
      h = static_cast<uint32_t>(uniform_ra + 1 + static_cast<int64_t>(inst.extension_length));
    } else {
      h = static_cast<uint32_t>(cur + 4);
      inst.ell = static_cast<uint64_t>(w) * static_cast<uint64_t>(h);
    }

    // Columns hosting vertical strings, for snake-turn placement.
    for (int v = 1; v <= n; ++v) {
      vertical_cols.insert(3 + 6 * (v - 1));
      vertical_cols.insert(5 + 6 * (v - 1));
    }
    for (auto& [g, a] : ax)
      for (int off : {3, 12, 13, 14, 24, 25, 27, 31}) vertical_cols.insert(a + off);
    vertical_cols.insert(root_col);

    inst.layout = build_rotated_layout(w, h);
  }

  // Collect each variable's riser columns before any emission.
  void collect_fan_targets() {
    fan_targets.assign(static_cast<size_t>(n) + 1, {});
    for (int g : and_nodes) {
      const auto& nd = c.nodes[static_cast<size_t>(g)];
      int bl = chain_base(nd.a), br = chain_base(nd.b);
      if (is_leaf(bl))
        fan_targets[static_cast<size_t>(c.nodes[static_cast<size_t>(bl)].var)].push_back(ax.at(g) + 3);
      if (is_leaf(br))
        fan_targets[static_cast<size_t>(c.nodes[static_cast<size_t>(br)].var)].push_back(ax.at(g) + 25);
    }
    for (auto& t : fan_targets) std::sort(t.begin(), t.end());
  }

  void emit_variables() {
    for (int v = 1; v <= n; ++v) {
      Feature& f = new_feature(Feature::Kind::VarTrue, v, -1, "x" + std::to_string(v));
      var_feat[v] = feats.size() - 1;
      if (!has_and) {
        inst.placements.push_back({"VARIABLE", v, 3, 0});
        inst.variable_ports[v] = qid(3, 0);
        continue;  // the riser itself is emitted by the root chain
      }
      const int fb = fan_base[static_cast<size_t>(v)];
      const int iv = 3 + 6 * (v - 1), tv = iv + 2;
      const auto& outs = fan_targets[static_cast<size_t>(v)];
      if (outs.empty())
        throw std::logic_error("compiler: variable without a consumer");
      vrun(f, iv, 0, fb + 7);
      put(f, iv + 1, fb + 7, Letter::X);
      vrun(f, tv, 0, fb + 6);
      for (int o : outs) vrun(f, o, 0, fb + 8);
      const int tc = turn_col(outs.back());
      hrun(f, fb + 3, 0, tc - 1);
      put(f, tc, fb + 4, Letter::Z);
      hrun(f, fb + 5, 0, tc);
      inst.placements.push_back({"FANOUT", v, iv, fb});
      inst.variable_ports[v] = qid(iv, 0);
      inst.routes.push_back({'X', iv, 0, fb + 7, "fanout-input x" + std::to_string(v)});
      inst.routes.push_back({'X', tv, 0, fb + 6, "fanout-transfer x" + std::to_string(v)});
      for (int o : outs)
        inst.routes.push_back({'X', o, 0, fb + 8, "fanout-output x" + std::to_string(v)});
      inst.routes.push_back({'Z', fb + 3, 0, tc - 1, "fanout-snake x" + std::to_string(v)});
      inst.routes.push_back({'Z', fb + 5, 0, tc, "fanout-snake x" + std::to_string(v)});
    }
  }

  void emit_and_patches() {
    for (int g : and_nodes) {
      const int a = ax.at(g), y = ay(g);
      inst.placements.push_back({"AND", g, a, y});
      for (const auto& [kind, rel] : and_tpl.forced)
        add_syndrome(kind, a + rel.first, y + rel.second);
      for (int combo = 0; combo < 4; ++combo) {
        std::string bits = {static_cast<char>('0' + (combo >> 1)),
                            static_cast<char>('0' + (combo & 1))};
        const GadgetWitness& wit = and_tpl.witness_for(bits);
        Feature& f = new_feature(Feature::Kind::AndCombo, g, combo,
                                 "and" + std::to_string(g) + ":" + bits);
        and_feat[{g, combo}] = feats.size() - 1;
        for (const auto& [rel, l] : wit.pattern) put(f, a + rel.first, y + rel.second, l);
        for (const auto& [wire, term] : and_tpl.aux) {
          const auto [side, off] = term;
          if (wire == 'X' && side == Side::Bottom) {
            auto it = wit.pattern.find({off, 0});
            if (it != wit.pattern.end() && letter_has_x(it->second)) {
              vrun(f, a + off, 0, y - 1);
              inst.routes.push_back({'X', a + off, 0, y - 1, f.label + " aux"});
            }
          } else if (wire == 'Z' && side == Side::Left) {
            auto it = wit.pattern.find({0, off});
            if (it != wit.pattern.end() && letter_has_z(it->second)) {
              hrun(f, y + off, 0, a - 1);
              inst.routes.push_back({'Z', y + off, 0, a - 1, f.label + " aux"});
            }
          }
        }
      }
    }
  }

  // Walks one consumer input: the chain of NOTs down to its base, the riser
  // segments, and (for an AND-based input) the transport link.
  // side: 0 = left input, 1 = right input, -1 = circuit output.
  void emit_feed(int consumer, int side, int child) {
    std::vector<int> nots;
    int id = child;
    while (c.nodes[static_cast<size_t>(id)].kind == NodeKind::Not) {
      nots.push_back(id);
      id = c.nodes[static_cast<size_t>(id)].a;
    }
    std::reverse(nots.begin(), nots.end());  // bottom-most NOT first
    const int base = id;

    Feature* cur;
    int cur_row, col;
    if (is_leaf(base)) {
      int v = c.nodes[static_cast<size_t>(base)].var;
      cur = &feats[var_feat.at(v)];
      if (side == 0)
        col = ax.at(consumer) + 3;
      else if (side == 1)
        col = ax.at(consumer) + 25;
      else
        col = root_col;
      cur_row = has_and ? fan_base[static_cast<size_t>(v)] + 9 : 0;
    } else {
      cur = &feats[and_feat.at({base, 3})];
      col = ax.at(base) + 12;
      cur_row = ay(base) + 30;
    }

    for (int m : nots) {
      const int nb = band_base.at(m);
      const int ra = (col % 2 == 1) ? nb + 2 : nb + 3;
      vrun(*cur, col, cur_row, ra);
      add_syndrome(StabKind::Z, col - 1, ra);
      inst.placements.push_back({"NOT", m, col, nb});
      cur = &new_feature(Feature::Kind::NodeTrue, m, -1, "not" + std::to_string(m));
      cur_row = ra + 1;
    }

    if (side < 0) {
      emit_output(*cur, col, cur_row);
      return;
    }

    const int g = consumer, a = ax.at(g), y = ay(g);
    if (!is_leaf(base)) {
      // Transport the child gate's output across to the port column.
      const int pb = band_base.at(g);
      vrun(*cur, col, cur_row, pb);
      const int lb = link_base(g, side);
      const int ci = col + 1, ct = ax.at(base) + 31;
      const int O = side == 0 ? a + 3 : a + 25;
      vrun(*cur, ci, pb + 1, lb + 7);
      for (int x = ci + 1; x < ct; ++x) put(*cur, x, lb + 7, Letter::X);
      vrun(*cur, ct, 0, lb + 6);
      vrun(*cur, O, 0, lb + 8);
      const int tc = turn_col(std::max(ct, O));
      hrun(*cur, lb + 3, 0, tc - 1);
      put(*cur, tc, lb + 4, Letter::Z);
      hrun(*cur, lb + 5, 0, tc);
      inst.placements.push_back({"FANOUT", base, ci, lb});
      inst.routes.push_back({'X', ct, 0, lb + 6, cur->label + " link-transfer"});
      inst.routes.push_back({'X', O, 0, lb + 8, cur->label + " link-output"});
      inst.routes.push_back({'Z', lb + 3, 0, tc - 1, cur->label + " link-snake"});
      inst.routes.push_back({'Z', lb + 5, 0, tc, cur->label + " link-snake"});
      cur_row = lb + 9;
      col = O;
    }
    if (side == 0) {
      vrun(*cur, col, cur_row, y - 1);
    } else {
      vrun(*cur, col, cur_row, y - 2);
      put(*cur, a + 24, y - 1, Letter::X);
    }
  }

  void emit_output(Feature& f, int col, int cur_row) {
    Feature* cur = &f;
    if (mode.tag == CompileMode::Tag::QMLD_UNIFORM) {
      vrun(*cur, col, cur_row, uniform_ra);
      add_syndrome(StabKind::Z, col - 1, uniform_ra);
      inst.placements.push_back({"NOT", -1, col, uniform_base});
      Feature& neg = new_feature(Feature::Kind::NegRoot, -1, -1, "negated-output");
      vrun(neg, col, uniform_ra + 1, static_cast<int>(h) - 1);
      inst.readout_qubit = qid(col, uniform_ra);
      inst.routes.push_back(
          {'X', col, uniform_ra + 1, static_cast<int>(h) - 1, "output-extension"});
      for (int r = uniform_base; r < static_cast<int>(h); ++r)
        inst.output_wire.push_back(qid(col, r));
    } else {
      vrun(*cur, col, cur_row, static_cast<int>(h) - 1);
      inst.readout_qubit = qid(col, static_cast<int>(h) - 1);
      if (mode.tag != CompileMode::Tag::DQMLD_MAJORITY)
        inst.special_qubit = inst.readout_qubit;
      for (int r = bands_end; r < static_cast<int>(h); ++r)
        inst.output_wire.push_back(qid(col, r));
    }
    inst.output_col = col;
  }

  void emit_chains() {
    for (int g : and_nodes) {
      emit_feed(g, 0, c.nodes[static_cast<size_t>(g)].a);
      emit_feed(g, 1, c.nodes[static_cast<size_t>(g)].b);
    }
    emit_feed(-1, -1, c.root);
  }

  void build_noise() {
    // Per qubit: letter options per exclusivity group.  All four combos of an
    // AND patch form one group (exactly one is ever active); every other
    // feature is its own group.
    std::map<uint32_t, std::map<int, std::set<uint8_t>>> groups;
    for (size_t i = 0; i < feats.size(); ++i) {
      const Feature& f = feats[i];
      int gid = f.kind == Feature::Kind::AndCombo ? -1 - f.node : static_cast<int>(i);
      for (const auto& [q, l] : f.letters)
        groups[q][gid].insert(static_cast<uint8_t>(l));
    }

    inst.noise.num_qubits = w * h;
    for (const auto& [q, by_group] : groups) {
      std::set<uint8_t> reach = {0};
      for (const auto& [gid, letters] : by_group) {
        (void)gid;
        std::set<uint8_t> next = reach;
        for (uint8_t s : reach)
          for (uint8_t l : letters) next.insert(static_cast<uint8_t>(s ^ l));
        reach = std::move(next);
      }
      reach.erase(0);
      if (reach.empty()) continue;
      QubitNoise qn;
      ExactRational per = mode.is_dqmld()
                              ? ExactRational(1, static_cast<unsigned long>(reach.size()) + 1)
                              : mode.p;
      for (uint8_t bits : reach) {
        Letter l = static_cast<Letter>(bits);
        if (l == Letter::X) qn.pX = per;
        if (l == Letter::Y) qn.pY = per;
        if (l == Letter::Z) qn.pZ = per;
      }
      inst.noise.qubits[q] = qn;

      // Crossings: some group contributes an X component while another
      // contributes a Z component on the same qubit.
      bool any_x = false, any_z = false;
      for (const auto& [gid, letters] : by_group) {
        (void)gid;
        bool gx = false, gz = false;
        for (uint8_t l : letters) {
          gx = gx || (l & 1u);
          gz = gz || (l & 2u);
        }
        any_x = any_x || gx;
        any_z = any_z || gz;
      }
      if (by_group.size() > 1 && any_x && any_z)
        inst.placements.push_back({"CROSS_XZ", -1, static_cast<int>(inst.layout.col_of(q)),
                                   static_cast<int>(inst.layout.row_of(q))});
    }

    if (inst.special_qubit) {
      QubitNoise& sq = inst.noise.qubits.at(*inst.special_qubit);
      if (!(sq.pX > ExactRational(0)) || sq.pY > ExactRational(0) || sq.pZ > ExactRational(0))
        throw std::logic_error("compiler: special qubit must be an X-only site");
      if (mode.tag == CompileMode::Tag::QMLD)
        sq.pX = ExactRational(1) - mode.p.pow(inst.ell);
      else if (mode.tag == CompileMode::Tag::QMLD_APPROX)
        sq.pX = ExactRational(1) - mode.p.pow(inst.ell) / *mode.M;
      else if (mode.tag == CompileMode::Tag::DQMLD)
        sq.pX = mode.r;
    }
    inst.noise.validate();
  }

  CompiledInstance run() {
    mode.validate();
    plan();
    collect_fan_targets();
    emit_variables();
    emit_and_patches();
    emit_chains();
    build_noise();
    inst.mode = mode;
    inst.circuit = c;
    inst.expression = circuit_expression(c);
    inst.num_vars = n;
    inst.features.assign(feats.begin(), feats.end());
    return std::move(inst);
  }
};

}  // namespace

CompiledInstance compile(const PlanarCircuit& c, const CompileMode& mode) {
  Builder b(c, mode);
  return b.run();
}

CompiledInstance compile_formula(const Formula& f, const CompileMode& mode) {
  return compile(to_planar_circuit(eliminate_or(f)), mode);
}

PauliOperator assignment_witness(const CompiledInstance& inst, uint32_t mask) {
  if (inst.num_vars < 32 && mask >> inst.num_vars)
    throw std::invalid_argument("assignment_witness: assignment out of range");
  PauliOperator e(inst.layout.num_qubits());
  for (const Feature& f : inst.features) {
    if (!f.active(inst.circuit, mask)) continue;
    for (const auto& [q, l] : f.letters) e.xor_letter(q, l);
  }
  return e;
}

bool output_value(const CompiledInstance& inst, const PauliOperator& e) {
  bool present = false;
  Letter l = e.letter_at(inst.readout_qubit, &present);
  return present && letter_has_x(l);
}

SeparationBounds separation_bounds(const CompiledInstance& inst) {
  const ExactRational& p = inst.mode.p;
  const unsigned long ell = static_cast<unsigned long>(inst.ell);
  switch (inst.mode.tag) {
    case CompileMode::Tag::QMLD:
      return {(ExactRational(1) - p.pow(ell)) * p.pow(ell - 1), p.pow(ell)};
    case CompileMode::Tag::QMLD_APPROX: {
      ExactRational top = p.pow(ell) / *inst.mode.M;
      return {(ExactRational(1) - top) * p.pow(ell - 1), top};
    }
    case CompileMode::Tag::QMLD_UNIFORM: {
      const unsigned long L = static_cast<unsigned long>(inst.extension_length);
      return {p.pow(ell) * (ExactRational(1) - p).pow(L), p.pow(L)};
    }
    default:
      throw std::invalid_argument("separation_bounds: QMLD-family modes only");
  }
}

LogicalClass coset_relation(const CompiledInstance& inst, uint32_t a, uint32_t b) {
  return logical_class(inst.layout, assignment_witness(inst, a), assignment_witness(inst, b));
}

namespace {

char domain_char(const std::vector<Letter>& dom) {
  if (dom.empty()) return '.';
  if (dom.size() == 1) return letter_char(dom[0]);
  bool x = false, y = false, z = false;
  for (Letter l : dom) {
    x = x || l == Letter::X;
    y = y || l == Letter::Y;
    z = z || l == Letter::Z;
  }
  if (x && z && !y) return '+';
  if (x && y && z) return '*';
  return '?';
}

}  // namespace

std::string render_ascii(const CompiledInstance& inst) {
  const auto& lay = inst.layout;
  std::ostringstream out;
  out << "grid " << lay.w << "x" << lay.h << " mode " << inst.mode.tag_name() << "\n";
  for (int r = static_cast<int>(lay.h) - 1; r >= 0; --r) {
    for (uint32_t col = 0; col < lay.w; ++col) {
      uint32_t q = lay.index(col, static_cast<uint32_t>(r));
      char ch = domain_char(inst.noise.allowed_letters(q));
      if (inst.special_qubit && q == *inst.special_qubit)
        ch = 'S';
      else if (q == inst.readout_qubit)
        ch = 'R';
      out << ch;
    }
    out << "\n";
  }
  for (uint32_t gi : inst.syndrome) {
    const auto& g = lay.generators[gi];
    out << "-1 " << stab_kind_char(g.kind) << " @ (" << g.anchor_col << "," << g.anchor_row
        << ")\n";
  }
  return out.str();
}

std::string render_svg(const CompiledInstance& inst) {
  const auto& lay = inst.layout;
  const int cell = 10;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << lay.w * cell + 20
      << "\" height=\"" << lay.h * cell + 20 << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << lay.w * cell + 20 << "\" height=\""
      << lay.h * cell + 20 << "\" fill=\"white\"/>\n";
  for (const auto& [q, qn] : inst.noise.qubits) {
    (void)qn;
    uint32_t col = lay.col_of(q), row = lay.row_of(q);
    char ch = domain_char(inst.noise.allowed_letters(q));
    const char* fill = "gray";
    if (ch == 'X') fill = "#d33";
    if (ch == 'Z') fill = "#33d";
    if (ch == 'Y') fill = "#3a3";
    if (ch == '+') fill = "#a3a";
    if (ch == '*') fill = "#333";
    out << "<rect x=\"" << 10 + col * cell << "\" y=\"" << 10 + (lay.h - 1 - row) * cell
        << "\" width=\"" << cell - 1 << "\" height=\"" << cell - 1 << "\" fill=\"" << fill
        << "\"/>\n";
  }
  for (uint32_t gi : inst.syndrome) {
    const auto& g = lay.generators[gi];
    out << "<circle cx=\"" << 10 + (g.anchor_col + 1) * cell << "\" cy=\""
        << 10 + (static_cast<int>(lay.h) - 1 - g.anchor_row) * cell << "\" r=\"3\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qdlab
