#include "qdlab/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdlab {

SupportEnumerator::SupportEnumerator(uint32_t num_qubits,
                                     const std::map<uint32_t, std::vector<Letter>>& domains)
    : n_(num_qubits) {
  for (const auto& [q, dom] : domains) {
    if (q >= n_) throw std::invalid_argument("SupportEnumerator: qubit out of range");
    if (dom.empty()) continue;  // no letters allowed: pinned to identity
    var_of_qubit_.emplace(q, static_cast<uint32_t>(vars_.size()));
    vars_.push_back(q);
    std::vector<Letter> d = dom;
    std::sort(d.begin(), d.end(),
              [](Letter a, Letter b) { return letter_rank(a) < letter_rank(b); });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    domains_.push_back(std::move(d));
  }
}

bool SupportEnumerator::add_constraint(StabKind kind, uint8_t target,
                                       const std::vector<uint32_t>& qubits) {
  Constraint c;
  c.kind = kind;
  c.target = target & 1u;
  for (uint32_t q : qubits) {
    auto it = var_of_qubit_.find(q);
    if (it != var_of_qubit_.end()) c.vars.push_back(it->second);
  }
  if (c.vars.empty()) {
    if (c.target) infeasible_ = true;
    return !c.target;
  }
  std::sort(c.vars.begin(), c.vars.end());
  constraints_.push_back(std::move(c));
  return true;
}

bool SupportEnumerator::add_layout_constraints(const RotatedLayout& lay,
                                               const std::set<uint32_t>& target_syndrome) {
  if (lay.num_qubits() != n_)
    throw std::invalid_argument("SupportEnumerator: layout qubit count mismatch");
  bool ok = true;
  for (uint32_t gi = 0; gi < lay.generators.size(); ++gi) {
    uint8_t t = target_syndrome.count(gi) ? 1 : 0;
    ok = add_constraint(lay.generators[gi].kind, t, lay.generators[gi].qubits) && ok;
  }
  return ok;
}

namespace {
inline int anti(StabKind k, Letter l) {
  return k == StabKind::X ? (letter_has_z(l) ? 1 : 0) : (letter_has_x(l) ? 1 : 0);
}
}  // namespace

SupportEnumerator::Stats SupportEnumerator::enumerate(
    const std::function<void(const PauliOperator&)>& sink, size_t max_support,
    uint64_t node_budget) const {
  Stats st;
  if (infeasible_) return st;
  if (vars_.size() > max_support)
    throw std::length_error("SupportEnumerator: support size exceeds cap (" +
                            std::to_string(vars_.size()) + " > " + std::to_string(max_support) +
                            ")");

  const size_t nv = vars_.size();
  const size_t nc = constraints_.size();
  std::vector<std::vector<uint32_t>> incident(nv);
  std::vector<uint32_t> last(nc, 0);
  for (uint32_t ci = 0; ci < nc; ++ci) {
    for (uint32_t v : constraints_[ci].vars) incident[v].push_back(ci);
    last[ci] = constraints_[ci].vars.back();
  }
  std::vector<uint8_t> parity(nc, 0);
  // Constraints whose only undecided variable is v (for unit-propagation
  // style domain pruning at v).
  std::vector<std::vector<uint32_t>> closing(nv);
  for (uint32_t ci = 0; ci < nc; ++ci) closing[last[ci]].push_back(ci);

  PauliOperator cur(n_);
  std::vector<uint8_t> touched_stack;

  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (++st.nodes > node_budget) {
      st.budget_exhausted = true;
      return false;
    }
    if (i == nv) {
      ++st.solutions;
      sink(cur);
      return true;
    }
    const uint32_t q = vars_[i];
    // Letters (identity first, then domain letters in canonical order) that
    // satisfy every constraint closing at this variable.
    auto feasible = [&](int a_x, int a_z) {
      for (uint32_t ci : closing[i]) {
        const auto& c = constraints_[ci];
        int a = c.kind == StabKind::X ? a_z : a_x;
        if ((parity[ci] ^ a) != c.target) return false;
      }
      return true;
    };
    auto try_letter = [&](bool identity, Letter l) -> bool {
      int a_x = identity ? 0 : (letter_has_x(l) ? 1 : 0);
      int a_z = identity ? 0 : (letter_has_z(l) ? 1 : 0);
      if (!feasible(a_x, a_z)) return true;  // prune, keep searching siblings
      std::vector<uint32_t> touched;
      if (!identity) {
        for (uint32_t ci : incident[i]) {
          if (anti(constraints_[ci].kind, l)) {
            parity[ci] ^= 1;
            touched.push_back(ci);
          }
        }
        cur.set(q, l);
      }
      bool cont = rec(i + 1);
      if (!identity) {
        cur.clear(q);
        for (uint32_t ci : touched) parity[ci] ^= 1;
      }
      return cont;
    };
    if (!try_letter(true, Letter::X)) return false;
    for (Letter l : domains_[i])
      if (!try_letter(false, l)) return false;
    return true;
  };
  rec(0);
  return st;
}

std::vector<PauliOperator> SupportEnumerator::collect(size_t max_support,
                                                      uint64_t node_budget) const {
  std::vector<PauliOperator> out;
  enumerate([&](const PauliOperator& e) { out.push_back(e); }, max_support, node_budget);
  return out;
}

}  // namespace qdlab
