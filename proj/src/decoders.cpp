#include "qdlab/decoders.hpp"

#include <algorithm>
#include <cstdlib>

#include "qdlab/enumerate.hpp"

namespace qdlab {

DecodingInstance decoding_view(const CompiledInstance& inst) {
  return DecodingInstance{inst.layout, inst.noise, inst.syndrome};
}

CapProfile CapProfile::named(const std::string& name) {
  if (name == "default" || name.empty()) return CapProfile{};
  if (name == "small") return CapProfile{8, 9, 60, 1'000'000};
  if (name == "large") return CapProfile{14, 20, 4000, 500'000'000};
  throw std::invalid_argument("unknown cap profile '" + name + "'");
}

CapProfile CapProfile::active() {
  const char* env = std::getenv("QDLAB_CAP_PROFILE");
  return named(env ? env : "");
}

namespace {

// Enumerates every Pauli on the full (tiny) lattice and hands each consistent
// one to the sink with its exact probability.  At n qubits and n-1 independent
// generators there are exactly 2^(n+1) consistent Paulis.
std::vector<std::pair<PauliOperator, ExactRational>> all_consistent(const DecodingInstance& inst,
                                                                    const CapProfile& caps) {
  const uint32_t n = inst.layout.num_qubits();
  if (n > caps.dense_max_qubits)
    throw ResourceCapError("instance has " + std::to_string(n) +
                           " qubits, above the dense enumeration cap of " +
                           std::to_string(caps.dense_max_qubits));
  const auto& gens = inst.layout.generators;
  std::vector<uint8_t> parity(gens.size(), 0), target(gens.size(), 0);
  for (uint32_t g : inst.syndrome) target[g] = 1;

  // Generators flipped by the X / Z component of a letter on each qubit.
  std::vector<std::vector<uint32_t>> flips_x(n), flips_z(n);
  for (uint32_t q = 0; q < n; ++q)
    for (uint32_t gi : inst.layout.incident[q]) {
      if (gens[gi].kind == StabKind::Z)
        flips_x[q].push_back(gi);  // Z-plaquettes see X components
      else
        flips_z[q].push_back(gi);
    }

  std::vector<std::pair<PauliOperator, ExactRational>> out;
  PauliOperator cur(n);
  static const Letter kLetters[3] = {Letter::X, Letter::Y, Letter::Z};

  std::function<void(uint32_t)> rec = [&](uint32_t q) {
    if (q == n) {
      if (parity == target) out.emplace_back(cur, inst.noise.probability_of(cur));
      return;
    }
    rec(q + 1);  // identity on q
    for (Letter l : kLetters) {
      cur.set(q, l);
      if (letter_has_x(l))
        for (uint32_t gi : flips_x[q]) parity[gi] ^= 1;
      if (letter_has_z(l))
        for (uint32_t gi : flips_z[q]) parity[gi] ^= 1;
      rec(q + 1);
      if (letter_has_x(l))
        for (uint32_t gi : flips_x[q]) parity[gi] ^= 1;
      if (letter_has_z(l))
        for (uint32_t gi : flips_z[q]) parity[gi] ^= 1;
    }
    cur.clear(q);
  };
  rec(0);
  return out;
}

// Canonical reference for coset classification: the canonically smallest
// nonzero-probability consistent error when one exists, else the canonically
// smallest consistent error outright.
const PauliOperator& canonical_reference(
    const std::vector<std::pair<PauliOperator, ExactRational>>& consistent) {
  if (consistent.empty()) throw std::logic_error("no syndrome-consistent Pauli exists");
  const PauliOperator* best = nullptr;
  for (const auto& [e, pr] : consistent)
    if (!pr.is_zero() && (!best || e < *best)) best = &e;
  if (!best)
    for (const auto& [e, pr] : consistent)
      if (!best || e < *best) best = &e;
  return *best;
}

}  // namespace

DecodeResult brute_force_qmld(const DecodingInstance& inst, const CapProfile& caps) {
  auto consistent = all_consistent(inst, caps);
  if (consistent.empty()) throw std::logic_error("no syndrome-consistent Pauli exists");
  DecodeResult res;
  const PauliOperator* best = nullptr;
  for (const auto& [e, pr] : consistent)
    if (!best || pr > res.probability || (pr == res.probability && e < *best)) {
      best = &e;
      res.probability = pr;
    }
  if (res.probability.is_zero()) {
    res.zero_probability_fallback = true;
    best = &canonical_reference(consistent);
  }
  res.error = *best;
  return res;
}

DecodeResult brute_force_dqmld(const DecodingInstance& inst, const CapProfile& caps) {
  if (inst.layout.generators.size() > caps.stabilizer_max_generators)
    throw ResourceCapError("generator count above the stabilizer cap of " +
                           std::to_string(caps.stabilizer_max_generators));
  auto consistent = all_consistent(inst, caps);
  const PauliOperator& ref = canonical_reference(consistent);

  DecodeResult res;
  std::array<const PauliOperator*, 4> rep{};  // canonical nonzero rep per class
  std::array<const PauliOperator*, 4> any_rep{};
  for (const auto& [e, pr] : consistent) {
    auto cls = static_cast<size_t>(logical_class(inst.layout, ref, e));
    res.coset_probability[cls] += pr;
    res.total_consistent_mass += pr;
    if (!any_rep[cls] || e < *any_rep[cls]) any_rep[cls] = &e;
    if (!pr.is_zero() && (!rep[cls] || e < *rep[cls])) rep[cls] = &e;
  }
  size_t argmax = 0;
  for (size_t c = 1; c < 4; ++c)
    if (res.coset_probability[c] > res.coset_probability[argmax]) argmax = c;
  for (size_t c = 0; c < 4; ++c)
    if (c != argmax && res.coset_probability[c] == res.coset_probability[argmax]) res.tie = true;
  res.chosen = static_cast<LogicalClass>(argmax);
  res.probability = res.coset_probability[argmax];
  res.zero_probability_fallback = res.probability.is_zero();
  res.error = rep[argmax] ? *rep[argmax] : *any_rep[argmax];
  return res;
}

SupportEnumeration support_restricted_enumerate(const DecodingInstance& inst,
                                                const CapProfile& caps) {
  std::map<uint32_t, std::vector<Letter>> domains;
  for (const auto& [q, qn] : inst.noise.qubits) {
    (void)qn;
    auto letters = inst.noise.allowed_letters(q);
    if (!letters.empty()) domains[q] = std::move(letters);
  }
  if (domains.size() > caps.support_max_qubits)
    throw ResourceCapError("noise support of " + std::to_string(domains.size()) +
                           " qubits, above the support cap of " +
                           std::to_string(caps.support_max_qubits));
  SupportEnumeration out;
  SupportEnumerator en(inst.layout.num_qubits(), domains);
  en.add_layout_constraints(inst.layout, inst.syndrome);
  try {
    auto stats = en.enumerate(
        [&](const PauliOperator& e) {
          out.errors.emplace_back(e, inst.noise.probability_of(e));
          return true;
        },
        /*max_support=*/caps.support_max_qubits, caps.node_budget);
    out.nodes = stats.nodes;
    out.inconclusive = stats.budget_exhausted;
  } catch (const std::length_error&) {
    out.inconclusive = true;
  }
  std::sort(out.errors.begin(), out.errors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

DecodeResult structured_qmld(const CompiledInstance& inst) {
  DecodeResult res;
  std::optional<PauliOperator> best;
  const uint32_t count = 1u << inst.num_vars;
  for (uint32_t mask = 0; mask < count; ++mask) {
    PauliOperator e = assignment_witness(inst, mask);
    ExactRational pr = inst.noise.probability_of(e);
    if (!best || pr > res.probability || (pr == res.probability && e < *best)) {
      best = std::move(e);
      res.probability = pr;
      res.assignment = mask;
    }
  }
  res.error = std::move(*best);
  return res;
}

DecodeResult structured_dqmld(const CompiledInstance& inst) {
  if (!inst.mode.is_dqmld())
    throw std::invalid_argument("structured_dqmld: instance was not compiled in a DQMLD mode");
  DecodeResult res;
  const uint32_t count = 1u << inst.num_vars;
  PauliOperator ref = assignment_witness(inst, 0);
  std::array<std::optional<PauliOperator>, 4> rep{};
  std::array<std::optional<uint32_t>, 4> rep_mask{};
  for (uint32_t mask = 0; mask < count; ++mask) {
    PauliOperator e = assignment_witness(inst, mask);
    ExactRational pr = inst.noise.probability_of(e);
    auto cls = static_cast<size_t>(logical_class(inst.layout, ref, e));
    res.coset_probability[cls] += pr;
    res.total_consistent_mass += pr;
    if (!rep[cls] || e < *rep[cls]) {
      rep[cls] = std::move(e);
      rep_mask[cls] = mask;
    }
  }
  size_t argmax = 0;
  for (size_t c = 1; c < 4; ++c)
    if (res.coset_probability[c] > res.coset_probability[argmax]) argmax = c;
  for (size_t c = 0; c < 4; ++c)
    if (c != argmax && res.coset_probability[c] == res.coset_probability[argmax]) res.tie = true;
  res.chosen = static_cast<LogicalClass>(argmax);
  res.probability = res.coset_probability[argmax];
  res.error = *rep[argmax];
  res.assignment = rep_mask[argmax];
  return res;
}

bool decision_qmld(const DecodingInstance& inst, const ExactRational& threshold,
                   const CapProfile& caps) {
  if (inst.layout.num_qubits() <= caps.dense_max_qubits) {
    auto consistent = all_consistent(inst, caps);
    for (const auto& [e, pr] : consistent) {
      (void)e;
      if (pr >= threshold) return true;
    }
    return false;
  }
  // Larger instances: only nonzero-probability errors are reachable, which is
  // enough whenever the threshold is positive.
  if (threshold <= ExactRational(0)) return true;
  auto sup = support_restricted_enumerate(inst, caps);
  if (sup.inconclusive)
    throw ResourceCapError("support-restricted search budget exhausted");
  for (const auto& [e, pr] : sup.errors) {
    (void)e;
    if (pr >= threshold) return true;
  }
  return false;
}

DecodeResult qmld_from_decision(const DecodingInstance& inst, const QmldDecisionOracle& oracle,
                                uint64_t* oracle_calls) {
  uint64_t calls = 0;
  auto ask = [&](const DecodingInstance& i, const ExactRational& t) {
    ++calls;
    return oracle(i, t);
  };

  // Common denominator of every achievable error probability.
  mpz_class b = 1;
  for (const auto& [q, qn] : inst.noise.qubits) {
    (void)q;
    mpz_class d = qn.pX.denominator();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.pY.denominator().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.pZ.denominator().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.p_identity().denominator().get_mpz_t());
    b *= d;
  }

  if (!ask(inst, ExactRational(0)))
    throw std::logic_error("qmld_from_decision: oracle rejects threshold 0");

  // Step 1: binary search the maximum probability a/b.
  mpz_class lo = 0, hi = b;
  while (lo < hi) {
    mpz_class mid = (lo + hi + 1) / 2;
    if (ask(inst, ExactRational(mid, b)))
      lo = mid;
    else
      hi = mid - 1;
  }
  const ExactRational max_prob{lo, b};

  // Step 2: extract an argmax error qubit-by-qubit by pinning letters and
  // rescaling the threshold.
  DecodingInstance work = inst;
  ExactRational t = max_prob;
  PauliOperator error(inst.layout.num_qubits());
  std::vector<uint32_t> support;
  for (const auto& [q, qn] : inst.noise.qubits) {
    (void)qn;
    support.push_back(q);
  }
  static const Letter kLetters[3] = {Letter::X, Letter::Y, Letter::Z};
  for (uint32_t q : support) {
    const QubitNoise qn = work.noise.qubits.at(q);
    bool pinned = false;
    for (int li = 0; li < 4 && !pinned; ++li) {
      ExactRational pl = li == 0 ? qn.p_identity() : qn.prob(kLetters[li - 1]);
      if (pl.is_zero()) continue;
      DecodingInstance trial = work;
      trial.noise.qubits.erase(q);
      if (li != 0) {
        PauliOperator single(inst.layout.num_qubits());
        single.set(q, kLetters[li - 1]);
        for (uint32_t g : syndrome_of(inst.layout, single)) {
          if (trial.syndrome.count(g))
            trial.syndrome.erase(g);
          else
            trial.syndrome.insert(g);
        }
      }
      ExactRational scaled = t / pl;
      if (ask(trial, scaled)) {
        work = std::move(trial);
        t = scaled;
        if (li != 0) error.set(q, kLetters[li - 1]);
        pinned = true;
      }
    }
    if (!pinned)
      throw std::logic_error("qmld_from_decision: no letter passes at qubit " +
                             std::to_string(q) + " (inconsistent oracle)");
  }
  if (oracle_calls) *oracle_calls = calls;
  DecodeResult res;
  res.error = std::move(error);
  res.probability = max_prob;
  res.zero_probability_fallback = max_prob.is_zero();
  return res;
}

bool decision_dqmld(const DecodingInstance& inst, const PauliOperator& e, const CapProfile& caps) {
  if (syndrome_of(inst.layout, e) != inst.syndrome)
    throw std::invalid_argument("decision_dqmld: error inconsistent with the syndrome");
  auto consistent = all_consistent(inst, caps);
  const PauliOperator& ref = canonical_reference(consistent);
  std::array<ExactRational, 4> mass{};
  for (const auto& [c, pr] : consistent)
    mass[static_cast<size_t>(logical_class(inst.layout, ref, c))] += pr;
  ExactRational best = mass[0];
  for (size_t c = 1; c < 4; ++c)
    if (mass[c] > best) best = mass[c];
  return mass[static_cast<size_t>(logical_class(inst.layout, ref, e))] == best;
}

ExactRational acceptance_probability(const DecodingInstance& inst, const PauliOperator& e,
                                     const CapProfile& caps) {
  if (syndrome_of(inst.layout, e) != inst.syndrome)
    throw std::invalid_argument("acceptance_probability: error inconsistent with the syndrome");
  auto consistent = all_consistent(inst, caps);
  ExactRational coset, total;
  for (const auto& [c, pr] : consistent) {
    total += pr;
    if (logical_class(inst.layout, e, c) == LogicalClass::I) coset += pr;
  }
  // Everything else is inconsistent mass; the noise model normalizes to 1.
  return coset + (ExactRational(1) - total) / ExactRational(2);
}

}  // namespace qdlab
