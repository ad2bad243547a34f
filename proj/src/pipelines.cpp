#include "qdlab/pipelines.hpp"

#include <sstream>

namespace qdlab {

std::string PipelineReport::to_text() const {
  std::ostringstream out;
  out << "pipeline " << pipeline << "\n";
  out << "expression " << expression << "\n";
  for (const auto& line : transcript) out << "  " << line << "\n";
  out << "verdict " << verdict << "\n";
  if (count) out << "count " << *count << "\n";
  out << "oracle-calls " << oracle_calls << "\n";
  out << "machine-readable\n";
  out << "  pipeline=" << pipeline << "\n";
  out << "  verdict=" << verdict << "\n";
  out << "  ok=" << (ok ? 1 : 0) << "\n";
  if (count) out << "  count=" << *count << "\n";
  out << "  oracle_calls=" << oracle_calls << "\n";
  for (const auto& [k, v] : facts) out << "  " << k << "=" << v << "\n";
  return out.str();
}

PipelineReport solve_sat(const Formula& f, const CompiledOracle& decoder, const ExactRational& p) {
  PipelineReport rep;
  rep.pipeline = "solve-sat";
  CompileMode mode;
  mode.tag = CompileMode::Tag::QMLD;
  mode.p = p;
  CompiledInstance inst = compile_formula(f, mode);
  rep.expression = inst.expression;
  rep.num_vars = inst.num_vars;
  rep.transcript.push_back("compiled qmld instance " + std::to_string(inst.layout.w) + "x" +
                           std::to_string(inst.layout.h));
  DecodeResult res = decoder(inst);
  rep.oracle_calls = 1;
  bool sat = output_value(inst, res.error);
  rep.verdict = sat ? "SAT" : "UNSAT";
  rep.transcript.push_back(std::string("decoded error carries output letter: ") +
                           (sat ? "yes" : "no"));
  rep.facts.emplace_back("probability", res.probability.to_string());
  if (res.assignment) rep.facts.emplace_back("assignment", std::to_string(*res.assignment));
  return rep;
}

PipelineReport count_sat(const Formula& f, const CompiledOracle& decoder, const ExactRational& p) {
  PipelineReport rep;
  rep.pipeline = "count-sat";
  rep.expression = f.to_expression();
  const int n = f.num_vars;
  rep.num_vars = n;
  const uint64_t total = 1ull << n;

  // Invariant: blo <= b <= bhi for the true unsatisfying count b.  Pivot
  // r = mid/2^n + 1/2^(n+1) is never a tie point, and the satisfying class
  // wins exactly when b <= mid.
  uint64_t blo = 0, bhi = total;
  while (blo < bhi) {
    uint64_t mid = (blo + bhi) / 2;
    CompileMode mode;
    mode.tag = CompileMode::Tag::DQMLD;
    mode.p = p;
    mode.r = ExactRational(static_cast<long>(2 * mid + 1),
                           static_cast<unsigned long>(2 * total));
    CompiledInstance inst = compile_formula(f, mode);
    DecodeResult res = decoder(inst);
    ++rep.oracle_calls;
    if (res.tie) {
      rep.verdict = "FAIL";
      rep.ok = false;
      rep.transcript.push_back("unexpected tie at r=" + mode.r.to_string());
      return rep;
    }
    bool sat_wins = output_value(inst, res.error);
    rep.transcript.push_back("round " + std::to_string(rep.oracle_calls) + ": r=" +
                             mode.r.to_string() + " -> " +
                             (sat_wins ? "satisfying" : "unsatisfying") + " class");
    if (sat_wins)
      bhi = mid;
    else
      blo = mid + 1;
  }
  rep.count = total - blo;
  rep.verdict = *rep.count > 0 ? "SAT" : "UNSAT";
  rep.facts.emplace_back("unsat_count", std::to_string(blo));
  return rep;
}

PipelineReport majority_sat(const Formula& f, const CompiledOracle& decoder,
                            const ExactRational& p) {
  PipelineReport rep;
  rep.pipeline = "majority-sat";
  CompileMode mode;
  mode.tag = CompileMode::Tag::DQMLD_MAJORITY;
  mode.p = p;
  CompiledInstance inst = compile_formula(f, mode);
  rep.expression = inst.expression;
  rep.num_vars = inst.num_vars;
  DecodeResult res = decoder(inst);
  rep.oracle_calls = 1;
  if (res.tie) {
    rep.verdict = "TIE";
    rep.transcript.push_back("satisfying and unsatisfying masses are exactly equal");
  } else {
    bool sat = output_value(inst, res.error);
    rep.verdict = sat ? "MAJORITY-SAT" : "MAJORITY-UNSAT";
  }
  rep.facts.emplace_back("winning_mass", res.probability.to_string());
  return rep;
}

PipelineReport approx_separation_report(const Formula& f, const ExactRational& M,
                                        const ExactRational& p) {
  PipelineReport rep;
  rep.pipeline = "approx-separation";
  rep.expression = f.to_expression();
  rep.verdict = "OK";

  auto witness_extremes = [&](const CompiledInstance& inst, ExactRational& min_sat,
                              ExactRational& max_unsat, bool& any_sat, bool& any_unsat) {
    const uint32_t count = 1u << inst.num_vars;
    any_sat = any_unsat = false;
    for (uint32_t mask = 0; mask < count; ++mask) {
      ExactRational pr = inst.noise.probability_of(assignment_witness(inst, mask));
      if (inst.circuit.simulate(mask)) {
        if (!any_sat || pr < min_sat) min_sat = pr;
        any_sat = true;
      } else {
        if (!any_unsat || pr > max_unsat) max_unsat = pr;
        any_unsat = true;
      }
    }
  };

  for (auto tag : {CompileMode::Tag::QMLD_APPROX, CompileMode::Tag::QMLD_UNIFORM}) {
    CompileMode mode;
    mode.tag = tag;
    mode.p = p;
    mode.M = M;
    CompiledInstance inst = compile_formula(f, mode);
    rep.num_vars = inst.num_vars;
    ExactRational min_sat, max_unsat;
    bool any_sat = false, any_unsat = false;
    witness_extremes(inst, min_sat, max_unsat, any_sat, any_unsat);
    bool holds = !any_sat || !any_unsat || min_sat > M * max_unsat;
    rep.transcript.push_back(mode.tag_name() + ": min-sat > M * max-unsat " +
                             (holds ? "holds" : "FAILS") +
                             (any_sat && any_unsat ? "" : " (vacuous)"));
    rep.facts.emplace_back(mode.tag_name() + "_separation", holds ? "1" : "0");
    if (any_sat) rep.facts.emplace_back(mode.tag_name() + "_min_sat", min_sat.to_string());
    if (any_unsat) rep.facts.emplace_back(mode.tag_name() + "_max_unsat", max_unsat.to_string());
    if (!holds) {
      rep.ok = false;
      rep.verdict = "FAIL";
    }
  }

  // DQMLD count localization: the satisfying coset mass is a * q * r with a
  // the satisfying count, so any value within a factor M of it pins a to the
  // interval [a/M, a*M].
  {
    CompileMode mode;
    mode.tag = CompileMode::Tag::DQMLD;
    mode.p = p;
    mode.r = ExactRational(1, 2);
    CompiledInstance inst = compile_formula(f, mode);
    DecodeResult res = structured_dqmld(inst);
    uint64_t a = 0;
    const uint32_t count = 1u << inst.num_vars;
    for (uint32_t mask = 0; mask < count; ++mask)
      if (inst.circuit.simulate(mask)) ++a;
    // q * r: every witness shares the same probability at r = 1/2.
    ExactRational qr = inst.noise.probability_of(assignment_witness(inst, 0));
    ExactRational sat_mass;
    for (uint32_t mask = 0; mask < count; ++mask)
      if (inst.circuit.simulate(mask))
        sat_mass += inst.noise.probability_of(assignment_witness(inst, mask));
    bool exact = sat_mass == ExactRational(static_cast<long>(a)) * qr;
    ExactRational lo = sat_mass / (M * qr), hi = sat_mass * M / qr;
    bool localized = exact && lo <= ExactRational(static_cast<long>(a)) &&
                     ExactRational(static_cast<long>(a)) <= hi;
    rep.transcript.push_back(std::string("dqmld: M-approximate coset mass localizes the count: ") +
                             (localized ? "yes" : "NO"));
    rep.facts.emplace_back("dqmld_count", std::to_string(a));
    rep.facts.emplace_back("dqmld_interval_lo", lo.to_string());
    rep.facts.emplace_back("dqmld_interval_hi", hi.to_string());
    rep.facts.emplace_back("dqmld_chosen_class", std::string(1, logical_class_char(res.chosen)));
    if (!localized) {
      rep.ok = false;
      rep.verdict = "FAIL";
    }
  }
  return rep;
}

}  // namespace qdlab
