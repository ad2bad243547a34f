// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure.  Every check is exact (rational arithmetic, set equality); nothing
// is sampled from a distribution.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qdlab/compiler.hpp"
#include "qdlab/decoders.hpp"
#include "qdlab/enumerate.hpp"
#include "qdlab/gadget.hpp"
#include "qdlab/instance_io.hpp"
#include "qdlab/pipelines.hpp"

using namespace qdlab;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, double seconds,
            const std::string& detail = "") {
  std::printf("%s  criterion %2d  %-38s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), seconds, detail.empty() ? "" : "  ", detail.c_str());
  if (!pass) ++g_failures;
}

template <typename Fn>
void run(int criterion, const std::string& what, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(criterion, what, pass, secs, detail);
}

// Deterministic random formula corpus.
std::string random_expr(std::mt19937& rng, int n, int depth) {
  std::uniform_int_distribution<int> var(1, n), op(0, 5);
  if (depth == 0 || op(rng) < 2) return "x" + std::to_string(var(rng));
  int o = op(rng);
  if (o < 3) return "!" + random_expr(rng, n, depth - 1);
  std::string a = random_expr(rng, n, depth - 1), b = random_expr(rng, n, depth - 1);
  return "(" + a + (o == 3 || o == 4 ? "&" : "|") + b + ")";
}

// Renumbers variables to close gaps (x5 alone becomes x1), since formulas
// must reference every variable up to their maximum index.
std::string renumber_vars(const std::string& expr) {
  std::map<int, int> remap;
  for (size_t i = 0; i < expr.size(); ++i)
    if (expr[i] == 'x') {
      size_t j = i + 1;
      while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
      remap[std::stoi(expr.substr(i + 1, j - i - 1))] = 0;
      i = j - 1;
    }
  int next = 1;
  for (auto& [v, to] : remap) to = next++;
  std::string out;
  for (size_t i = 0; i < expr.size(); ++i) {
    if (expr[i] != 'x') {
      out += expr[i];
      continue;
    }
    size_t j = i + 1;
    while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
    out += "x" + std::to_string(remap.at(std::stoi(expr.substr(i + 1, j - i - 1))));
    i = j - 1;
  }
  return out;
}

std::vector<std::string> make_corpus(size_t count, int max_vars, int depth, uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<std::string> out;
  std::uniform_int_distribution<int> nv(1, max_vars);
  while (out.size() < count) out.push_back(renumber_vars(random_expr(rng, nv(rng), depth)));
  return out;
}

const CompileMode kQmldQuarter = [] {
  CompileMode m;
  m.tag = CompileMode::Tag::QMLD;
  m.p = ExactRational(1, 4);
  return m;
}();

DecodingInstance random_tiny_instance(std::mt19937& rng, uint32_t w, uint32_t h) {
  DecodingInstance inst;
  inst.layout = build_rotated_layout(w, h);
  inst.noise.num_qubits = w * h;
  std::uniform_int_distribution<int> part(0, 4), coin(0, 2);
  for (uint32_t q = 0; q < w * h; ++q) {
    if (coin(rng) == 0) continue;
    long a = part(rng), b = part(rng), c = part(rng), d = part(rng) + 1;
    unsigned long total = static_cast<unsigned long>(a + b + c + d);
    inst.noise.qubits[q] = QubitNoise{ExactRational(a, total), ExactRational(b, total),
                                      ExactRational(c, total)};
  }
  inst.noise.validate();
  PauliOperator seed(w * h);
  std::uniform_int_distribution<int> letter(0, 3);
  for (uint32_t q = 0; q < w * h; ++q) {
    int l = letter(rng);
    if (l == 1) seed.set(q, Letter::X);
    if (l == 2) seed.set(q, Letter::Y);
    if (l == 3) seed.set(q, Letter::Z);
  }
  inst.syndrome = syndrome_of(inst.layout, seed);
  return inst;
}

bool criterion_gadgets(std::string& detail) {
  struct Want {
    const char* id;
    uint64_t count;
  };
  const Want wants[] = {{"VARIABLE", 2}, {"NOT", 2},          {"FANOUT", 2},
                        {"AND", 4},      {"CONVERT_X_TO_Z", 2}, {"CONVERT_Z_TO_X", 2},
                        {"CROSS_XZ", 4}, {"WIRE_X", 2},       {"WIRE_Z", 2}};
  for (const auto& w : wants) {
    GadgetTemplate t = make_template(w.id, {}, default_gadget_dir());
    VerificationReport r = verify_gadget(t);
    if (!r.match || r.inconclusive || r.enumerated != w.count) {
      detail = std::string(w.id) + " enumerated " + std::to_string(r.enumerated);
      return false;
    }
  }
  // FANOUT again at a wider width.
  VerificationReport wide = verify_gadget(make_template("FANOUT", {27}, default_gadget_dir()));
  if (!wide.match || wide.enumerated != 2) {
    detail = "wide FANOUT failed";
    return false;
  }
  if (!verify_exclusions(make_template("AND", {}, default_gadget_dir()))) {
    detail = "AND exclusion analysis failed";
    return false;
  }
  return true;
}

bool criterion_lattice(std::string& detail) {
  for (uint32_t w = 2; w <= 6; ++w)
    for (uint32_t h = 2; h <= 6; ++h) {
      RotatedLayout lay = build_rotated_layout(w, h);
      if (lay.generators.size() != w * h - 1) {
        detail = "generator count off at " + std::to_string(w) + "x" + std::to_string(h);
        return false;
      }
      std::vector<PauliOperator> gens;
      for (const auto& g : lay.generators) {
        PauliOperator pg(w * h);
        for (uint32_t q : g.qubits) pg.set(q, g.kind == StabKind::X ? Letter::X : Letter::Z);
        gens.push_back(pg);
      }
      for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
          if (!gens[i].commutes_with(gens[j])) {
            detail = "generators anticommute";
            return false;
          }
      for (const auto& pg : gens)
        if (!pg.commutes_with(lay.logical_x) || !pg.commutes_with(lay.logical_z)) {
          detail = "logical fails to commute with a generator";
          return false;
        }
      if (lay.logical_x.commutes_with(lay.logical_z)) {
        detail = "logicals commute";
        return false;
      }
    }
  return true;
}

bool criterion_normalization(std::string& detail) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> nq(1, 8), part(0, 6);
  for (int model = 0; model < 50; ++model) {
    uint32_t n = static_cast<uint32_t>(nq(rng));
    NoiseModel nm;
    nm.num_qubits = n;
    for (uint32_t q = 0; q < n; ++q) {
      long a = part(rng), b = part(rng), c = part(rng), d = part(rng) + 1;
      unsigned long total = static_cast<unsigned long>(a + b + c + d);
      nm.qubits[q] =
          QubitNoise{ExactRational(a, total), ExactRational(b, total), ExactRational(c, total)};
    }
    nm.validate();
    ExactRational sum;
    PauliOperator cur(n);
    std::function<void(uint32_t, ExactRational)> rec = [&](uint32_t q, ExactRational acc) {
      if (q == n) {
        sum += acc;
        return;
      }
      const QubitNoise& qn = nm.qubits.at(q);
      rec(q + 1, acc * qn.p_identity());
      for (Letter l : {Letter::X, Letter::Y, Letter::Z}) {
        cur.set(q, l);
        rec(q + 1, acc * qn.prob(l));
      }
      cur.clear(q);
    };
    rec(0, ExactRational(1));
    if (sum != ExactRational(1)) {
      detail = "model " + std::to_string(model) + " sums to " + sum.to_string();
      return false;
    }
  }
  return true;
}

bool criterion_separation(std::string& detail) {
  auto corpus = make_corpus(20, 4, 3, 21);
  for (const auto& expr : corpus) {
    CompiledInstance inst = compile_formula(parse_expression(expr), kQmldQuarter);
    ExactRational min_sat, max_unsat;
    bool any_sat = false, any_unsat = false;
    for (uint32_t mask = 0; mask < (1u << inst.num_vars); ++mask) {
      ExactRational pr = inst.noise.probability_of(assignment_witness(inst, mask));
      if (inst.circuit.simulate(mask)) {
        if (!any_sat || pr < min_sat) min_sat = pr;
        any_sat = true;
      } else {
        if (!any_unsat || pr > max_unsat) max_unsat = pr;
        any_unsat = true;
      }
    }
    if (any_sat && any_unsat && !(min_sat > max_unsat)) {
      detail = "witness separation fails on " + expr;
      return false;
    }
    SeparationBounds b = separation_bounds(inst);
    const auto ell = static_cast<unsigned long>(inst.ell);
    const ExactRational p = inst.mode.p;
    if (!(b.sat_lower > b.unsat_upper) ||
        b.sat_lower != (ExactRational(1) - p.pow(ell)) * p.pow(ell - 1) ||
        b.unsat_upper != p.pow(ell)) {
      detail = "symbolic bound fails on " + expr;
      return false;
    }
    if (any_sat && min_sat < b.sat_lower) {
      detail = "witness below the symbolic lower bound on " + expr;
      return false;
    }
    if (any_unsat && max_unsat > b.unsat_upper) {
      detail = "witness above the symbolic upper bound on " + expr;
      return false;
    }
  }
  return true;
}

bool criterion_enumeration(std::string& detail) {
  for (const char* expr : {"x1", "!x1", "(x1&x2)"}) {
    CompiledInstance inst = compile_formula(parse_expression(expr), kQmldQuarter);
    SupportEnumeration sup = support_restricted_enumerate(decoding_view(inst));
    if (sup.inconclusive) {
      detail = std::string("inconclusive on ") + expr;
      return false;
    }
    std::set<PauliOperator> found, want;
    for (const auto& [e, pr] : sup.errors) {
      if (pr.is_zero()) {
        detail = std::string("zero-probability error reported on ") + expr;
        return false;
      }
      found.insert(e);
    }
    for (uint32_t mask = 0; mask < (1u << inst.num_vars); ++mask)
      want.insert(assignment_witness(inst, mask));
    if (found != want || found.size() != (1u << inst.num_vars)) {
      detail = std::string("error set differs from the witness set on ") + expr;
      return false;
    }
  }
  return true;
}

bool criterion_solve_sat(std::string& detail) {
  std::vector<std::string> corpus = make_corpus(48, 4, 3, 33);
  corpus.push_back("((x1|x2)&((!x2|x3)&(!x1|!x3)))");
  corpus.push_back("(x1&!x1)");
  for (const auto& expr : corpus) {
    Formula f = parse_expression(expr);
    PipelineReport rep = solve_sat(f);
    bool truth = brute_force_count(f) > 0;
    if ((rep.verdict == "SAT") != truth) {
      detail = "mismatch on " + expr;
      return false;
    }
  }
  return true;
}

bool criterion_count_sat(std::string& detail) {
  auto corpus = make_corpus(30, 4, 3, 47);
  for (const auto& expr : corpus) {
    Formula f = parse_expression(expr);
    PipelineReport rep = count_sat(f);
    uint64_t truth = brute_force_count(f);
    if (!rep.count || *rep.count != truth) {
      detail = "count mismatch on " + expr;
      return false;
    }
    if (rep.oracle_calls > static_cast<uint64_t>(f.num_vars) + 1) {
      detail = "too many oracle calls on " + expr;
      return false;
    }
    // The decision flips exactly at r = b/2^n: probe both sides.
    const uint64_t total = 1ull << f.num_vars;
    const uint64_t b = total - truth;
    auto sat_wins_at = [&](const ExactRational& r) {
      CompileMode m;
      m.tag = CompileMode::Tag::DQMLD;
      m.r = r;
      CompiledInstance inst = compile_formula(f, m);
      DecodeResult res = structured_dqmld(inst);
      return output_value(inst, res.error);
    };
    const ExactRational pivot(static_cast<long>(b), static_cast<unsigned long>(total));
    const ExactRational eps(1, static_cast<unsigned long>(4 * total));
    if (b < total && !sat_wins_at(pivot + eps)) {
      detail = "no flip above b/2^n on " + expr;
      return false;
    }
    if (b > 0 && sat_wins_at(pivot - eps)) {
      detail = "no flip below b/2^n on " + expr;
      return false;
    }
  }
  return true;
}

bool criterion_cosets(std::string& detail) {
  auto corpus = make_corpus(12, 3, 3, 55);
  corpus.push_back("((x1|x2)&!x3)");
  for (const auto& expr : corpus) {
    CompiledInstance inst = compile_formula(parse_expression(expr), kQmldQuarter);
    for (uint32_t a = 0; a < (1u << inst.num_vars); ++a)
      for (uint32_t b = 0; b < (1u << inst.num_vars); ++b) {
        LogicalClass lc = coset_relation(inst, a, b);
        bool same = inst.circuit.simulate(a) == inst.circuit.simulate(b);
        if (lc != (same ? LogicalClass::I : LogicalClass::X)) {
          detail = "unexpected class on " + expr;
          return false;
        }
      }
  }
  return true;
}

bool criterion_approx(std::string& detail) {
  Formula f = parse_expression("(x1&x2)");
  CompiledInstance base = compile_formula(f, kQmldQuarter);
  mpz_class big = 1;
  mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(base.ell));
  const ExactRational M(big, mpz_class(1));
  CompileMode approx;
  approx.tag = CompileMode::Tag::QMLD_APPROX;
  approx.M = M;
  SeparationBounds ab = separation_bounds(compile_formula(f, approx));
  if (!(ab.sat_lower > M * ab.unsat_upper)) {
    detail = "approx separation fails at M = 2^ell";
    return false;
  }
  for (long den : {4L, 8L}) {
    CompileMode uni;
    uni.tag = CompileMode::Tag::QMLD_UNIFORM;
    uni.p = ExactRational(1, static_cast<unsigned long>(den));
    CompiledInstance inst = compile_formula(f, uni);
    const auto ell = static_cast<unsigned long>(inst.ell);
    if (inst.extension_length != 2 * inst.ell) {
      detail = "uniform extension length is not 2*ell";
      return false;
    }
    SeparationBounds ub = separation_bounds(inst);
    const ExactRational p = uni.p;
    if (ub.sat_lower != p.pow(ell) * (ExactRational(1) - p).pow(2 * ell) ||
        ub.unsat_upper != p.pow(2 * ell) || !(ub.sat_lower > ub.unsat_upper)) {
      detail = "uniform bound fails at p = 1/" + std::to_string(den);
      return false;
    }
  }
  return true;
}

bool criterion_decision(std::string& detail) {
  std::mt19937 rng(91);
  auto oracle = [](const DecodingInstance& i, const ExactRational& t) {
    return decision_qmld(i, t);
  };
  for (int trial = 0; trial < 25; ++trial) {
    uint32_t side = trial % 2 ? 3 : 2;
    DecodingInstance inst = random_tiny_instance(rng, side, side);
    DecodeResult bf = brute_force_qmld(inst);
    uint64_t calls = 0;
    DecodeResult fd = qmld_from_decision(inst, oracle, &calls);
    if (fd.probability != bf.probability) {
      detail = "probability mismatch on trial " + std::to_string(trial);
      return false;
    }
    if (!fd.zero_probability_fallback &&
        inst.noise.probability_of(fd.error) != fd.probability) {
      detail = "recovered error has the wrong probability";
      return false;
    }
    mpz_class b = 1;
    for (const auto& [q, qn] : inst.noise.qubits) {
      (void)q;
      mpz_class d = qn.pX.denominator();
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.pY.denominator().get_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.pZ.denominator().get_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qn.p_identity().denominator().get_mpz_t());
      b *= d;
    }
    uint64_t bound = mpz_sizeinbase(b.get_mpz_t(), 2) + 2 + 4 * inst.noise.qubits.size();
    if (calls > bound) {
      detail = "oracle call count " + std::to_string(calls) + " exceeds the bound " +
               std::to_string(bound);
      return false;
    }

    // Degenerate decision + acceptance probability over the four shifts.
    DecodeResult dq = brute_force_dqmld(inst);
    std::vector<PauliOperator> shifts = {
        dq.error, dq.error.multiply(inst.layout.logical_x),
        dq.error.multiply(inst.layout.logical_z),
        dq.error.multiply(inst.layout.logical_x).multiply(inst.layout.logical_z)};
    // Independent coset masses from the nonzero-probability consistent set.
    SupportEnumeration sup = support_restricted_enumerate(inst);
    if (sup.inconclusive) {
      detail = "support enumeration inconclusive";
      return false;
    }
    std::vector<ExactRational> mass(4), acc(4);
    for (int i = 0; i < 4; ++i) {
      for (const auto& [e, pr] : sup.errors)
        if (logical_class(inst.layout, shifts[i], e) == LogicalClass::I) mass[i] += pr;
      acc[i] = acceptance_probability(inst, shifts[i]);
    }
    ExactRational best = mass[0];
    for (int i = 1; i < 4; ++i)
      if (mass[i] > best) best = mass[i];
    for (int i = 0; i < 4; ++i) {
      if (decision_dqmld(inst, shifts[i]) != (mass[i] == best)) {
        detail = "decision_dqmld accepts a non-argmax class on trial " + std::to_string(trial);
        return false;
      }
      for (int j = 0; j < 4; ++j)
        if ((acc[i] < acc[j]) != (mass[i] < mass[j])) {
          detail = "acceptance ordering differs from coset ordering";
          return false;
        }
    }
    if (!decision_dqmld(inst, dq.error)) {
      detail = "brute-force argmax rejected on trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool criterion_serialization(std::string& detail) {
  auto corpus = make_corpus(10, 3, 3, 77);
  for (const auto& expr : corpus) {
    Formula f = parse_expression(expr);
    for (auto tag : {CompileMode::Tag::QMLD, CompileMode::Tag::DQMLD}) {
      CompileMode m;
      m.tag = tag;
      std::string first = serialize_instance(compile_formula(f, m));
      std::string second = serialize_instance(compile_formula(f, m));
      if (first != second) {
        detail = "nondeterministic compilation on " + expr;
        return false;
      }
      LoadedInstance loaded = parse_instance(first);
      if (!loaded.compiled || serialize_instance(*loaded.compiled) != first) {
        detail = "round trip differs on " + expr;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  run(1, "gadget case analysis", criterion_gadgets);
  run(2, "lattice invariants", criterion_lattice);
  run(3, "probability normalization", criterion_normalization);
  run(4, "witness probability separation", criterion_separation);
  run(5, "exactly 2^n consistent errors", criterion_enumeration);
  run(6, "SAT round-trip", criterion_solve_sat);
  run(7, "#SAT round-trip with flip probes", criterion_count_sat);
  run(8, "coset structure of witness pairs", criterion_cosets);
  run(9, "approximation separations", criterion_approx);
  run(10, "decision-problem equivalences", criterion_decision);
  run(11, "determinism and serialization", criterion_serialization);
  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures ? 1 : 0;
}
