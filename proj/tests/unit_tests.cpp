#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qdlab/compiler.hpp"
#include "qdlab/decoders.hpp"
#include "qdlab/enumerate.hpp"
#include "qdlab/gadget.hpp"
#include "qdlab/instance_io.hpp"
#include "qdlab/pipelines.hpp"

using namespace qdlab;

TEST_CASE("rational: parsing, arithmetic, canonical form") {
  CHECK(ExactRational::parse("3/12") == ExactRational(1, 4));
  CHECK(ExactRational::parse("7") == ExactRational(7));
  CHECK(ExactRational(1, 3) + ExactRational(1, 6) == ExactRational(1, 2));
  CHECK(ExactRational(2, 3).pow(3) == ExactRational(8, 27));
  CHECK(ExactRational(1, 2).to_string() == "1/2");
  CHECK(ExactRational(4).to_string() == "4/1");
  CHECK_THROWS_AS(ExactRational(1, 2) / ExactRational(0), std::invalid_argument);
  CHECK_THROWS_AS((void)ExactRational(1, 0ul), std::invalid_argument);
  CHECK(ExactRational(-2, 4) < ExactRational(0));
}

TEST_CASE("pauli: symplectic products and text form") {
  PauliOperator a(5), b(5);
  a.set(0, Letter::X);
  a.set(3, Letter::Y);
  b.set(0, Letter::Z);
  b.set(3, Letter::Y);
  CHECK_FALSE(a.commutes_with(b));  // X0Z0 anticommute, Y3Y3 commute
  PauliOperator ab = a.multiply(b);
  bool present = false;
  CHECK(ab.letter_at(0, &present) == Letter::Y);
  CHECK(present);
  ab.letter_at(3, &present);
  CHECK_FALSE(present);  // Y*Y cancels
  CHECK(PauliOperator::parse("X0 Y3 Z4", 5).to_string() == "X0 Y3 Z4");
  PauliOperator c(3);
  c.xor_letter(1, Letter::X);
  c.xor_letter(1, Letter::Z);
  CHECK(c.letter_at(1, &present) == Letter::Y);
}

TEST_CASE("lattice: generator census and logical operators") {
  for (uint32_t w = 2; w <= 4; ++w)
    for (uint32_t h = 2; h <= 4; ++h) {
      RotatedLayout lay = build_rotated_layout(w, h);
      CHECK(lay.generators.size() == w * h - 1);
      for (const auto& g : lay.generators) {
        PauliOperator pg(w * h);
        for (uint32_t q : g.qubits) pg.set(q, g.kind == StabKind::X ? Letter::X : Letter::Z);
        CHECK(pg.commutes_with(lay.logical_x));
        CHECK(pg.commutes_with(lay.logical_z));
      }
      CHECK_FALSE(lay.logical_x.commutes_with(lay.logical_z));
    }
  RotatedLayout lay = build_rotated_layout(3, 3);
  PauliOperator e(9);
  e.set(4, Letter::X);  // bulk qubit: exactly the adjacent Z plaquettes flip
  for (uint32_t gi : syndrome_of(lay, e)) CHECK(lay.generators[gi].kind == StabKind::Z);
  CHECK(logical_class(lay, lay.logical_x, PauliOperator(9)) == LogicalClass::X);
  CHECK(enumerate_stabilizer_group(build_rotated_layout(2, 2)).size() == 8);
}

TEST_CASE("noise: validation and probabilities") {
  NoiseModel nm;
  nm.num_qubits = 2;
  nm.qubits[0] = QubitNoise{ExactRational(1, 2), ExactRational(1, 4), ExactRational(1, 4)};
  CHECK_NOTHROW(nm.validate());
  CHECK(nm.qubits[0].p_identity() == ExactRational(0));
  nm.qubits[1] = QubitNoise{ExactRational(3, 4), ExactRational(1, 2), ExactRational(0)};
  CHECK_THROWS_AS(nm.validate(), std::invalid_argument);
  nm.qubits.erase(1);
  PauliOperator e(2);
  e.set(0, Letter::X);
  CHECK(nm.probability_of(e) == ExactRational(1, 2));
  e.set(1, Letter::Z);  // qubit without noise: zero probability
  CHECK(nm.probability_of(e).is_zero());
  CHECK(nm.allowed_letters(0).size() == 3);
}

TEST_CASE("formula: parsing, OR elimination, planar circuits") {
  Formula f = parse_expression("((x1|x2)&!x3)");
  CHECK(f.num_vars == 3);
  CHECK(brute_force_count(f) == 3);
  Formula g = eliminate_or(f);
  CHECK_FALSE(g.has_or());
  for (uint32_t mask = 0; mask < 8; ++mask) CHECK(f.evaluate(mask) == g.evaluate(mask));
  PlanarCircuit c = to_planar_circuit(g);
  for (uint32_t mask = 0; mask < 8; ++mask) CHECK(c.simulate(mask) == g.evaluate(mask));
  CHECK_THROWS_AS(parse_expression("x1 &"), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("(x1&x2"), std::invalid_argument);
  Formula d = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 0\n");
  CHECK(d.num_vars == 3);
  CHECK(brute_force_count(d) == 4);
}

TEST_CASE("enumerate: parity backtracking honors budgets") {
  std::map<uint32_t, std::vector<Letter>> domains;
  for (uint32_t q = 0; q < 3; ++q) domains[q] = {Letter::X};
  SupportEnumerator en(3, domains);
  CHECK(en.add_constraint(StabKind::Z, 1, {0, 1}));
  CHECK(en.add_constraint(StabKind::Z, 0, {1, 2}));
  auto sols = en.collect();
  CHECK(sols.size() == 2);  // X0 and X0 X1 X2
  SupportEnumerator tight(3, domains);
  CHECK(tight.add_constraint(StabKind::Z, 1, {0, 1}));
  auto stats = tight.enumerate([](const PauliOperator&) {}, 4000, 2);
  CHECK(stats.budget_exhausted);
  CHECK_THROWS_AS(tight.enumerate([](const PauliOperator&) {}, 1, 100),
                  std::length_error);
}

TEST_CASE("gadget: template loading and witness verification") {
  CHECK_THROWS_AS(make_template("NO_SUCH", {}, default_gadget_dir()), std::invalid_argument);
  CHECK_THROWS_AS(make_fanout_shape(4, 11, {3}), std::invalid_argument);   // even column
  CHECK_THROWS_AS(make_fanout_shape(7, 8, {3}), std::invalid_argument);    // even column
  CHECK_THROWS_AS(make_fanout_shape(7, 9, {7}), std::invalid_argument);    // duplicate
  GadgetTemplate t = make_template("NOT", {}, default_gadget_dir());
  CHECK(t.input_ports().size() == 1);
  CHECK(t.output_ports().size() == 1);
  CHECK_THROWS_AS(t.witness_for("11"), std::invalid_argument);
  VerificationReport r = verify_gadget(t);
  CHECK(r.match);
  CHECK(r.enumerated == 2);
  // Tampering with the witness table must be detected.
  GadgetTemplate bad = t;
  bad.witnesses.pop_back();
  CHECK_FALSE(verify_gadget(bad).match);
}

TEST_CASE("compiler: mode validation") {
  CompileMode m;
  m.p = ExactRational(1, 2);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.p = ExactRational(1, 4);
  m.M = ExactRational(4);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);  // M without approx mode
  m.tag = CompileMode::Tag::QMLD_APPROX;
  CHECK_NOTHROW(m.validate());
  m.M.reset();
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);  // approx without M
  m.tag = CompileMode::Tag::DQMLD;
  m.M.reset();
  m.r = ExactRational(1);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  CHECK(CompileMode::tag_from_name("dqmld-majority") == CompileMode::Tag::DQMLD_MAJORITY);
  CHECK_THROWS_AS(CompileMode::tag_from_name("nope"), std::invalid_argument);
}

TEST_CASE("compiler: witnesses realize the circuit on the lattice") {
  for (const char* expr : {"x1", "!x1", "(x1&x2)", "(!x1&!(x2&x1))"}) {
    CompileMode m;
    CompiledInstance inst = compile_formula(parse_expression(expr), m);
    for (uint32_t mask = 0; mask < (1u << inst.num_vars); ++mask) {
      PauliOperator e = assignment_witness(inst, mask);
      CHECK(syndrome_of(inst.layout, e) == inst.syndrome);
      CHECK(output_value(inst, e) == inst.circuit.simulate(mask));
      CHECK_FALSE(inst.noise.probability_of(e).is_zero());
    }
    SeparationBounds b = separation_bounds(inst);
    CHECK(b.sat_lower > b.unsat_upper);
  }
}

TEST_CASE("compiler: coset relation tracks output agreement") {
  CompileMode m;
  CompiledInstance inst = compile_formula(parse_expression("(x1|!x2)"), m);
  for (uint32_t a = 0; a < 4; ++a)
    for (uint32_t b = 0; b < 4; ++b) {
      LogicalClass lc = coset_relation(inst, a, b);
      bool same = inst.circuit.simulate(a) == inst.circuit.simulate(b);
      CHECK(lc == (same ? LogicalClass::I : LogicalClass::X));
    }
}

TEST_CASE("compiler: renderers produce plausible output") {
  CompileMode m;
  CompiledInstance inst = compile_formula(parse_expression("!x1"), m);
  std::string art = render_ascii(inst);
  CHECK(art.find('X') != std::string::npos);
  CHECK(art.find('S') != std::string::npos);  // the rigged output qubit
  std::string svg = render_svg(inst);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

namespace {

DecodingInstance tiny_instance() {
  DecodingInstance inst;
  inst.layout = build_rotated_layout(2, 2);
  inst.noise.num_qubits = 4;
  inst.noise.qubits[0] = QubitNoise{ExactRational(1, 4), ExactRational(1, 8), ExactRational(1, 8)};
  inst.noise.qubits[2] = QubitNoise{ExactRational(1, 3), ExactRational(0), ExactRational(1, 3)};
  PauliOperator seed(4);
  seed.set(0, Letter::X);
  inst.syndrome = syndrome_of(inst.layout, seed);
  return inst;
}

}  // namespace

TEST_CASE("decoders: brute force agrees with support restriction") {
  DecodingInstance inst = tiny_instance();
  DecodeResult bf = brute_force_qmld(inst);
  SupportEnumeration sup = support_restricted_enumerate(inst);
  CHECK_FALSE(sup.inconclusive);
  ExactRational best;
  for (const auto& [e, pr] : sup.errors) {
    CHECK(syndrome_of(inst.layout, e) == inst.syndrome);
    if (pr > best) best = pr;
  }
  CHECK(bf.probability == best);
  CHECK(inst.noise.probability_of(bf.error) == bf.probability);
}

TEST_CASE("decoders: coset masses sum to the consistent total") {
  DecodingInstance inst = tiny_instance();
  DecodeResult dq = brute_force_dqmld(inst);
  ExactRational sum;
  for (const auto& m : dq.coset_probability) sum += m;
  CHECK(sum == dq.total_consistent_mass);
  CHECK(dq.coset_probability[static_cast<size_t>(dq.chosen)] == dq.probability);
  CHECK(decision_dqmld(inst, dq.error));
}

TEST_CASE("decoders: decision threshold equals compiled satisfiability") {
  CompileMode m;
  CompiledInstance sat = compile_formula(parse_expression("x1"), m);
  CompiledInstance unsat = compile_formula(parse_expression("(x1&!x1)"), m);
  CHECK(decision_qmld(decoding_view(sat), m.p.pow(static_cast<unsigned long>(sat.ell))));
  CHECK_FALSE(
      decision_qmld(decoding_view(unsat), m.p.pow(static_cast<unsigned long>(unsat.ell))));
}

TEST_CASE("decoders: caps refuse oversized instances") {
  DecodingInstance big;
  big.layout = build_rotated_layout(4, 4);
  big.noise.num_qubits = 16;
  CHECK_THROWS_AS(brute_force_qmld(big), ResourceCapError);
  CHECK_THROWS_AS(CapProfile::named("huge"), std::invalid_argument);
  CHECK(CapProfile::named("small").dense_max_qubits < CapProfile::named("large").dense_max_qubits);
}

TEST_CASE("decoders: all-zero noise recovers the identity from the oracle") {
  DecodingInstance inst;
  inst.layout = build_rotated_layout(2, 2);
  inst.noise.num_qubits = 4;
  uint64_t calls = 0;
  DecodeResult res = qmld_from_decision(
      inst, [](const DecodingInstance& i, const ExactRational& t) { return decision_qmld(i, t); },
      &calls);
  CHECK(res.error.to_string().empty());
  CHECK(res.probability == ExactRational(1));
  CHECK(calls >= 1);
}

TEST_CASE("pipelines: verdicts against truth tables") {
  PipelineReport s = solve_sat(parse_expression("(x1&!x1)"));
  CHECK(s.verdict == "UNSAT");
  PipelineReport c = count_sat(parse_expression("(x1|x2)"));
  REQUIRE(c.count.has_value());
  CHECK(*c.count == 3);
  CHECK(c.oracle_calls <= 3);
  PipelineReport mj = majority_sat(parse_expression("x1"));
  CHECK(mj.verdict == "TIE");
  PipelineReport mj2 = majority_sat(parse_expression("(x1|x2)"));
  CHECK(mj2.verdict == "MAJORITY-SAT");
  PipelineReport ap = approx_separation_report(parse_expression("(x1&x2)"), ExactRational(64));
  CHECK(ap.ok);
  CHECK(ap.to_text().find("machine-readable") != std::string::npos);
}

TEST_CASE("instance files: byte round trips and loud rejections") {
  CompileMode m;
  m.tag = CompileMode::Tag::DQMLD;
  m.r = ExactRational(3, 8);
  CompiledInstance inst = compile_formula(parse_expression("(x1&x2)"), m);
  std::string text = serialize_instance(inst);
  LoadedInstance loaded = parse_instance(text);
  REQUIRE(loaded.compiled.has_value());
  CHECK(serialize_instance(*loaded.compiled) == text);

  DecodingInstance raw = tiny_instance();
  std::string raw_text = serialize_instance(raw);
  LoadedInstance raw_loaded = parse_instance(raw_text);
  CHECK_FALSE(raw_loaded.compiled.has_value());
  CHECK(serialize_instance(raw_loaded.decoding) == raw_text);

  std::string bad = text;
  bad.replace(bad.find("qdlab-instance 1"), 16, "qdlab-instance 2");
  CHECK_THROWS_AS(parse_instance(bad), std::invalid_argument);
  std::string tampered = text;
  size_t pos = tampered.find("1/3");  // a per-qubit dqmld probability
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 3, "1/6");
  CHECK_THROWS_AS(parse_instance(tampered), VerificationError);
}
