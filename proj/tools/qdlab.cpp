// qdlab: compile boolean formulas into surface-code decoding instances and
// decode them exactly.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qdlab/decoders.hpp"
#include "qdlab/gadget.hpp"
#include "qdlab/instance_io.hpp"
#include "qdlab/pipelines.hpp"

namespace {

using namespace qdlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitVerification = 4;

Formula read_formula(const std::string& input, const std::string& expr) {
  if (!expr.empty()) return parse_expression(expr);
  if (input.empty()) throw std::invalid_argument("no input: give a file or --expr");
  std::string text = read_text_file(input);
  if (text.find("p cnf") != std::string::npos) return parse_dimacs(text);
  // Strip trailing whitespace for single-expression files.
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.pop_back();
  return parse_expression(text);
}

CompileMode make_mode(const std::string& mode_name, const std::string& p_text,
                      const std::string& r_text, const std::string& m_text) {
  CompileMode mode;
  mode.tag = CompileMode::tag_from_name(mode_name);
  mode.p = ExactRational::parse(p_text);
  mode.r = ExactRational::parse(r_text);
  if (!m_text.empty()) mode.M = ExactRational::parse(m_text);
  mode.validate();
  return mode;
}

void print_decode_result(const DecodeResult& res, bool dqmld) {
  std::cout << "error " << res.error.to_string() << "\n";
  if (dqmld) {
    static const char* cls = "IXYZ";
    ExactRational total;
    for (size_t c = 0; c < 4; ++c) {
      std::cout << "coset " << cls[c] << " " << res.coset_probability[c].to_string() << "\n";
      total += res.coset_probability[c];
    }
    std::cout << "coset-total " << total.to_string() << "\n";
    std::cout << "chosen " << logical_class_char(res.chosen) << (res.tie ? " (tie)" : "") << "\n";
  }
  std::cout << "probability " << res.probability.to_string() << "\n";
  if (res.zero_probability_fallback) std::cout << "note zero-probability fallback\n";
  if (res.assignment) std::cout << "assignment " << *res.assignment << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"surface-code reduction compiler and exact decoding laboratory"};
  app.require_subcommand(1);

  std::string input, expr, output, mode_name = "qmld";
  std::string p_text = "1/4", r_text = "1/2", m_text;
  std::string method = "structured", problem = "qmld", gadget_id, format = "ascii";

  auto add_formula_flags = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "formula file (DIMACS CNF or expression)");
    cmd->add_option("--expr", expr, "formula expression text");
    cmd->add_option("--p", p_text, "per-letter probability num/den in (0, 1/4]");
  };

  CLI::App* c_compile = app.add_subcommand("compile", "compile a formula to an instance file");
  add_formula_flags(c_compile);
  c_compile->add_option("--mode", mode_name, "qmld|qmld-approx|qmld-uniform|dqmld|dqmld-majority");
  c_compile->add_option("--r", r_text, "special-qubit probability for dqmld modes");
  c_compile->add_option("--M", m_text, "approximation factor for approx/uniform modes");
  c_compile->add_option("-o,--output", output, "instance file to write")->required();

  CLI::App* c_decode = app.add_subcommand("decode", "decode an instance file");
  c_decode->add_option("instance", input, "instance file")->required();
  c_decode->add_option("--method", method, "brute|support|structured");
  c_decode->add_option("--problem", problem, "qmld|dqmld");

  CLI::App* c_solve = app.add_subcommand("solve-sat", "decide satisfiability via one decode");
  add_formula_flags(c_solve);
  CLI::App* c_count = app.add_subcommand("count-sat", "count satisfying assignments");
  add_formula_flags(c_count);
  CLI::App* c_major = app.add_subcommand("majority", "majority-sat via one degenerate decode");
  add_formula_flags(c_major);
  CLI::App* c_approx = app.add_subcommand("approx", "approximation-resilience report");
  add_formula_flags(c_approx);
  c_approx->add_option("--M", m_text, "approximation factor")->required();

  CLI::App* c_verify = app.add_subcommand("verify-gadgets", "re-derive every gadget witness table");
  c_verify->add_option("--gadget", gadget_id, "verify a single template id");

  CLI::App* c_render = app.add_subcommand("render", "draw an instance file");
  c_render->add_option("instance", input, "instance file")->required();
  c_render->add_option("--format", format, "ascii|svg");
  c_render->add_option("-o,--output", output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (c_compile->parsed()) {
    Formula f = read_formula(input, expr);
    CompileMode mode = make_mode(mode_name, p_text, r_text, m_text);
    CompiledInstance inst = compile_formula(f, mode);
    write_text_file(output, serialize_instance(inst));
    std::cout << "w " << inst.layout.w << "\n"
              << "h " << inst.layout.h << "\n"
              << "ell " << inst.ell << "\n"
              << "support " << inst.noise.qubits.size() << "\n";
    return kExitOk;
  }

  if (c_decode->parsed()) {
    LoadedInstance loaded = parse_instance(read_text_file(input));
    const bool dq = problem == "dqmld";
    if (problem != "qmld" && problem != "dqmld")
      throw std::invalid_argument("unknown problem '" + problem + "'");
    DecodeResult res;
    if (method == "brute") {
      res = dq ? brute_force_dqmld(loaded.decoding) : brute_force_qmld(loaded.decoding);
    } else if (method == "support") {
      if (dq) throw std::invalid_argument("the support method answers qmld only");
      auto sup = support_restricted_enumerate(loaded.decoding);
      if (sup.inconclusive) throw ResourceCapError("support search budget exhausted");
      if (sup.errors.empty())
        throw std::invalid_argument("no nonzero-probability error matches the syndrome");
      for (const auto& [e, pr] : sup.errors)
        if (pr > res.probability || (pr == res.probability && (res.error.to_string().empty() || e < res.error))) {
          res.error = e;
          res.probability = pr;
        }
    } else if (method == "structured") {
      if (!loaded.compiled)
        throw std::invalid_argument("structured decoding needs a compiled instance file");
      res = dq ? structured_dqmld(*loaded.compiled) : structured_qmld(*loaded.compiled);
    } else {
      throw std::invalid_argument("unknown method '" + method + "'");
    }
    print_decode_result(res, dq);
    return kExitOk;
  }

  if (c_solve->parsed() || c_count->parsed() || c_major->parsed() || c_approx->parsed()) {
    Formula f = read_formula(input, expr);
    ExactRational p = ExactRational::parse(p_text);
    PipelineReport rep;
    if (c_solve->parsed())
      rep = solve_sat(f, structured_qmld, p);
    else if (c_count->parsed())
      rep = count_sat(f, structured_dqmld, p);
    else if (c_major->parsed())
      rep = majority_sat(f, structured_dqmld, p);
    else
      rep = approx_separation_report(f, ExactRational::parse(m_text), p);
    std::cout << rep.to_text();
    return rep.ok ? kExitOk : kExitVerification;
  }

  if (c_verify->parsed()) {
    std::vector<std::string> ids = gadget_id.empty()
                                       ? known_gadget_ids()
                                       : std::vector<std::string>{gadget_id};
    bool all_ok = true;
    for (const std::string& id : ids) {
      std::string upper = id;
      for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      GadgetTemplate t = make_template(upper, {}, default_gadget_dir());
      VerificationReport r = verify_gadget(t);
      std::cout << upper << " enumerated " << r.enumerated << " expected " << r.expected << " "
                << (r.inconclusive ? "inconclusive" : (r.match ? "ok" : "MISMATCH")) << "\n";
      all_ok = all_ok && r.match && !r.inconclusive;
      if (upper == "AND") {
        bool ex = verify_exclusions(t);
        std::cout << "AND exclusion analysis " << (ex ? "ok" : "MISMATCH") << "\n";
        all_ok = all_ok && ex;
      }
    }
    return all_ok ? kExitOk : kExitVerification;
  }

  if (c_render->parsed()) {
    LoadedInstance loaded = parse_instance(read_text_file(input));
    if (!loaded.compiled)
      throw std::invalid_argument("rendering needs a compiled instance file");
    if (format != "ascii" && format != "svg")
      throw std::invalid_argument("unknown format '" + format + "'");
    std::string art =
        format == "svg" ? render_svg(*loaded.compiled) : render_ascii(*loaded.compiled);
    if (output.empty())
      std::cout << art;
    else
      write_text_file(output, art);
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const VerificationError& e) {
    std::cerr << "verification mismatch: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
