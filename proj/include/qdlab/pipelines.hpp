#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdlab/compiler.hpp"
#include "qdlab/decoders.hpp"
#include "qdlab/formula.hpp"

namespace qdlab {

// Any decoder with this shape can drive the pipelines; the structured
// decoders are the reference implementations.
using CompiledOracle = std::function<DecodeResult(const CompiledInstance&)>;

struct PipelineReport {
  std::string pipeline;
  std::string expression;
  int num_vars = 0;
  std::string verdict;  // SAT / UNSAT / MAJORITY-SAT / MAJORITY-UNSAT / TIE / OK / FAIL
  std::optional<uint64_t> count;
  uint64_t oracle_calls = 0;
  bool ok = true;
  std::vector<std::string> transcript;             // human-readable, one line each
  std::vector<std::pair<std::string, std::string>> facts;  // machine-readable section

  std::string to_text() const;
};

// Compile in QMLD mode, decode once, read the answer off the output qubit.
PipelineReport solve_sat(const Formula& f, const CompiledOracle& decoder = structured_qmld,
                         const ExactRational& p = ExactRational(1, 4));

// Binary search on the unsatisfying count b with dyadic pivots
// r = mid/2^n + 1/2^(n+1); each round compiles DQMLD(r) and asks whether the
// satisfying class wins (equivalent to r > b/2^n).  At most n+1 rounds.
PipelineReport count_sat(const Formula& f, const CompiledOracle& decoder = structured_dqmld,
                         const ExactRational& p = ExactRational(1, 4));

// Compile DQMLD_MAJORITY and report which class carries more mass; an exact
// tie is a distinct outcome.
PipelineReport majority_sat(const Formula& f, const CompiledOracle& decoder = structured_dqmld,
                            const ExactRational& p = ExactRational(1, 4));

// Exact approximation-resilience checks: in QMLD_APPROX(p, M) and
// QMLD_UNIFORM(p, M) the minimum satisfying-witness probability must exceed
// M times the maximum unsatisfying-witness probability, and an M-approximate
// DQMLD coset mass localizes the satisfying count to a factor-M^2 interval.
PipelineReport approx_separation_report(const Formula& f, const ExactRational& M,
                                        const ExactRational& p = ExactRational(1, 4));

}  // namespace qdlab
