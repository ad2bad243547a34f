#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdlab/compiler.hpp"
#include "qdlab/lattice.hpp"
#include "qdlab/noise.hpp"
#include "qdlab/pauli.hpp"
#include "qdlab/rational.hpp"

namespace qdlab {

// The bare decoding problem: lattice, noise, target syndrome.
struct DecodingInstance {
  RotatedLayout layout;
  NoiseModel noise;
  std::set<uint32_t> syndrome;  // indices of -1 generators
};

DecodingInstance decoding_view(const CompiledInstance& inst);

// Thrown when an instance exceeds the active resource caps (CLI exit code 3).
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource caps.  Selected once per process through the QDLAB_CAP_PROFILE
// environment variable ("small", "default", "large"); everything else is
// flag-driven.
struct CapProfile {
  uint32_t dense_max_qubits = 12;         // brute-force 4^n enumeration
  uint32_t stabilizer_max_generators = 16;  // stabilizer-group expansion
  uint32_t support_max_qubits = 1000;     // support-restricted backtracking
  uint64_t node_budget = 50'000'000;

  static CapProfile named(const std::string& name);  // throws on unknown name
  static CapProfile active();                        // from the environment
};

struct DecodeResult {
  PauliOperator error;
  ExactRational probability;  // QMLD: of the error; DQMLD: of its coset
  bool zero_probability_fallback = false;

  // DQMLD extras: coset masses indexed by LogicalClass relative to the
  // canonical reference error, their exact total, and tie reporting.
  std::array<ExactRational, 4> coset_probability{};
  ExactRational total_consistent_mass;
  LogicalClass chosen = LogicalClass::I;
  bool tie = false;

  std::optional<uint32_t> assignment;  // structured decoders: winning mask
};

// Exhaustive 4^n maximum-likelihood decoding; ties break toward the
// canonically smallest error.  If no consistent error has nonzero
// probability, returns the canonically smallest consistent error flagged as a
// zero-probability fallback.
DecodeResult brute_force_qmld(const DecodingInstance& inst,
                              const CapProfile& caps = CapProfile::active());

// Exhaustive degenerate decoding: groups every consistent Pauli by logical
// class against the canonical reference and returns a maximum-mass class
// representative.  The four masses sum exactly to the total consistent mass.
DecodeResult brute_force_dqmld(const DecodingInstance& inst,
                               const CapProfile& caps = CapProfile::active());

struct SupportEnumeration {
  std::vector<std::pair<PauliOperator, ExactRational>> errors;  // canonical order
  bool inconclusive = false;
  uint64_t nodes = 0;
};

// All nonzero-probability errors consistent with the syndrome, by
// backtracking over the noise support with parity propagation.
SupportEnumeration support_restricted_enumerate(const DecodingInstance& inst,
                                                const CapProfile& caps = CapProfile::active());

// Structure-exploiting decoders for compiled instances: optimize over the
// 2^n assignment witnesses.
DecodeResult structured_qmld(const CompiledInstance& inst);
DecodeResult structured_dqmld(const CompiledInstance& inst);

// True iff some consistent error has probability >= threshold.
bool decision_qmld(const DecodingInstance& inst, const ExactRational& threshold,
                   const CapProfile& caps = CapProfile::active());

using QmldDecisionOracle =
    std::function<bool(const DecodingInstance&, const ExactRational& threshold)>;

// Recovers a full QMLD answer from a decision oracle: binary search for the
// maximum probability a/b over the common denominator b, then qubit-by-qubit
// letter pinning with threshold rescaling.  oracle_calls counts invocations.
DecodeResult qmld_from_decision(const DecodingInstance& inst, const QmldDecisionOracle& oracle,
                                uint64_t* oracle_calls = nullptr);

// True iff e's coset probability equals the maximum over the four classes.
bool decision_dqmld(const DecodingInstance& inst, const PauliOperator& e,
                    const CapProfile& caps = CapProfile::active());

// Pr[error in e's coset] + (1/2) Pr[error inconsistent with the syndrome]:
// the acceptance probability of the randomized verifier.  Its ordering over
// {e, Xe, Ze, XZe} equals the coset-probability ordering.
ExactRational acceptance_probability(const DecodingInstance& inst, const PauliOperator& e,
                                     const CapProfile& caps = CapProfile::active());

}  // namespace qdlab
