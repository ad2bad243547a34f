#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qdlab/pauli.hpp"
#include "qdlab/rational.hpp"

namespace qdlab {

// Per-qubit independent X/Y/Z error channel; the identity outcome has
// probability 1 - pX - pY - pZ.  A letter with probability 0 is disallowed.
struct QubitNoise {
  ExactRational pX, pY, pZ;

  ExactRational p_identity() const { return ExactRational(1) - pX - pY - pZ; }
  ExactRational prob(Letter l) const {
    switch (l) {
      case Letter::X: return pX;
      case Letter::Y: return pY;
      case Letter::Z: return pZ;
    }
    return ExactRational(0);
  }
};

// Noise acts only on the qubits listed; all others are noiseless (always
// identity, and any error letter there has probability 0).
struct NoiseModel {
  uint32_t num_qubits = 0;
  std::map<uint32_t, QubitNoise> qubits;

  // Validates 0 <= pX,pY,pZ and pX+pY+pZ <= 1 on every qubit.
  void validate() const;

  // Exact probability of drawing exactly e; 0 if e uses a disallowed letter
  // or touches a noiseless qubit.
  ExactRational probability_of(const PauliOperator& e) const;

  // Letters with nonzero probability on q (empty if noiseless).
  std::vector<Letter> allowed_letters(uint32_t q) const;

  // Sorted qubits with at least one allowed letter.
  std::vector<uint32_t> support() const;
};

}  // namespace qdlab
