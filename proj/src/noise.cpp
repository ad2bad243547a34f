#include "qdlab/noise.hpp"

#include <stdexcept>

namespace qdlab {

void NoiseModel::validate() const {
  const ExactRational zero(0), one(1);
  for (const auto& [q, n] : qubits) {
    if (q >= num_qubits) throw std::invalid_argument("NoiseModel: qubit index out of range");
    if (n.pX < zero || n.pY < zero || n.pZ < zero)
      throw std::invalid_argument("NoiseModel: negative probability");
    if (n.pX + n.pY + n.pZ > one)
      throw std::invalid_argument("NoiseModel: probabilities exceed 1");
  }
}

ExactRational NoiseModel::probability_of(const PauliOperator& e) const {
  if (e.num_qubits() != num_qubits)
    throw std::invalid_argument("NoiseModel::probability_of: qubit count mismatch");
  ExactRational p(1);
  auto it = e.support().begin();
  for (const auto& [q, n] : qubits) {
    while (it != e.support().end() && it->first < q) {
      // Error letter on a noiseless qubit.
      return ExactRational(0);
    }
    if (it != e.support().end() && it->first == q) {
      ExactRational f = n.prob(it->second);
      if (f.is_zero()) return ExactRational(0);
      p *= f;
      ++it;
    } else {
      p *= n.p_identity();
    }
  }
  if (it != e.support().end()) return ExactRational(0);
  return p;
}

std::vector<Letter> NoiseModel::allowed_letters(uint32_t q) const {
  std::vector<Letter> out;
  auto it = qubits.find(q);
  if (it == qubits.end()) return out;
  if (!it->second.pX.is_zero()) out.push_back(Letter::X);
  if (!it->second.pY.is_zero()) out.push_back(Letter::Y);
  if (!it->second.pZ.is_zero()) out.push_back(Letter::Z);
  return out;
}

std::vector<uint32_t> NoiseModel::support() const {
  std::vector<uint32_t> out;
  for (const auto& [q, n] : qubits)
    if (!n.pX.is_zero() || !n.pY.is_zero() || !n.pZ.is_zero()) out.push_back(q);
  return out;
}

}  // namespace qdlab
