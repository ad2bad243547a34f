#include "qdlab/pauli.hpp"

#include <sstream>

namespace qdlab {

PauliOperator PauliOperator::multiply(const PauliOperator& other) const {
  check_compatible(other);
  PauliOperator out(*this);
  for (const auto& [q, l] : other.support_) out.xor_letter(q, l);
  return out;
}

void PauliOperator::xor_letter(uint32_t q, Letter l) {
  if (q >= n_) throw std::invalid_argument("PauliOperator::xor_letter: qubit out of range");
  auto it = support_.find(q);
  if (it == support_.end()) {
    support_.emplace(q, l);
    return;
  }
  uint8_t bits = static_cast<uint8_t>(it->second) ^ static_cast<uint8_t>(l);
  if (bits == 0) {
    support_.erase(it);
  } else {
    it->second = static_cast<Letter>(bits);
  }
}

bool PauliOperator::commutes_with(const PauliOperator& other) const {
  check_compatible(other);
  int parity = 0;
  auto a = support_.begin();
  auto b = other.support_.begin();
  while (a != support_.end() && b != other.support_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      parity ^= letters_anticommute(a->second, b->second);
      ++a;
      ++b;
    }
  }
  return parity == 0;
}

std::string PauliOperator::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, l] : support_) {
    if (!first) os << ' ';
    os << letter_char(l) << q;
    first = false;
  }
  return os.str();
}

PauliOperator PauliOperator::parse(const std::string& text, uint32_t num_qubits) {
  PauliOperator out(num_qubits);
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2) throw std::invalid_argument("PauliOperator::parse: bad token '" + tok + "'");
    Letter l = letter_from_char(tok[0]);
    size_t pos = 0;
    unsigned long q = std::stoul(tok.substr(1), &pos);
    if (pos + 1 != tok.size()) throw std::invalid_argument("PauliOperator::parse: bad token '" + tok + "'");
    if (q >= num_qubits) throw std::invalid_argument("PauliOperator::parse: qubit index out of range");
    if (out.support_.count(static_cast<uint32_t>(q)))
      throw std::invalid_argument("PauliOperator::parse: duplicate qubit in '" + text + "'");
    out.support_.emplace(static_cast<uint32_t>(q), l);
  }
  return out;
}

bool PauliOperator::operator<(const PauliOperator& o) const {
  auto a = support_.begin();
  auto b = o.support_.begin();
  while (a != support_.end() && b != o.support_.end()) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return letter_rank(a->second) < letter_rank(b->second);
    ++a;
    ++b;
  }
  return a == support_.end() && b != o.support_.end();
}

}  // namespace qdlab
