#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdlab {

// Non-identity single-qubit Pauli letter.  Symplectic bit pairs (x,z):
// X=(1,0), Y=(1,1), Z=(0,1).
enum class Letter : uint8_t { X = 1, Y = 3, Z = 2 };

inline bool letter_has_x(Letter l) { return static_cast<uint8_t>(l) & 1u; }
inline bool letter_has_z(Letter l) { return static_cast<uint8_t>(l) & 2u; }
inline char letter_char(Letter l) {
  switch (l) {
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  throw std::logic_error("bad letter");
}
inline Letter letter_from_char(char c) {
  switch (c) {
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
  }
  throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
}

// 1 if the two letters anticommute (distinct non-identity letters), else 0.
inline int letters_anticommute(Letter a, Letter b) { return a == b ? 0 : 1; }

// Canonical order used for tie-breaking everywhere: X < Y < Z.
inline int letter_rank(Letter l) {
  switch (l) {
    case Letter::X: return 0;
    case Letter::Y: return 1;
    case Letter::Z: return 2;
  }
  throw std::logic_error("bad letter");
}

// Phaseless n-qubit Pauli operator with sparse support.
class PauliOperator {
 public:
  explicit PauliOperator(uint32_t num_qubits = 0) : n_(num_qubits) {}
  PauliOperator(uint32_t num_qubits, std::map<uint32_t, Letter> support)
      : n_(num_qubits), support_(std::move(support)) {
    for (const auto& [q, l] : support_) {
      (void)l;
      if (q >= n_) throw std::invalid_argument("PauliOperator: qubit index out of range");
    }
  }

  uint32_t num_qubits() const { return n_; }
  const std::map<uint32_t, Letter>& support() const { return support_; }
  size_t weight() const { return support_.size(); }
  bool is_identity() const { return support_.empty(); }

  // Letter at qubit q, or 0 if identity there.
  Letter letter_at(uint32_t q, bool* present = nullptr) const {
    auto it = support_.find(q);
    if (present) *present = (it != support_.end());
    return it == support_.end() ? Letter::X : it->second;
  }
  bool has(uint32_t q) const { return support_.count(q) != 0; }

  void set(uint32_t q, Letter l) {
    if (q >= n_) throw std::invalid_argument("PauliOperator::set: qubit index out of range");
    support_[q] = l;
  }
  void clear(uint32_t q) { support_.erase(q); }

  // Phaseless product: per-qubit symplectic XOR; equal letters cancel.
  PauliOperator multiply(const PauliOperator& other) const;

  // XOR a single letter into qubit q (phaseless).
  void xor_letter(uint32_t q, Letter l);

  bool commutes_with(const PauliOperator& other) const;

  // Literal form "X0 Y3 Z17"; identity prints as "".
  std::string to_string() const;
  static PauliOperator parse(const std::string& text, uint32_t num_qubits);

  bool operator==(const PauliOperator& o) const { return n_ == o.n_ && support_ == o.support_; }
  bool operator!=(const PauliOperator& o) const { return !(*this == o); }

  // Lexicographic on sorted (qubit index, letter rank) pairs.
  bool operator<(const PauliOperator& o) const;

 private:
  void check_compatible(const PauliOperator& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PauliOperator: qubit count mismatch");
  }
  uint32_t n_;
  std::map<uint32_t, Letter> support_;
};

}  // namespace qdlab
