#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qdlab/pauli.hpp"

namespace qdlab {

enum class StabKind : uint8_t { X, Z };

inline char stab_kind_char(StabKind k) { return k == StabKind::X ? 'X' : 'Z'; }

// One stabilizer generator of the rotated planar code: a bulk plaquette
// (4 qubits) or a boundary half-plaquette (2 qubits).  The anchor is the
// lower-left corner of the plaquette square on the dual grid; boundary
// halves have anchor col or row equal to -1 or w-1 / h-1.
struct StabilizerGenerator {
  StabKind kind;
  int anchor_col = 0;
  int anchor_row = 0;
  std::vector<uint32_t> qubits;  // sorted qubit indices
};

// Coordinates of the data-qubit grid: column c in [0,w), row r in [0,h),
// row 0 at the bottom, index = r*w + c.
struct RotatedLayout {
  uint32_t w = 0;
  uint32_t h = 0;
  std::vector<StabilizerGenerator> generators;  // sorted by (row, col, kind)
  PauliOperator logical_x;                      // X on column 0
  PauliOperator logical_z;                      // Z on row 0
  std::vector<std::vector<uint32_t>> incident;  // qubit -> generator indices

  uint32_t num_qubits() const { return w * h; }
  uint32_t index(uint32_t col, uint32_t row) const { return row * w + col; }
  uint32_t col_of(uint32_t q) const { return q % w; }
  uint32_t row_of(uint32_t q) const { return q / w; }
};

// Plaquette type at dual-grid anchor (c, r): Z iff c + r is even.
inline StabKind plaquette_kind(int c, int r) {
  return ((c + r) % 2 + 2) % 2 == 0 ? StabKind::Z : StabKind::X;
}

// Builds the w x h rotated planar layout (w, h >= 2).  Produces exactly
// w*h - 1 generators.
RotatedLayout build_rotated_layout(uint32_t w, uint32_t h);

// Sorted indices of generators anticommuting with e.
std::set<uint32_t> syndrome_of(const RotatedLayout& lay, const PauliOperator& e);

// Finds the generator with the given anchor/kind, if present.
std::optional<uint32_t> find_generator(const RotatedLayout& lay, StabKind kind, int anchor_col,
                                       int anchor_row);

enum class LogicalClass : uint8_t { I, X, Y, Z };
inline char logical_class_char(LogicalClass c) {
  switch (c) {
    case LogicalClass::I: return 'I';
    case LogicalClass::X: return 'X';
    case LogicalClass::Y: return 'Y';
    case LogicalClass::Z: return 'Z';
  }
  return '?';
}

// Coset label of a*b^{-1} relative to the stabilizer group; requires equal
// syndromes (throws otherwise).  X means the difference anticommutes with the
// logical Z only, Z with the logical X only, Y with both, I with neither.
LogicalClass logical_class(const RotatedLayout& lay, const PauliOperator& a,
                           const PauliOperator& b);

// All 2^(w*h-1) stabilizer group elements; refuses layouts with more than
// max_generators generators.
std::vector<PauliOperator> enumerate_stabilizer_group(const RotatedLayout& lay,
                                                      uint32_t max_generators = 16);

}  // namespace qdlab
