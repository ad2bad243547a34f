#include "qdlab/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdlab {

RotatedLayout build_rotated_layout(uint32_t w, uint32_t h) {
  if (w < 2 || h < 2) throw std::invalid_argument("build_rotated_layout: need w, h >= 2");
  RotatedLayout lay;
  lay.w = w;
  lay.h = h;
  const int iw = static_cast<int>(w), ih = static_cast<int>(h);

  auto add = [&](StabKind kind, int c, int r, std::vector<uint32_t> qs) {
    std::sort(qs.begin(), qs.end());
    lay.generators.push_back({kind, c, r, std::move(qs)});
  };

  for (int r = -1; r < ih; ++r) {
    for (int c = -1; c < iw; ++c) {
      StabKind kind = plaquette_kind(c, r);
      bool bulk = c >= 0 && c <= iw - 2 && r >= 0 && r <= ih - 2;
      if (bulk) {
        add(kind, c, r,
            {lay.index(c, r), lay.index(c + 1, r), lay.index(c, r + 1), lay.index(c + 1, r + 1)});
      } else if (r == -1 && c >= 0 && c <= iw - 2 && kind == StabKind::X) {
        add(kind, c, r, {lay.index(c, 0), lay.index(c + 1, 0)});
      } else if (r == ih - 1 && c >= 0 && c <= iw - 2 && kind == StabKind::X) {
        add(kind, c, r, {lay.index(c, ih - 1), lay.index(c + 1, ih - 1)});
      } else if (c == -1 && r >= 0 && r <= ih - 2 && kind == StabKind::Z) {
        add(kind, c, r, {lay.index(0, r), lay.index(0, r + 1)});
      } else if (c == iw - 1 && r >= 0 && r <= ih - 2 && kind == StabKind::Z) {
        add(kind, c, r, {lay.index(iw - 1, r), lay.index(iw - 1, r + 1)});
      }
    }
  }

  std::sort(lay.generators.begin(), lay.generators.end(),
            [](const StabilizerGenerator& a, const StabilizerGenerator& b) {
              if (a.anchor_row != b.anchor_row) return a.anchor_row < b.anchor_row;
              if (a.anchor_col != b.anchor_col) return a.anchor_col < b.anchor_col;
              return a.kind < b.kind;
            });

  if (lay.generators.size() != static_cast<size_t>(w) * h - 1)
    throw std::logic_error("build_rotated_layout: generator count mismatch");

  std::map<uint32_t, Letter> lx, lz;
  for (uint32_t r = 0; r < h; ++r) lx.emplace(lay.index(0, r), Letter::X);
  for (uint32_t c = 0; c < w; ++c) lz.emplace(lay.index(c, 0), Letter::Z);
  lay.logical_x = PauliOperator(w * h, std::move(lx));
  lay.logical_z = PauliOperator(w * h, std::move(lz));

  lay.incident.assign(w * h, {});
  for (uint32_t gi = 0; gi < lay.generators.size(); ++gi)
    for (uint32_t q : lay.generators[gi].qubits) lay.incident[q].push_back(gi);
  return lay;
}

std::set<uint32_t> syndrome_of(const RotatedLayout& lay, const PauliOperator& e) {
  if (e.num_qubits() != lay.num_qubits())
    throw std::invalid_argument("syndrome_of: qubit count mismatch");
  std::vector<uint8_t> parity(lay.generators.size(), 0);
  for (const auto& [q, l] : e.support()) {
    for (uint32_t gi : lay.incident[q]) {
      StabKind k = lay.generators[gi].kind;
      bool anti = (k == StabKind::X) ? letter_has_z(l) : letter_has_x(l);
      if (anti) parity[gi] ^= 1;
    }
  }
  std::set<uint32_t> out;
  for (uint32_t gi = 0; gi < parity.size(); ++gi)
    if (parity[gi]) out.insert(gi);
  return out;
}

std::optional<uint32_t> find_generator(const RotatedLayout& lay, StabKind kind, int anchor_col,
                                       int anchor_row) {
  for (uint32_t gi = 0; gi < lay.generators.size(); ++gi) {
    const auto& g = lay.generators[gi];
    if (g.kind == kind && g.anchor_col == anchor_col && g.anchor_row == anchor_row) return gi;
  }
  return std::nullopt;
}

LogicalClass logical_class(const RotatedLayout& lay, const PauliOperator& a,
                           const PauliOperator& b) {
  if (syndrome_of(lay, a) != syndrome_of(lay, b))
    throw std::invalid_argument("logical_class: operators have different syndromes");
  PauliOperator d = a.multiply(b);
  bool anti_z = !d.commutes_with(lay.logical_z);  // X-type logical content
  bool anti_x = !d.commutes_with(lay.logical_x);  // Z-type logical content
  if (anti_z && anti_x) return LogicalClass::Y;
  if (anti_z) return LogicalClass::X;
  if (anti_x) return LogicalClass::Z;
  return LogicalClass::I;
}

std::vector<PauliOperator> enumerate_stabilizer_group(const RotatedLayout& lay,
                                                      uint32_t max_generators) {
  const size_t g = lay.generators.size();
  if (g > max_generators)
    throw std::length_error("enumerate_stabilizer_group: generator count exceeds cap");
  std::vector<PauliOperator> gens;
  gens.reserve(g);
  for (const auto& s : lay.generators) {
    std::map<uint32_t, Letter> m;
    for (uint32_t q : s.qubits) m.emplace(q, s.kind == StabKind::X ? Letter::X : Letter::Z);
    gens.emplace_back(lay.num_qubits(), std::move(m));
  }
  std::vector<PauliOperator> out;
  out.reserve(size_t{1} << g);
  PauliOperator cur(lay.num_qubits());
  out.push_back(cur);
  // Gray-code walk: element k differs from k-1 by one generator.
  for (uint64_t k = 1; k < (uint64_t{1} << g); ++k) {
    uint32_t bit = 0;
    while (!((k >> bit) & 1)) ++bit;
    cur = cur.multiply(gens[bit]);
    out.push_back(cur);
  }
  return out;
}

}  // namespace qdlab
