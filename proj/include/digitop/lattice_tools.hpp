#ifndef DIGITOP_LATTICE_TOOLS_HPP_
#define DIGITOP_LATTICE_TOOLS_HPP_

#include <map>
#include <string>
#include <variant>

#include "digitop/image.hpp"

namespace digitop {

/// (x, y) -> (x + y, x - y). Maps 4-adjacent pairs exactly onto 8-adjacent
/// pairs, so the result (kind 8) has the same adjacency graph label for
/// label. Throws ContractError unless the input has kind 4.
LatticeImage embed_4_to_8(const LatticeImage& lattice);

/// C_n, point i adjacent to i +- 1 mod n. Throws DomainError for n < 3.
DigitalImage cycle_image(std::size_t n);

/// A kind-4 lattice image isomorphic to C_n: the 2x2 square for n = 4, the
/// boundary of a 3 x ((n - 2) / 2) block for even n >= 8. Throws
/// UnrealizableError for odd n, n = 2 and n = 6.
LatticeImage realize_cycle_4adj(std::size_t n);

using Fixture = std::variant<DigitalImage, LatticeImage>;

/// fig1-1, fig1-2, fig1-3 (abstract, from their graph6 strings), fig2a
/// (13 cells, kind 4) and fig2b (11 cells, kind 8).
const std::map<std::string, Fixture>& builtin_fixtures();

DigitalImage to_image(const Fixture& fixture);

}  // namespace digitop

#endif  // DIGITOP_LATTICE_TOOLS_HPP_
