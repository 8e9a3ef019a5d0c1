#include "digitop/lattice_tools.hpp"

#include <string>
#include <vector>

#include "digitop/error.hpp"
#include "digitop/graph6.hpp"

namespace digitop {

LatticeImage embed_4_to_8(const LatticeImage& lattice) {
  if (lattice.kind() != Adjacency::kFour) {
    throw ContractError("embed_4_to_8 expects a 4-adjacency image");
  }
  std::vector<Point> out;
  out.reserve(lattice.size());
  for (Point p : lattice.points()) out.push_back({p.x + p.y, p.x - p.y});
  return LatticeImage(Adjacency::kEight, std::move(out));
}

DigitalImage cycle_image(std::size_t n) {
  if (n < 3) throw DomainError("C_n needs n >= 3");
  DigitalImage c(n);
  for (std::size_t i = 0; i < n; ++i) c.connect(i, (i + 1) % n);
  return c;
}

LatticeImage realize_cycle_4adj(std::size_t n) {
  if (n % 2 != 0 || n < 4 || n == 6) {
    throw UnrealizableError("C_" + std::to_string(n) +
                            " has no 4-adjacency realization in Z^2");
  }
  if (n == 4) {
    return LatticeImage(Adjacency::kFour, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  }
  // Perimeter of an a x b block has 2a + 2b - 4 cells; a = 3.
  const int width = static_cast<int>((n - 2) / 2);
  std::vector<Point> ring;
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x == 0 || x == width - 1 || y != 1) ring.push_back({x, y});
    }
  }
  return LatticeImage(Adjacency::kFour, std::move(ring));
}

const std::map<std::string, Fixture>& builtin_fixtures() {
  static const std::map<std::string, Fixture> fixtures = [] {
    std::map<std::string, Fixture> m;
    m.emplace("fig1-1", graph6_decode("GrDKPK"));
    m.emplace("fig1-2", graph6_decode("HhciKeX"));
    m.emplace("fig1-3", graph6_decode("HzSW[Mb"));
    m.emplace("fig2a",
              LatticeImage(Adjacency::kFour,
                           {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 4}, {3, 1},
                            {3, 3}, {3, 4}, {4, 1}, {4, 2}, {4, 3}, {4, 4}}));
    m.emplace("fig2b",
              LatticeImage(Adjacency::kEight,
                           {{1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 5}, {3, 1},
                            {3, 3}, {3, 5}, {4, 2}, {4, 4}, {5, 3}}));
    return m;
  }();
  return fixtures;
}

DigitalImage to_image(const Fixture& fixture) {
  if (const auto* lattice = std::get_if<LatticeImage>(&fixture)) {
    return lattice_to_image(*lattice);
  }
  return std::get<DigitalImage>(fixture);
}

}  // namespace digitop
