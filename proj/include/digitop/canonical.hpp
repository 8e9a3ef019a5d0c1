#ifndef DIGITOP_CANONICAL_HPP_
#define DIGITOP_CANONICAL_HPP_

#include <compare>
#include <string>
#include <vector>

#include "digitop/image.hpp"

namespace digitop {

/// Complete isomorphism invariant: the graph6 string of the canonically
/// relabeled image. Equal codes iff isomorphic images.
struct CanonicalForm {
  std::string code;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

/// new_label[v] is the canonical position of point v.
///
/// Search: partitions are refined to equitability by neighbor counts, one
/// point of the first non-singleton cell is individualized per branch, and
/// every discrete leaf is scored by its permuted adjacency matrix read row by
/// row. The lexicographically least matrix wins. Automorphisms discovered as
/// repeated leaves prune sibling branches that lie in one orbit of the
/// stabilizer of the current branch prefix.
std::vector<std::size_t> canonical_labeling(const DigitalImage& image);

DigitalImage canonical_image(const DigitalImage& image);

CanonicalForm canonical_form(const DigitalImage& image);

bool are_isomorphic(const DigitalImage& a, const DigitalImage& b);

}  // namespace digitop

#endif  // DIGITOP_CANONICAL_HPP_
