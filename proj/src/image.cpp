#include "digitop/image.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "digitop/error.hpp"

namespace digitop {

DigitalImage::DigitalImage(std::size_t n) {
  if (n == 0 || n > kMaxPoints) {
    throw DomainError("image size must be in [1, 64], got " +
                      std::to_string(n));
  }
  rows_.assign(n, 0);
}

DigitalImage DigitalImage::from_edges(
    std::size_t n,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  DigitalImage image(n);
  for (auto [a, b] : edges) image.connect(a, b);
  return image;
}

std::size_t DigitalImage::edge_count() const noexcept {
  std::size_t twice = 0;
  for (Mask row : rows_) twice += static_cast<std::size_t>(std::popcount(row));
  return twice / 2;
}

void DigitalImage::connect(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size()) {
    throw ContractError("edge endpoint out of range");
  }
  if (a == b) throw ContractError("adjacency must be antireflexive");
  rows_[a] |= bit(b);
  rows_[b] |= bit(a);
}

DigitalImage DigitalImage::relabeled(
    std::span<const std::size_t> new_label) const {
  const std::size_t n = size();
  if (new_label.size() != n) {
    throw ContractError("relabeling has wrong length");
  }
  Mask seen = 0;
  for (std::size_t v : new_label) {
    if (v >= n || (seen & bit(v))) {
      throw ContractError("relabeling is not a permutation");
    }
    seen |= bit(v);
  }
  DigitalImage out(n);
  for (std::size_t a = 0; a < n; ++a) {
    Mask row = 0;
    for (Mask r = rows_[a]; r; r &= r - 1) {
      row |= bit(new_label[static_cast<std::size_t>(std::countr_zero(r))]);
    }
    out.rows_[new_label[a]] = row;
  }
  return out;
}

DigitalImage DigitalImage::induced(Mask subset) const {
  subset &= all_points();
  if (subset == 0) throw DomainError("induced subimage must be nonempty");
  std::vector<std::size_t> index(size(), 0);
  std::size_t k = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    if (subset & bit(v)) index[v] = k++;
  }
  DigitalImage out(k);
  for (std::size_t v = 0; v < size(); ++v) {
    if (!(subset & bit(v))) continue;
    Mask row = 0;
    for (Mask r = rows_[v] & subset; r; r &= r - 1) {
      row |= bit(index[static_cast<std::size_t>(std::countr_zero(r))]);
    }
    out.rows_[index[v]] = row;
  }
  return out;
}

std::vector<std::size_t> breadth_first_order(const DigitalImage& image) {
  const std::size_t n = image.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  Mask seen = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen & bit(start)) continue;
    seen |= bit(start);
    std::size_t head = order.size();
    order.push_back(start);
    while (head < order.size()) {
      const std::size_t v = order[head++];
      for (Mask r = image.neighbors(v) & ~seen; r; r &= r - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(r));
        seen |= bit(w);
        order.push_back(w);
      }
    }
  }
  return order;
}

bool is_connected(const DigitalImage& image) {
  Mask reached = bit(0);
  Mask frontier = reached;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) {
      next |= image.neighbors(static_cast<std::size_t>(std::countr_zero(f)));
    }
    frontier = next & ~reached;
    reached |= next;
  }
  return reached == image.all_points();
}

bool is_cycle(const DigitalImage& image) {
  for (std::size_t v = 0; v < image.size(); ++v) {
    if (image.degree(v) != 2) return false;
  }
  return is_connected(image);
}

bool lattice_adjacent(Adjacency kind, Point p, Point q) noexcept {
  const int dx = std::abs(p.x - q.x);
  const int dy = std::abs(p.y - q.y);
  if (kind == Adjacency::kFour) return dx + dy == 1;
  return (dx | dy) != 0 && dx <= 1 && dy <= 1;
}

LatticeImage::LatticeImage(Adjacency kind, std::vector<Point> points)
    : kind_(kind), points_(std::move(points)) {
  if (kind_ != Adjacency::kFour && kind_ != Adjacency::kEight) {
    throw DomainError("adjacency kind must be 4 or 8");
  }
  if (points_.empty()) throw DomainError("lattice image has no points");
  if (points_.size() > kMaxPoints) {
    throw DomainError("lattice image has more than 64 points");
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw DomainError("lattice image has repeated points");
  }
}

DigitalImage lattice_to_image(const LatticeImage& lattice) {
  const auto pts = lattice.points();
  DigitalImage image(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      // Sorted by x: once x differs by more than 1 nothing later is adjacent.
      if (pts[b].x - pts[a].x > 1) break;
      if (lattice_adjacent(lattice.kind(), pts[a], pts[b])) image.connect(a, b);
    }
  }
  return image;
}

}  // namespace digitop
