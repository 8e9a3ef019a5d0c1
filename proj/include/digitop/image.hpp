#ifndef DIGITOP_IMAGE_HPP_
#define DIGITOP_IMAGE_HPP_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace digitop {

/// Bit set over point labels; bit i stands for label i.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }

constexpr Mask low_bits(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : bit(n) - 1;
}

/// A digital image (X, kappa): labels 0..n-1 with a symmetric antireflexive
/// adjacency relation, stored as one neighbor mask per label.
class DigitalImage {
 public:
  /// n isolated points. Throws DomainError unless 1 <= n <= kMaxPoints.
  explicit DigitalImage(std::size_t n);

  static DigitalImage from_edges(
      std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

  std::size_t size() const noexcept { return rows_.size(); }

  bool adjacent(std::size_t a, std::size_t b) const noexcept {
    return (rows_[a] >> b) & 1U;
  }
  Mask neighbors(std::size_t a) const noexcept { return rows_[a]; }
  /// N[a]: a together with its neighbors.
  Mask closed_neighborhood(std::size_t a) const noexcept {
    return rows_[a] | bit(a);
  }
  std::size_t degree(std::size_t a) const noexcept {
    return static_cast<std::size_t>(std::popcount(rows_[a]));
  }
  std::size_t edge_count() const noexcept;
  Mask all_points() const noexcept { return low_bits(size()); }
  std::span<const Mask> rows() const noexcept { return rows_; }

  /// Adds the edge {a, b}. Throws ContractError for a == b or bad labels.
  void connect(std::size_t a, std::size_t b);

  /// The image with old label i renamed to new_label[i]; new_label must be a
  /// permutation of 0..n-1.
  DigitalImage relabeled(std::span<const std::size_t> new_label) const;

  /// Subimage induced on `subset`, relabeled in increasing label order.
  DigitalImage induced(Mask subset) const;

  friend bool operator==(const DigitalImage&, const DigitalImage&) = default;

 private:
  std::vector<Mask> rows_;
};

bool is_connected(const DigitalImage& image);

/// Labels in breadth-first order from label 0, restarting at the smallest
/// unvisited label for each further component.
std::vector<std::size_t> breadth_first_order(const DigitalImage& image);

/// Every point has degree 2 and the image is connected.
bool is_cycle(const DigitalImage& image);

enum class Adjacency : int { kFour = 4, kEight = 8 };

struct Point {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

bool lattice_adjacent(Adjacency kind, Point p, Point q) noexcept;

/// A finite point set in Z^2 with 4- or 8-adjacency. Points are kept in
/// lexicographic (x, y) order, which is also the label order of the induced
/// DigitalImage.
class LatticeImage {
 public:
  /// Throws DomainError for an empty set or repeated points.
  LatticeImage(Adjacency kind, std::vector<Point> points);

  Adjacency kind() const noexcept { return kind_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  friend bool operator==(const LatticeImage&, const LatticeImage&) = default;

 private:
  Adjacency kind_;
  std::vector<Point> points_;
};

DigitalImage lattice_to_image(const LatticeImage& lattice);

}  // namespace digitop

#endif  // DIGITOP_IMAGE_HPP_
