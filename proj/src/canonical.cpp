#include "digitop/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "digitop/graph6.hpp"

namespace digitop {
namespace {

using Partition = std::vector<Mask>;
using Labeling = std::vector<std::uint8_t>;  // position -> point

// Orbit bookkeeping is bounded; dropping generators only weakens pruning.
constexpr std::size_t kMaxGenerators = 64;
constexpr std::size_t kNoJump = ~std::size_t{0};

std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

// Splits every cell by the number of neighbors each point has in a splitter
// cell, sub-cells ordered by increasing count, sweeping splitters in cell
// order until a full sweep changes nothing. Every step depends only on the
// ordered partition and adjacency, never on labels, so the result commutes
// with relabeling.
void refine(const DigitalImage& g, Partition& cells) {
  std::array<Mask, kMaxPoints + 1> bucket{};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size(); ++s) {
      const Mask splitter = cells[s];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const Mask cell = cells[c];
        if ((cell & (cell - 1)) == 0) continue;
        std::size_t lo = kMaxPoints;
        std::size_t hi = 0;
        for (Mask m = cell; m; m &= m - 1) {
          const std::size_t v = lowest(m);
          const auto k = static_cast<std::size_t>(
              std::popcount(g.neighbors(v) & splitter));
          bucket[k] |= bit(v);
          lo = std::min(lo, k);
          hi = std::max(hi, k);
        }
        if (lo == hi) {
          bucket[lo] = 0;
          continue;
        }
        Partition pieces;
        for (std::size_t k = lo; k <= hi; ++k) {
          if (bucket[k]) pieces.push_back(bucket[k]);
          bucket[k] = 0;
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c),
                     pieces.begin(), pieces.end());
        c += pieces.size() - 1;
        changed = true;
      }
    }
  }
}

class Search {
 public:
  explicit Search(const DigitalImage& g) : g_(g), n_(g.size()) {}

  Labeling run() {
    Partition root{g_.all_points()};
    std::vector<std::size_t> path;
    descend(std::move(root), path);
    return best_;
  }

 private:
  void descend(Partition cells, std::vector<std::size_t>& path) {
    refine(g_, cells);
    auto target = std::find_if(cells.begin(), cells.end(),
                               [](Mask c) { return (c & (c - 1)) != 0; });
    if (target == cells.end()) {
      leaf(cells, path);
      return;
    }
    const auto t = static_cast<std::size_t>(target - cells.begin());
    const Mask cell = cells[t];
    Mask tried = 0;
    for (Mask m = cell; m; m &= m - 1) {
      const std::size_t v = lowest(m);
      if (tried && in_orbit_of(v, tried, path)) continue;
      tried |= bit(v);
      Partition child = cells;
      child[t] = cell & ~bit(v);
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(t), bit(v));
      path.push_back(v);
      descend(std::move(child), path);
      path.pop_back();
      if (jump_to_ < path.size()) return;
      jump_to_ = kNoJump;
    }
  }

  // True if v shares an orbit with some point of `tried` under the group
  // generated by known automorphisms that fix every point of `path`.
  bool in_orbit_of(std::size_t v, Mask tried,
                   const std::vector<std::size_t>& path) const {
    std::array<std::uint8_t, kMaxPoints> parent{};
    std::iota(parent.begin(), parent.begin() + static_cast<std::ptrdiff_t>(n_),
              std::uint8_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (const Labeling& gen : generators_) {
      const bool fixes = std::all_of(path.begin(), path.end(),
                                     [&](std::size_t p) { return gen[p] == p; });
      if (!fixes) continue;
      any = true;
      for (std::size_t x = 0; x < n_; ++x) {
        const std::size_t a = find(x);
        const std::size_t b = find(gen[x]);
        if (a != b) parent[a] = static_cast<std::uint8_t>(b);
      }
    }
    if (!any) return false;
    const std::size_t root = find(v);
    for (Mask m = tried; m; m &= m - 1) {
      if (find(lowest(m)) == root) return true;
    }
    return false;
  }

  void leaf(const Partition& cells, const std::vector<std::size_t>& path) {
    Labeling order(n_);
    std::array<std::uint8_t, kMaxPoints> position{};
    for (std::size_t i = 0; i < n_; ++i) {
      order[i] = static_cast<std::uint8_t>(lowest(cells[i]));
      position[order[i]] = static_cast<std::uint8_t>(i);
    }
    // Row i holds column j at bit (n-1-j), so numeric order of rows equals
    // lexicographic order of the row-major bit string.
    std::vector<Mask> rows(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (Mask r = g_.neighbors(order[i]); r; r &= r - 1) {
        rows[i] |= bit(n_ - 1 - position[lowest(r)]);
      }
    }
    if (best_.empty()) {
      first_ = order;
      first_rows_ = rows;
      first_path_ = path;
      best_ = std::move(order);
      best_rows_ = std::move(rows);
      best_path_ = path;
      return;
    }
    // A leaf equivalent to a stored one makes the rest of the subtree below
    // the divergence point redundant, so the search resumes there.
    if (rows == first_rows_) {
      record_automorphism(first_, order);
      jump_to_ = divergence(first_path_, path);
      return;
    }
    if (rows == best_rows_) {
      record_automorphism(best_, order);
      jump_to_ = divergence(best_path_, path);
    } else if (rows < best_rows_) {
      best_ = std::move(order);
      best_rows_ = std::move(rows);
      best_path_ = path;
    }
  }

  static std::size_t divergence(const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b) {
    std::size_t d = 0;
    while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
    return d;
  }

  void record_automorphism(const Labeling& a, const Labeling& b) {
    if (generators_.size() >= kMaxGenerators) return;
    Labeling gen(n_);
    for (std::size_t i = 0; i < n_; ++i) gen[a[i]] = b[i];
    generators_.push_back(std::move(gen));
  }

  const DigitalImage& g_;
  std::size_t n_;
  Labeling first_;
  std::vector<Mask> first_rows_;
  Labeling best_;
  std::vector<Mask> best_rows_;
  std::vector<Labeling> generators_;
  std::vector<std::size_t> first_path_;
  std::vector<std::size_t> best_path_;
  std::size_t jump_to_ = kNoJump;
};

}  // namespace

std::vector<std::size_t> canonical_labeling(const DigitalImage& image) {
  const Labeling order = Search(image).run();
  std::vector<std::size_t> new_label(image.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_label[order[i]] = i;
  return new_label;
}

DigitalImage canonical_image(const DigitalImage& image) {
  return image.relabeled(canonical_labeling(image));
}

CanonicalForm canonical_form(const DigitalImage& image) {
  return {graph6_encode(canonical_image(image))};
}

bool are_isomorphic(const DigitalImage& a, const DigitalImage& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::size_t> da(a.size());
  std::vector<std::size_t> db(b.size());
  for (std::size_t v = 0; v < a.size(); ++v) {
    da[v] = a.degree(v);
    db[v] = b.degree(v);
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace digitop
