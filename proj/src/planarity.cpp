#include "digitop/planarity.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace digitop {
namespace {

std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

std::size_t count(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

// Vertex sets of the biconnected blocks (bridges count as 2-vertex blocks).
class BlockFinder {
 public:
  explicit BlockFinder(const DigitalImage& g) : g_(g) {}

  std::vector<Mask> run() {
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (!visited(v)) {
        dfs(v, g_.size());
        stack_.clear();
      }
    }
    return blocks_;
  }

 private:
  bool visited(std::size_t v) const { return order_[v] != 0; }

  void dfs(std::size_t v, std::size_t parent) {
    order_[v] = low_[v] = ++clock_;
    stack_.push_back(v);
    for (Mask r = g_.neighbors(v); r; r &= r - 1) {
      const std::size_t w = lowest(r);
      if (w == parent) continue;
      if (visited(w)) {
        low_[v] = std::min(low_[v], order_[w]);
        continue;
      }
      dfs(w, v);
      low_[v] = std::min(low_[v], low_[w]);
      if (low_[w] >= order_[v]) {
        Mask block = bit(v);
        std::size_t x;
        do {
          x = stack_.back();
          stack_.pop_back();
          block |= bit(x);
        } while (x != w);
        blocks_.push_back(block);
      }
    }
  }

  const DigitalImage& g_;
  std::array<std::size_t, kMaxPoints> order_{};
  std::array<std::size_t, kMaxPoints> low_{};
  std::size_t clock_ = 0;
  std::vector<std::size_t> stack_;
  std::vector<Mask> blocks_;
};

using Face = std::vector<std::size_t>;

Mask face_mask(const Face& f) {
  Mask m = 0;
  for (std::size_t v : f) m |= bit(v);
  return m;
}

// Some cycle of the biconnected block `block` (at least 3 vertices).
Face find_cycle(const DigitalImage& g, Mask block) {
  std::array<std::size_t, kMaxPoints> parent{};
  std::array<std::size_t, kMaxPoints> depth{};
  const std::size_t root = lowest(block);
  std::vector<std::size_t> stack{root};
  Mask seen = bit(root);
  parent[root] = root;
  depth[root] = 0;
  // Iterative DFS; the first edge to an already-seen non-parent vertex on
  // the current tree path closes a cycle.
  std::vector<Mask> pending{g.neighbors(root) & block};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    Mask& todo = pending.back();
    if (todo == 0) {
      stack.pop_back();
      pending.pop_back();
      continue;
    }
    const std::size_t w = lowest(todo);
    todo &= todo - 1;
    if (w == parent[v]) continue;
    if (seen & bit(w)) {
      // w is an ancestor of v (undirected DFS has no cross edges).
      Face cycle;
      for (std::size_t x = v; x != w; x = parent[x]) cycle.push_back(x);
      cycle.push_back(w);
      return cycle;
    }
    seen |= bit(w);
    parent[w] = v;
    depth[w] = depth[v] + 1;
    stack.push_back(w);
    pending.push_back(g.neighbors(w) & block);
  }
  return {};
}

struct Fragment {
  Mask attachments = 0;
  Mask interior = 0;  // empty for a chord
  std::size_t chord_a = 0;
  std::size_t chord_b = 0;
};

bool block_is_planar(const DigitalImage& g, Mask block) {
  const std::size_t nv = count(block);
  if (nv < 5) return true;
  std::size_t ne = 0;
  for (Mask m = block; m; m &= m - 1) ne += count(g.neighbors(lowest(m)) & block);
  ne /= 2;
  if (ne > 3 * nv - 6) return false;

  const Face cycle = find_cycle(g, block);
  std::vector<Face> faces{cycle, Face(cycle.rbegin(), cycle.rend())};
  std::array<Mask, kMaxPoints> embedded_adj{};
  Mask embedded = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const std::size_t a = cycle[i];
    const std::size_t b = cycle[(i + 1) % cycle.size()];
    embedded_adj[a] |= bit(b);
    embedded_adj[b] |= bit(a);
    embedded |= bit(a);
  }

  while (true) {
    std::vector<Fragment> fragments;
    for (Mask m = embedded; m; m &= m - 1) {
      const std::size_t a = lowest(m);
      Mask chords = g.neighbors(a) & embedded & ~embedded_adj[a] & ~low_bits(a + 1);
      for (; chords; chords &= chords - 1) {
        const std::size_t b = lowest(chords);
        fragments.push_back({bit(a) | bit(b), 0, a, b});
      }
    }
    Mask rest = block & ~embedded;
    while (rest) {
      Mask comp = bit(lowest(rest));
      Mask frontier = comp;
      while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= g.neighbors(lowest(f));
        next &= rest & ~comp;
        comp |= next;
        frontier = next;
      }
      rest &= ~comp;
      Mask attach = 0;
      for (Mask c = comp; c; c &= c - 1) attach |= g.neighbors(lowest(c));
      fragments.push_back({attach & embedded, comp, 0, 0});
    }
    if (fragments.empty()) return true;

    std::vector<Mask> masks;
    masks.reserve(faces.size());
    for (const Face& f : faces) masks.push_back(face_mask(f));

    std::size_t chosen = fragments.size();
    std::size_t chosen_face = 0;
    std::size_t chosen_count = faces.size() + 1;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
      std::size_t admissible = 0;
      std::size_t first = 0;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        if ((fragments[i].attachments & ~masks[f]) == 0) {
          if (admissible++ == 0) first = f;
        }
      }
      if (admissible == 0) return false;
      if (admissible < chosen_count) {
        chosen = i;
        chosen_face = first;
        chosen_count = admissible;
      }
    }

    const Fragment& frag = fragments[chosen];
    std::vector<std::size_t> path;  // endpoints on the face, interior new
    if (frag.interior == 0) {
      path = {frag.chord_a, frag.chord_b};
    } else {
      const std::size_t a = lowest(frag.attachments);
      std::array<std::size_t, kMaxPoints> parent{};
      std::vector<std::size_t> queue;
      Mask seen = 0;
      for (Mask s = g.neighbors(a) & frag.interior; s; s &= s - 1) {
        const std::size_t v = lowest(s);
        parent[v] = a;
        seen |= bit(v);
        queue.push_back(v);
      }
      std::size_t end_inner = 0;
      std::size_t b = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        const Mask exits = g.neighbors(v) & frag.attachments & ~bit(a);
        if (exits) {
          end_inner = v;
          b = lowest(exits);
          break;
        }
        for (Mask s = g.neighbors(v) & frag.interior & ~seen; s; s &= s - 1) {
          const std::size_t w = lowest(s);
          parent[w] = v;
          seen |= bit(w);
          queue.push_back(w);
        }
      }
      path.push_back(b);
      for (std::size_t x = end_inner; x != a; x = parent[x]) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
    }

    const Face face = faces[chosen_face];
    const std::size_t len = face.size();
    const auto pos_a = static_cast<std::size_t>(
        std::find(face.begin(), face.end(), path.front()) - face.begin());
    const auto pos_b = static_cast<std::size_t>(
        std::find(face.begin(), face.end(), path.back()) - face.begin());
    Face one;
    for (std::size_t i = pos_a;; i = (i + 1) % len) {
      one.push_back(face[i]);
      if (i == pos_b) break;
    }
    for (std::size_t k = path.size() - 2; k >= 1; --k) one.push_back(path[k]);
    Face two;
    for (std::size_t i = pos_b;; i = (i + 1) % len) {
      two.push_back(face[i]);
      if (i == pos_a) break;
    }
    for (std::size_t k = 1; k + 1 < path.size(); ++k) two.push_back(path[k]);
    faces[chosen_face] = std::move(one);
    faces.push_back(std::move(two));

    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      embedded_adj[path[k]] |= bit(path[k + 1]);
      embedded_adj[path[k + 1]] |= bit(path[k]);
      embedded |= bit(path[k]) | bit(path[k + 1]);
    }
  }
}

}  // namespace

bool is_planar(const DigitalImage& image) {
  const std::size_t n = image.size();
  if (n < 5) return true;
  if (image.edge_count() > 3 * n - 6) return false;
  for (Mask block : BlockFinder(image).run()) {
    if (!block_is_planar(image, block)) return false;
  }
  return true;
}

}  // namespace digitop
