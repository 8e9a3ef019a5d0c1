#include "digitop/enumerate.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "digitop/error.hpp"
#include "digitop/graph6.hpp"
#include "digitop/parallel.hpp"

namespace digitop {
namespace {

constexpr std::size_t kLocalFlush = 1 << 14;

// Fixed cell sets are keyed by two bytes (x, y) per cell in sorted order.
std::string cells_key(const std::vector<Point>& cells) {
  std::string key;
  key.reserve(cells.size() * 2);
  for (Point p : cells) {
    key.push_back(static_cast<char>(p.x));
    key.push_back(static_cast<char>(p.y));
  }
  return key;
}

std::vector<Point> key_cells(std::string_view key) {
  std::vector<Point> cells;
  cells.reserve(key.size() / 2);
  for (std::size_t i = 0; i + 1 < key.size(); i += 2) {
    cells.push_back({static_cast<unsigned char>(key[i]),
                     static_cast<unsigned char>(key[i + 1])});
  }
  return cells;
}

std::string cells_string(const std::vector<Point>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(';');
    out += std::to_string(cells[i].x);
    out.push_back(',');
    out += std::to_string(cells[i].y);
  }
  return out;
}

std::span<const Point> offsets(Adjacency kind) {
  static constexpr Point four[] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  static constexpr Point eight[] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                    {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  if (kind == Adjacency::kFour) return four;
  return eight;
}

Adjacency family_kind(Family family) {
  return family == Family::kAdj4 ? Adjacency::kFour : Adjacency::kEight;
}

// Every normalized cell set obtained by adding one neighbor cell to
// `parent`, inserted into `out` by key.
void grow_cells(const std::vector<Point>& parent, Adjacency kind,
                std::unordered_set<std::string>& out) {
  int max_x = 0;
  int max_y = 0;
  for (Point p : parent) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  // Grid with a one-cell margin: 0 empty, 1 occupied, 2 already a candidate.
  const int w = max_x + 3;
  const int h = max_y + 3;
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(w * h), 0);
  auto at = [&](int x, int y) -> std::uint8_t& {
    return grid[static_cast<std::size_t>((x + 1) * h + (y + 1))];
  };
  for (Point p : parent) at(p.x, p.y) = 1;

  std::vector<Point> child(parent.size() + 1);
  for (Point p : parent) {
    for (Point d : offsets(kind)) {
      const Point c{p.x + d.x, p.y + d.y};
      if (at(c.x, c.y) != 0) continue;
      at(c.x, c.y) = 2;
      const Point shift{c.x < 0 ? 1 : 0, c.y < 0 ? 1 : 0};
      auto pos = std::lower_bound(parent.begin(), parent.end(), c);
      auto it = std::copy(parent.begin(), pos, child.begin());
      *it++ = c;
      std::copy(pos, parent.end(), it);
      for (Point& q : child) {
        q.x += shift.x;
        q.y += shift.y;
      }
      out.insert(cells_key(child));
    }
  }
}

// Per-worker maps flushed into one shared CodeStore.
class ClassSink {
 public:
  ClassSink(std::size_t workers, const EnumerationOptions& options)
      : locals_(workers), store_(options.mem_budget_bytes, options.spill_dir) {}

  void add(std::size_t worker, std::string code, std::string witness) {
    auto& local = locals_[worker];
    auto [it, inserted] = local.try_emplace(std::move(code), witness);
    if (!inserted && witness < it->second) it->second = std::move(witness);
    if (local.size() >= kLocalFlush) flush(worker);
  }

  std::vector<CodeRecord> finish() {
    for (std::size_t w = 0; w < locals_.size(); ++w) flush(w);
    return store_.finish();
  }

 private:
  void flush(std::size_t worker) {
    std::lock_guard lock(mutex_);
    for (auto& [code, witness] : locals_[worker]) store_.insert(code, witness);
    locals_[worker].clear();
  }

  std::vector<std::unordered_map<std::string, std::string>> locals_;
  std::mutex mutex_;
  CodeStore store_;
};

std::vector<std::size_t> shard_indices(std::size_t count, std::size_t shard,
                                       std::size_t shards) {
  std::vector<std::size_t> idx;
  for (std::size_t i = shard; i < count; i += shards) idx.push_back(i);
  return idx;
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::kAbstract:
      return "abstract";
    case Family::kAdj4:
      return "adj4";
    case Family::kAdj8:
      return "adj8";
  }
  return "abstract";
}

Family parse_family(std::string_view name) {
  if (name == "abstract") return Family::kAbstract;
  if (name == "adj4") return Family::kAdj4;
  if (name == "adj8") return Family::kAdj8;
  throw DomainError("unknown family '" + std::string(name) + "'");
}

CellSet CellSet::normalized(std::vector<Point> cells) {
  if (cells.empty()) throw DomainError("cell set is empty");
  int min_x = cells[0].x;
  int min_y = cells[0].y;
  for (Point p : cells) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }
  for (Point& p : cells) {
    p.x -= min_x;
    p.y -= min_y;
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    throw DomainError("cell set has repeated cells");
  }
  return CellSet{std::move(cells)};
}

CellSet CellSet::parse(std::string_view text) {
  std::vector<Point> cells;
  auto number = [&](std::string_view field) {
    int value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw DomainError("bad cell coordinate '" + std::string(field) + "'");
    }
    return value;
  };
  while (!text.empty()) {
    const auto semi = text.find(';');
    const std::string_view cell = text.substr(0, semi);
    const auto comma = cell.find(',');
    if (comma == std::string_view::npos) {
      throw DomainError("bad cell '" + std::string(cell) + "'");
    }
    cells.push_back({number(cell.substr(0, comma)), number(cell.substr(comma + 1))});
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return normalized(std::move(cells));
}

std::string CellSet::to_string() const { return cells_string(cells); }

LatticeImage CellSet::to_lattice(Adjacency kind) const {
  return LatticeImage(kind, cells);
}

ImageClass make_class(Family family, const CodeRecord& record) {
  ImageClass c{graph6_decode(record.code), {record.code}, 0, family, std::nullopt};
  c.n = c.representative.size();
  if (family != Family::kAbstract) c.witness = CellSet::parse(record.witness);
  return c;
}

Enumerator::Enumerator(Family family, EnumerationOptions options)
    : family_(family), options_(std::move(options)) {
  if (options_.threads == 0) options_.threads = default_thread_count();
  if (options_.shards == 0) throw DomainError("shard count must be positive");
}

std::vector<CodeRecord> Enumerator::next_level() {
  const std::size_t shards = options_.shards;
  std::vector<std::vector<CodeRecord>> records;
  std::vector<std::string> fixed;
  for (std::size_t s = 0; s < shards; ++s) {
    ShardOutput out = grow(s, shards);
    records.push_back(std::move(out.records));
    std::move(out.fixed.begin(), out.fixed.end(), std::back_inserter(fixed));
  }
  std::vector<CodeRecord> merged = merge_records(std::move(records));
  if (family_ == Family::kAbstract) {
    abstract_parents_.clear();
    abstract_parents_.reserve(merged.size());
    for (const auto& r : merged) abstract_parents_.push_back(graph6_decode(r.code));
  } else {
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    fixed_parents_ = std::move(fixed);
  }
  ++level_;
  return merged;
}

std::vector<CodeRecord> Enumerator::next_level_shard(std::size_t shard,
                                                     std::size_t shards) {
  if (shards == 0 || shard >= shards) throw DomainError("shard index out of range");
  return grow(shard, shards).records;
}

void Enumerator::resume(std::size_t level, const std::vector<CodeRecord>& records) {
  if (family_ != Family::kAbstract) {
    throw ContractError("only abstract enumeration can resume from stored classes");
  }
  abstract_parents_.clear();
  for (const auto& r : records) abstract_parents_.push_back(graph6_decode(r.code));
  level_ = level;
}

std::vector<CellSet> Enumerator::fixed_cell_sets() const {
  std::vector<CellSet> out;
  out.reserve(fixed_parents_.size());
  for (const auto& key : fixed_parents_) out.push_back(CellSet{key_cells(key)});
  return out;
}

Enumerator::ShardOutput Enumerator::grow(std::size_t shard, std::size_t shards) const {
  if (level_ == 0) {
    ShardOutput out;
    if (shard == 0) {
      out.records.push_back({graph6_encode(DigitalImage(1)),
                             family_ == Family::kAbstract ? "" : "0,0"});
      if (family_ != Family::kAbstract) out.fixed.push_back(cells_key({{0, 0}}));
    }
    return out;
  }
  return family_ == Family::kAbstract ? grow_abstract(shard, shards)
                                      : grow_lattice(shard, shards);
}

Enumerator::ShardOutput Enumerator::grow_abstract(std::size_t shard,
                                                  std::size_t shards) const {
  const auto mine = shard_indices(abstract_parents_.size(), shard, shards);
  const std::size_t k = level_;  // parent point count
  ClassSink sink(options_.threads, options_);
  parallel_for(mine.size(), options_.threads, [&](std::size_t i, std::size_t worker) {
    const DigitalImage& parent = abstract_parents_[mine[i]];
    DigitalImage child(k + 1);
    for (std::size_t a = 0; a < k; ++a) {
      for (Mask r = parent.neighbors(a) & ~low_bits(a + 1); r; r &= r - 1) {
        child.connect(a, static_cast<std::size_t>(std::countr_zero(r)));
      }
    }
    for (Mask subset = 1; subset < bit(k); ++subset) {
      DigitalImage g = child;
      for (Mask s = subset; s; s &= s - 1) {
        g.connect(k, static_cast<std::size_t>(std::countr_zero(s)));
      }
      sink.add(worker, canonical_form(g).code, "");
    }
  });
  return {{}, sink.finish()};
}

Enumerator::ShardOutput Enumerator::grow_lattice(std::size_t shard,
                                                 std::size_t shards) const {
  const Adjacency kind = family_kind(family_);
  const auto mine = shard_indices(fixed_parents_.size(), shard, shards);
  const std::size_t workers = std::max<std::size_t>(1, options_.threads);

  std::vector<std::unordered_set<std::string>> local(workers);
  parallel_for(mine.size(), workers, [&](std::size_t i, std::size_t worker) {
    grow_cells(key_cells(fixed_parents_[mine[i]]), kind, local[worker]);
  });
  std::vector<std::string> fixed;
  for (auto& set : local) {
    fixed.insert(fixed.end(), std::make_move_iterator(set.begin()),
                 std::make_move_iterator(set.end()));
    set = {};
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());

  ClassSink sink(workers, options_);
  parallel_for(fixed.size(), workers, [&](std::size_t i, std::size_t worker) {
    const auto cells = key_cells(fixed[i]);
    const DigitalImage image = lattice_to_image(LatticeImage(kind, cells));
    sink.add(worker, canonical_form(image).code, cells_string(cells));
  });
  return {std::move(fixed), sink.finish()};
}

namespace {

std::vector<ImageClass> run_to_level(Family family, std::size_t n,
                                     const EnumerationOptions& options) {
  if (n == 0) throw DomainError("point count must be positive");
  Enumerator e(family, options);
  std::vector<CodeRecord> records;
  while (e.level() < n) records = e.next_level();
  std::vector<ImageClass> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(make_class(family, r));
  return out;
}

std::vector<CellSet> fixed_sets(Family family, std::size_t n) {
  if (n == 0) throw DomainError("cell count must be positive");
  Enumerator e(family, {});
  while (e.level() < n) e.next_level();
  return e.fixed_cell_sets();
}

}  // namespace

std::vector<ImageClass> enumerate_abstract_connected(std::size_t n,
                                                     const EnumerationOptions& options) {
  return run_to_level(Family::kAbstract, n, options);
}

std::vector<CellSet> enumerate_fixed_polyominoes(std::size_t n) {
  return fixed_sets(Family::kAdj4, n);
}

std::vector<CellSet> enumerate_fixed_polyplets(std::size_t n) {
  return fixed_sets(Family::kAdj8, n);
}

std::vector<ImageClass> enumerate_lattice_images(Adjacency kind, std::size_t n,
                                                 const EnumerationOptions& options) {
  return run_to_level(kind == Adjacency::kFour ? Family::kAdj4 : Family::kAdj8, n,
                      options);
}

}  // namespace digitop
