#ifndef DIGITOP_ENUMERATE_HPP_
#define DIGITOP_ENUMERATE_HPP_

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digitop/canonical.hpp"
#include "digitop/code_store.hpp"
#include "digitop/image.hpp"

namespace digitop {

enum class Family { kAbstract, kAdj4, kAdj8 };

std::string_view family_name(Family family) noexcept;
/// "abstract", "adj4" or "adj8"; throws DomainError otherwise.
Family parse_family(std::string_view name);

/// A finite cell set translated so that min x = 0 and min y = 0, cells in
/// lexicographic (x, y) order.
struct CellSet {
  std::vector<Point> cells;

  /// Sorts and translates `cells`; throws DomainError if empty or repeated.
  static CellSet normalized(std::vector<Point> cells);
  /// Parses "x,y;x,y;..." and normalizes.
  static CellSet parse(std::string_view text);

  /// "x,y;x,y;..." in lexicographic cell order.
  std::string to_string() const;
  LatticeImage to_lattice(Adjacency kind) const;
  std::size_t size() const noexcept { return cells.size(); }

  friend auto operator<=>(const CellSet&, const CellSet&) = default;
};

struct ImageClass {
  DigitalImage representative;  // canonically labeled
  CanonicalForm canonical;
  std::size_t n = 0;
  Family family = Family::kAbstract;
  std::optional<CellSet> witness;  // lattice families only
};

ImageClass make_class(Family family, const CodeRecord& record);

struct EnumerationOptions {
  std::size_t threads = 0;  // 0: default_thread_count()
  /// Parents are split round-robin into this many shards; every shard is
  /// generated separately and the results merged by sorted union.
  std::size_t shards = 1;
  std::size_t mem_budget_bytes = std::size_t{1} << 30;
  std::filesystem::path spill_dir = std::filesystem::temp_directory_path();
};

/// Level-by-level generator of isomorphism classes for one family.
///
/// Abstract images on n points are every (n-1)-point class plus a new point
/// joined to a nonempty subset of the old points; every connected graph has
/// a non-cut vertex, so nothing is missed. Lattice images come from fixed
/// polyominoes (kind 4) or polyplets (kind 8), grown one cell at a time at
/// the neighbors of existing cells and deduplicated up to translation, then
/// mapped to adjacency graphs. Classes are deduplicated by canonical code.
class Enumerator {
 public:
  explicit Enumerator(Family family, EnumerationOptions options = {});

  Family family() const noexcept { return family_; }
  /// Point count of the most recent level (0 before the first call).
  std::size_t level() const noexcept { return level_; }

  /// Classes on level() + 1 points, sorted by code; advances the level.
  std::vector<CodeRecord> next_level();

  /// The part of level() + 1 generated from the parents with index
  /// congruent to `shard` mod `shards`. Does not advance. Level 1 has a
  /// single implicit parent, owned by shard 0.
  std::vector<CodeRecord> next_level_shard(std::size_t shard, std::size_t shards);

  /// Abstract family only: continue from a previously computed level whose
  /// classes are `records`. Throws ContractError for lattice families.
  void resume(std::size_t level, const std::vector<CodeRecord>& records);

  /// Fixed cell sets of the current level (lattice families).
  std::vector<CellSet> fixed_cell_sets() const;

 private:
  struct ShardOutput {
    std::vector<std::string> fixed;  // sorted keys; lattice families only
    std::vector<CodeRecord> records;
  };
  ShardOutput grow(std::size_t shard, std::size_t shards) const;
  ShardOutput grow_abstract(std::size_t shard, std::size_t shards) const;
  ShardOutput grow_lattice(std::size_t shard, std::size_t shards) const;

  Family family_;
  EnumerationOptions options_;
  std::size_t level_ = 0;
  std::vector<DigitalImage> abstract_parents_;
  std::vector<std::string> fixed_parents_;
};

/// Throws DomainError for n = 0.
std::vector<ImageClass> enumerate_abstract_connected(std::size_t n,
                                                     const EnumerationOptions& options = {});
std::vector<CellSet> enumerate_fixed_polyominoes(std::size_t n);
std::vector<CellSet> enumerate_fixed_polyplets(std::size_t n);
std::vector<ImageClass> enumerate_lattice_images(Adjacency kind, std::size_t n,
                                                 const EnumerationOptions& options = {});

}  // namespace digitop

#endif  // DIGITOP_ENUMERATE_HPP_
