#ifndef DIGITOP_CATALOG_HPP_
#define DIGITOP_CATALOG_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digitop/enumerate.hpp"
#include "digitop/homotopy.hpp"

namespace digitop {

inline constexpr std::string_view kCatalogHeader =
    "family,n,canonical,reducible,pointed_reducible,rigid,planar,is_cycle,witness_cells";

struct CatalogEntry {
  Family family = Family::kAbstract;
  std::size_t n = 0;
  std::string canonical;
  bool reducible = false;
  bool pointed_reducible = false;
  bool rigid = false;
  bool planar = false;
  bool is_cycle = false;
  std::optional<std::string> witness_cells;

  Classification classification() const noexcept {
    return {reducible, pointed_reducible, rigid};
  }
  bool nonrigid_irreducible() const noexcept { return !reducible && !rigid; }

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// Classifies one class and fills in planarity and the cycle flag.
CatalogEntry make_entry(const ImageClass& image_class);

/// <dir>/<family>-<nn>.csv
std::filesystem::path catalog_file(const std::filesystem::path& dir, Family family,
                                   std::size_t n);

/// Header line plus one row per entry; booleans as 0/1, the witness field
/// double-quoted because it contains commas.
std::string format_catalog_csv(const std::vector<CatalogEntry>& entries);
/// Throws IoError on a malformed file body.
std::vector<CatalogEntry> parse_catalog_csv(std::string_view text);

/// Writes through a temporary file and rename, so a file either holds a
/// complete level or does not exist.
void write_catalog_file(const std::filesystem::path& path,
                        const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> read_catalog_file(const std::filesystem::path& path);

struct BuildOptions {
  EnumerationOptions enumeration;
  /// Called after each level is written.
  std::function<void(std::size_t n, std::size_t classes)> on_level;
};

/// Enumerates, classifies and writes one CSV per n = 1..n_max, each sorted by
/// canonical code; returns every entry. Levels whose file already exists are
/// reused for the abstract family (their rows are the next level's parents);
/// lattice levels are regenerated because their cell frontier is not
/// persisted. Rerunning yields byte-identical files.
std::vector<CatalogEntry> build_catalog(Family family, std::size_t n_max,
                                        const std::filesystem::path& out_dir,
                                        const BuildOptions& options = {});

struct ShardBuildStatus {
  std::filesystem::path shard_stem;  // intermediate files written by this shard
  bool merged = false;               // this call completed the top-level CSV
};

/// Process-level sharding. Levels below n_max are built in full; the top
/// level's parents are split round-robin and only `shard`'s part is written
/// as intermediate shard files. Once all `shards` parts exist, the calling
/// process merges them by sorted union and writes the top-level CSV.
ShardBuildStatus build_catalog_shard(Family family, std::size_t n_max,
                                     const std::filesystem::path& out_dir,
                                     std::size_t shard, std::size_t shards,
                                     const BuildOptions& options = {});

struct ReportRow {
  std::size_t n = 0;
  std::size_t images = 0;
  std::size_t pointed_irreducible = 0;
  std::size_t irreducible = 0;
  std::size_t rigid = 0;
};

struct ReportTable {
  Family family = Family::kAbstract;
  std::vector<ReportRow> rows;  // increasing n
  std::vector<std::string> warnings;
};

ReportRow summarize(std::size_t n, const std::vector<CatalogEntry>& entries);

/// Counts per available n. A gap below the largest n is reported as a
/// warning and its column omitted. Throws IoError if no file exists.
ReportTable load_report(const std::filesystem::path& catalog_dir, Family family);

enum class ReportFormat { kCsv, kMarkdown };

/// Four rows (images, pointed irreducible, irreducible, rigid) across n.
std::string render_report(const ReportTable& table, ReportFormat format);
std::string render_report(const std::filesystem::path& catalog_dir, Family family,
                          ReportFormat format);

struct ConjectureFinding {
  int conjecture = 0;  // 1: abstract planarity, 2: adj4 cycles, 3: adj8 cycles
  CatalogEntry entry;
  std::string reason;
};

struct ConjectureReport {
  std::vector<CatalogEntry> nonrigid_irreducible;
  std::vector<ConjectureFinding> counterexamples;
  std::size_t entries_scanned = 0;

  bool consistent() const noexcept { return counterexamples.empty(); }
};

/// Flags abstract nonrigid irreducible non-cycles that are planar, lattice
/// nonrigid irreducible entries that are not cycles on more than 4 points,
/// and lattice cycles on more than 4 points that are not nonrigid
/// irreducible.
ConjectureReport scan_conjectures(const std::vector<CatalogEntry>& entries);
ConjectureReport scan_conjectures(const std::filesystem::path& catalog_dir);
std::string render_conjecture_report(const ConjectureReport& report);

/// Every catalog file in `dir` (any family), in file-name order.
std::vector<CatalogEntry> read_catalog_dir(const std::filesystem::path& dir);

/// "kind=4" or "kind=8" on the first line, then one "x y" pair per line.
LatticeImage parse_lattice_text(std::string_view text);

}  // namespace digitop

#endif  // DIGITOP_CATALOG_HPP_
