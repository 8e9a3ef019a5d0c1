#include "digitop/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "digitop/error.hpp"
#include "digitop/graph6.hpp"
#include "digitop/parallel.hpp"
#include "digitop/planarity.hpp"

namespace digitop {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) throw IoError("unterminated quote in catalog row");
  return fields;
}

bool parse_flag(const std::string& field) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw IoError("catalog boolean must be 0 or 1, got '" + field + "'");
}

std::vector<CatalogEntry> classify_records(Family family,
                                           const std::vector<CodeRecord>& records,
                                           std::size_t threads) {
  std::vector<CatalogEntry> entries(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i, std::size_t) {
    entries[i] = make_entry(make_class(family, records[i]));
  });
  return entries;
}

std::vector<CodeRecord> to_records(const std::vector<CatalogEntry>& entries) {
  std::vector<CodeRecord> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({e.canonical, e.witness_cells.value_or("")});
  return out;
}

std::size_t thread_count(const BuildOptions& options) {
  return options.enumeration.threads ? options.enumeration.threads
                                     : default_thread_count();
}

void write_level(const std::filesystem::path& out_dir, Family family, std::size_t n,
                 const std::vector<CatalogEntry>& entries, const BuildOptions& options) {
  write_catalog_file(catalog_file(out_dir, family, n), entries);
  if (options.on_level) options.on_level(n, entries.size());
}

// Levels 1..last through `e`, written to disk; abstract levels already on
// disk are reused.
std::vector<CatalogEntry> build_levels(Enumerator& e, std::size_t last,
                                       const std::filesystem::path& out_dir,
                                       const BuildOptions& options) {
  std::vector<CatalogEntry> all;
  const Family family = e.family();
  while (e.level() < last) {
    const std::size_t n = e.level() + 1;
    const auto path = catalog_file(out_dir, family, n);
    if (family == Family::kAbstract && std::filesystem::exists(path)) {
      auto entries = read_catalog_file(path);
      const bool matches = std::all_of(entries.begin(), entries.end(), [&](const auto& x) {
        return x.family == family && x.n == n;
      });
      if (matches && !entries.empty()) {
        e.resume(n, to_records(entries));
        if (options.on_level) options.on_level(n, entries.size());
        all.insert(all.end(), entries.begin(), entries.end());
        continue;
      }
    }
    const auto entries = classify_records(family, e.next_level(), thread_count(options));
    write_level(out_dir, family, n, entries, options);
    all.insert(all.end(), entries.begin(), entries.end());
  }
  return all;
}

std::filesystem::path shard_stem(const std::filesystem::path& out_dir, Family family,
                                 std::size_t n, std::size_t shard, std::size_t shards) {
  char name[96];
  std::snprintf(name, sizeof name, "%s-%02zu.shard-%zu-of-%zu",
                std::string(family_name(family)).c_str(), n, shard, shards);
  return out_dir / "shards" / name;
}

}  // namespace

CatalogEntry make_entry(const ImageClass& image_class) {
  const DigitalImage& image = image_class.representative;
  const Classification c = classify(image);
  CatalogEntry e;
  e.family = image_class.family;
  e.n = image_class.n;
  e.canonical = image_class.canonical.code;
  e.reducible = c.reducible;
  e.pointed_reducible = c.pointed_reducible;
  e.rigid = c.rigid;
  e.planar = is_planar(image);
  e.is_cycle = is_cycle(image);
  if (image_class.witness) e.witness_cells = image_class.witness->to_string();
  return e;
}

std::filesystem::path catalog_file(const std::filesystem::path& dir, Family family,
                                   std::size_t n) {
  char name[64];
  std::snprintf(name, sizeof name, "%s-%02zu.csv",
                std::string(family_name(family)).c_str(), n);
  return dir / name;
}

std::string format_catalog_csv(const std::vector<CatalogEntry>& entries) {
  std::string out(kCatalogHeader);
  out.push_back('\n');
  for (const auto& e : entries) {
    out += family_name(e.family);
    out += ',' + std::to_string(e.n) + ',' + e.canonical;
    for (bool flag : {e.reducible, e.pointed_reducible, e.rigid, e.planar, e.is_cycle}) {
      out += flag ? ",1" : ",0";
    }
    out.push_back(',');
    if (e.witness_cells) out += '"' + *e.witness_cells + '"';
    out.push_back('\n');
  }
  return out;
}

std::vector<CatalogEntry> parse_catalog_csv(std::string_view text) {
  std::vector<CatalogEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1) {
      if (line != kCatalogHeader) throw IoError("unexpected catalog header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) {
      throw IoError("catalog line " + std::to_string(line_no) + " has " +
                    std::to_string(f.size()) + " fields");
    }
    CatalogEntry e;
    try {
      e.family = parse_family(f[0]);
    } catch (const DomainError& err) {
      throw IoError(err.what());
    }
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), e.n);
    if (ec != std::errc() || ptr != f[1].data() + f[1].size()) {
      throw IoError("bad point count on catalog line " + std::to_string(line_no));
    }
    e.canonical = f[2];
    e.reducible = parse_flag(f[3]);
    e.pointed_reducible = parse_flag(f[4]);
    e.rigid = parse_flag(f[5]);
    e.planar = parse_flag(f[6]);
    e.is_cycle = parse_flag(f[7]);
    if (!f[8].empty()) e.witness_cells = f[8];
    entries.push_back(std::move(e));
  }
  if (line_no == 0) throw IoError("empty catalog file");
  return entries;
}

void write_catalog_file(const std::filesystem::path& path,
                        const std::vector<CatalogEntry>& entries) {
  write_text_atomic(path, format_catalog_csv(entries));
}

std::vector<CatalogEntry> read_catalog_file(const std::filesystem::path& path) {
  return parse_catalog_csv(read_text(path));
}

std::vector<CatalogEntry> build_catalog(Family family, std::size_t n_max,
                                        const std::filesystem::path& out_dir,
                                        const BuildOptions& options) {
  if (n_max == 0) throw DomainError("n_max must be positive");
  Enumerator e(family, options.enumeration);
  return build_levels(e, n_max, out_dir, options);
}

ShardBuildStatus build_catalog_shard(Family family, std::size_t n_max,
                                     const std::filesystem::path& out_dir,
                                     std::size_t shard, std::size_t shards,
                                     const BuildOptions& options) {
  if (n_max == 0) throw DomainError("n_max must be positive");
  if (shards == 0 || shard >= shards) throw DomainError("shard index out of range");
  BuildOptions lower = options;
  lower.enumeration.shards = 1;
  Enumerator e(family, lower.enumeration);
  build_levels(e, n_max - 1, out_dir, lower);

  ShardBuildStatus status;
  status.shard_stem = shard_stem(out_dir, family, n_max, shard, shards);
  std::filesystem::create_directories(status.shard_stem.parent_path());
  write_shard_files(status.shard_stem, e.next_level_shard(shard, shards));

  std::vector<std::vector<CodeRecord>> parts;
  for (std::size_t s = 0; s < shards; ++s) {
    auto stem = shard_stem(out_dir, family, n_max, s, shards);
    auto g6 = stem;
    g6 += ".g6";
    if (!std::filesystem::exists(g6)) return status;
    parts.push_back(read_shard_files(stem));
  }
  const auto entries =
      classify_records(family, merge_records(std::move(parts)), thread_count(options));
  write_level(out_dir, family, n_max, entries, options);
  status.merged = true;
  return status;
}

ReportRow summarize(std::size_t n, const std::vector<CatalogEntry>& entries) {
  ReportRow row;
  row.n = n;
  for (const auto& e : entries) {
    ++row.images;
    row.pointed_irreducible += e.pointed_reducible ? 0 : 1;
    row.irreducible += e.reducible ? 0 : 1;
    row.rigid += e.rigid ? 1 : 0;
  }
  return row;
}

ReportTable load_report(const std::filesystem::path& catalog_dir, Family family) {
  ReportTable table;
  table.family = family;
  const std::regex pattern(std::string(family_name(family)) + "-([0-9]+)\\.csv");
  std::map<std::size_t, std::filesystem::path> files;
  std::error_code ec;
  for (const auto& item : std::filesystem::directory_iterator(catalog_dir, ec)) {
    std::smatch m;
    const std::string name = item.path().filename().string();
    if (std::regex_match(name, m, pattern)) files[std::stoul(m[1].str())] = item.path();
  }
  if (ec) throw IoError("cannot read catalog directory " + catalog_dir.string());
  if (files.empty()) {
    throw IoError("no " + std::string(family_name(family)) + " catalog files in " +
                  catalog_dir.string());
  }
  const std::size_t last = files.rbegin()->first;
  for (std::size_t n = 1; n <= last; ++n) {
    auto it = files.find(n);
    if (it == files.end()) {
      table.warnings.push_back("warning: " + std::string(family_name(family)) + " n=" +
                               std::to_string(n) + " missing; column omitted");
      continue;
    }
    table.rows.push_back(summarize(n, read_catalog_file(it->second)));
  }
  return table;
}

std::string render_report(const ReportTable& table, ReportFormat format) {
  struct Line {
    const char* csv;
    const char* markdown;
    std::size_t ReportRow::*field;
  };
  static constexpr Line lines[] = {
      {"images", "Images", &ReportRow::images},
      {"pointed_irreducible", "Pointed irreducible", &ReportRow::pointed_irreducible},
      {"irreducible", "Irreducible", &ReportRow::irreducible},
      {"rigid", "Rigid", &ReportRow::rigid},
  };
  std::string out;
  if (format == ReportFormat::kCsv) {
    out = "n";
    for (const auto& r : table.rows) out += ',' + std::to_string(r.n);
    out.push_back('\n');
    for (const auto& line : lines) {
      out += line.csv;
      for (const auto& r : table.rows) out += ',' + std::to_string(r.*(line.field));
      out.push_back('\n');
    }
    return out;
  }
  out = "| n |";
  for (const auto& r : table.rows) out += ' ' + std::to_string(r.n) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < table.rows.size(); ++i) out += "---:|";
  out.push_back('\n');
  for (const auto& line : lines) {
    out += std::string("| ") + line.markdown + " |";
    for (const auto& r : table.rows) out += ' ' + std::to_string(r.*(line.field)) + " |";
    out.push_back('\n');
  }
  return out;
}

std::string render_report(const std::filesystem::path& catalog_dir, Family family,
                          ReportFormat format) {
  return render_report(load_report(catalog_dir, family), format);
}

ConjectureReport scan_conjectures(const std::vector<CatalogEntry>& entries) {
  ConjectureReport report;
  report.entries_scanned = entries.size();
  for (const auto& e : entries) {
    const bool nri = e.nonrigid_irreducible();
    if (nri) report.nonrigid_irreducible.push_back(e);
    if (e.family == Family::kAbstract) {
      if (nri && !e.is_cycle && e.planar) {
        report.counterexamples.push_back(
            {1, e, "nonrigid irreducible, not a cycle, planar adjacency graph"});
      }
      continue;
    }
    const int conjecture = e.family == Family::kAdj4 ? 2 : 3;
    const bool long_cycle = e.is_cycle && e.n > 4;
    if (nri && !long_cycle) {
      report.counterexamples.push_back(
          {conjecture, e, "nonrigid irreducible but not isomorphic to C_n, n > 4"});
    } else if (!nri && long_cycle) {
      report.counterexamples.push_back(
          {conjecture, e, "isomorphic to C_n, n > 4, but not nonrigid irreducible"});
    }
  }
  return report;
}

ConjectureReport scan_conjectures(const std::filesystem::path& catalog_dir) {
  return scan_conjectures(read_catalog_dir(catalog_dir));
}

std::string render_conjecture_report(const ConjectureReport& report) {
  std::string out = "scanned " + std::to_string(report.entries_scanned) + " entries\n";
  out += "nonrigid irreducible entries: " +
         std::to_string(report.nonrigid_irreducible.size()) + "\n";
  for (const auto& e : report.nonrigid_irreducible) {
    out += "  " + std::string(family_name(e.family)) + " n=" + std::to_string(e.n) + " " +
           e.canonical + (e.is_cycle ? " cycle" : "") + (e.planar ? " planar" : " nonplanar") +
           "\n";
  }
  for (const auto& f : report.counterexamples) {
    out += "COUNTEREXAMPLE conjecture " + std::to_string(f.conjecture) + ": " +
           std::string(family_name(f.entry.family)) + " n=" + std::to_string(f.entry.n) +
           " " + f.entry.canonical + " (" + f.reason + ")\n";
  }
  out += report.consistent() ? "consistent\n" : "counterexample found\n";
  return out;
}

std::vector<CatalogEntry> read_catalog_dir(const std::filesystem::path& dir) {
  const std::regex pattern("(abstract|adj4|adj8)-[0-9]+\\.csv");
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
    if (std::regex_match(item.path().filename().string(), pattern)) {
      files.push_back(item.path());
    }
  }
  if (ec) throw IoError("cannot read catalog directory " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> all;
  for (const auto& f : files) {
    auto entries = read_catalog_file(f);
    all.insert(all.end(), std::make_move_iterator(entries.begin()),
               std::make_move_iterator(entries.end()));
  }
  return all;
}

LatticeImage parse_lattice_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Adjacency kind{};
  bool have_kind = false;
  std::vector<Point> points;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!have_kind) {
      if (line == "kind=4") {
        kind = Adjacency::kFour;
      } else if (line == "kind=8") {
        kind = Adjacency::kEight;
      } else {
        throw DomainError("lattice input must start with kind=4 or kind=8");
      }
      have_kind = true;
      continue;
    }
    std::istringstream pair(line);
    Point p;
    std::string extra;
    if (!(pair >> p.x >> p.y) || (pair >> extra)) {
      throw DomainError("bad lattice point line '" + line + "'");
    }
    points.push_back(p);
  }
  if (!have_kind) throw DomainError("lattice input is empty");
  return LatticeImage(kind, std::move(points));
}

}  // namespace digitop
