#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "digitop/catalog.hpp"
#include "digitop/error.hpp"
#include "digitop/graph6.hpp"
#include "digitop/lattice_tools.hpp"
#include "doctest.h"

using namespace digitop;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("digitop-catalog-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CatalogEntry abstract_entry(const std::string& g6) {
  const auto g = graph6_decode(g6);
  ImageClass c{canonical_image(g), canonical_form(g), g.size(), Family::kAbstract, {}};
  return make_entry(c);
}

}  // namespace

TEST_SUITE("catalog files") {
  TEST_CASE("entries carry classification, planarity and the cycle flag") {
    const auto c5 = abstract_entry(graph6_encode(cycle_image(5)));
    CHECK(c5.n == 5);
    CHECK_FALSE(c5.reducible);
    CHECK_FALSE(c5.rigid);
    CHECK(c5.planar);
    CHECK(c5.is_cycle);
    CHECK_FALSE(c5.witness_cells.has_value());

    const auto g = abstract_entry("GrDKPK");
    CHECK(g.nonrigid_irreducible());
    CHECK_FALSE(g.planar);
    CHECK_FALSE(g.is_cycle);
  }

  TEST_CASE("file names") {
    CHECK(catalog_file("out", Family::kAdj4, 7) == fs::path("out") / "adj4-07.csv");
    CHECK(catalog_file("out", Family::kAbstract, 12) == fs::path("out") / "abstract-12.csv");
  }

  TEST_CASE("CSV text round trip") {
    const auto classes = enumerate_lattice_images(Adjacency::kFour, 4);
    std::vector<CatalogEntry> entries;
    for (const auto& c : classes) entries.push_back(make_entry(c));
    entries.push_back(abstract_entry("Dhc"));
    const auto text = format_catalog_csv(entries);
    CHECK(text.rfind(std::string(kCatalogHeader) + "\n", 0) == 0);
    CHECK(text.find("\"0,0;") != std::string::npos);
    CHECK(parse_catalog_csv(text) == entries);
  }

  TEST_CASE("known row") {
    const auto text = format_catalog_csv({abstract_entry("Dhc")});
    CHECK(text == std::string(kCatalogHeader) + "\nabstract,5,DLo,0,0,0,1,1,\n");
  }

  TEST_CASE("malformed bodies are rejected") {
    CHECK_THROWS_AS(parse_catalog_csv("nonsense\n"), IoError);
    CHECK_THROWS_AS(parse_catalog_csv(std::string(kCatalogHeader) + "\nabstract,5,Dhc,0,0\n"),
                    IoError);
    CHECK_THROWS_AS(
        parse_catalog_csv(std::string(kCatalogHeader) + "\nadj5,5,Dhc,0,0,0,1,1,\n"),
        std::exception);
  }

  TEST_CASE("files are written whole") {
    TempDir dir;
    const auto path = dir.path / "abstract-05.csv";
    const std::vector<CatalogEntry> entries{abstract_entry("Dhc")};
    write_catalog_file(path, entries);
    CHECK(read_catalog_file(path) == entries);
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& item : fs::directory_iterator(dir.path)) ++files;
    CHECK(files == 1);
    CHECK_THROWS_AS(read_catalog_file(dir.path / "missing.csv"), IoError);
  }
}

TEST_SUITE("catalog builds") {
  TEST_CASE("abstract catalog through 6 points") {
    TempDir dir;
    std::vector<std::size_t> levels;
    BuildOptions options;
    options.on_level = [&](std::size_t n, std::size_t) { levels.push_back(n); };
    const auto entries = build_catalog(Family::kAbstract, 6, dir.path, options);
    CHECK(levels == std::vector<std::size_t>{1, 2, 3, 4, 5, 6});
    CHECK(entries.size() == 1 + 1 + 2 + 6 + 21 + 112);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(fs::exists(catalog_file(dir.path, Family::kAbstract, n)));

    const auto first = slurp(catalog_file(dir.path, Family::kAbstract, 6));
    build_catalog(Family::kAbstract, 6, dir.path);
    CHECK(slurp(catalog_file(dir.path, Family::kAbstract, 6)) == first);

    const auto table = load_report(dir.path, Family::kAbstract);
    REQUIRE(table.rows.size() == 6);
    CHECK(table.rows[4].images == 21);
    CHECK(table.rows[4].pointed_irreducible == 1);
    CHECK(table.rows[4].irreducible == 1);
    CHECK(table.rows[4].rigid == 0);
    CHECK(table.warnings.empty());
  }

  TEST_CASE("lattice witnesses reproduce their codes") {
    TempDir dir;
    for (Family family : {Family::kAdj4, Family::kAdj8}) {
      const auto kind = family == Family::kAdj4 ? Adjacency::kFour : Adjacency::kEight;
      for (const auto& e : build_catalog(family, 6, dir.path)) {
        REQUIRE(e.witness_cells.has_value());
        const auto cells = CellSet::parse(*e.witness_cells);
        CHECK(canonical_form(lattice_to_image(cells.to_lattice(kind))).code == e.canonical);
      }
    }
  }

  TEST_CASE("sharded build merges to the same files") {
    TempDir whole;
    TempDir sharded;
    build_catalog(Family::kAdj8, 5, whole.path);
    for (std::size_t s = 0; s < 3; ++s) {
      const auto status = build_catalog_shard(Family::kAdj8, 5, sharded.path, s, 3);
      CHECK(status.merged == (s == 2));
      CHECK(fs::exists(fs::path(status.shard_stem.string() + ".g6")));
    }
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK(slurp(catalog_file(whole.path, Family::kAdj8, n)) ==
            slurp(catalog_file(sharded.path, Family::kAdj8, n)));
    }
  }

  TEST_CASE("in-process shards give identical files") {
    TempDir a;
    TempDir b;
    build_catalog(Family::kAbstract, 6, a.path);
    BuildOptions options;
    options.enumeration.shards = 4;
    options.enumeration.mem_budget_bytes = 1024;
    options.enumeration.spill_dir = b.path;
    build_catalog(Family::kAbstract, 6, b.path, options);
    for (std::size_t n = 1; n <= 6; ++n) {
      CHECK(slurp(catalog_file(a.path, Family::kAbstract, n)) ==
            slurp(catalog_file(b.path, Family::kAbstract, n)));
    }
  }
}

TEST_SUITE("reports") {
  TEST_CASE("rendering") {
    ReportTable table{Family::kAdj8, {{1, 1, 1, 1, 1}, {2, 1, 0, 0, 0}}, {}};
    CHECK(render_report(table, ReportFormat::kCsv) ==
          "n,1,2\nimages,1,1\npointed_irreducible,1,0\nirreducible,1,0\nrigid,1,0\n");
    CHECK(render_report(table, ReportFormat::kMarkdown) ==
          "| n | 1 | 2 |\n|---|---:|---:|\n| Images | 1 | 1 |\n"
          "| Pointed irreducible | 1 | 0 |\n| Irreducible | 1 | 0 |\n| Rigid | 1 | 0 |\n");
  }

  TEST_CASE("rows respect the hierarchy") {
    TempDir dir;
    build_catalog(Family::kAdj4, 8, dir.path);
    for (const auto& r : load_report(dir.path, Family::kAdj4).rows) {
      CHECK(r.images >= r.pointed_irreducible);
      CHECK(r.pointed_irreducible >= r.irreducible);
      CHECK(r.irreducible >= r.rigid);
    }
    const auto csv = render_report(dir.path, Family::kAdj4, ReportFormat::kCsv);
    CHECK(csv.find("images,1,1,1,3,4,10,19,51\n") != std::string::npos);
    CHECK(csv.find("irreducible,1,0,0,0,0,0,0,1\n") != std::string::npos);
  }

  TEST_CASE("a missing level is omitted with a warning") {
    TempDir dir;
    build_catalog(Family::kAbstract, 4, dir.path);
    fs::remove(catalog_file(dir.path, Family::kAbstract, 3));
    const auto table = load_report(dir.path, Family::kAbstract);
    CHECK(table.rows.size() == 3);
    REQUIRE(table.warnings.size() == 1);
    CHECK(table.warnings[0].find('3') != std::string::npos);
    CHECK_THROWS_AS(load_report(dir.path, Family::kAdj8), IoError);
  }
}

TEST_SUITE("conjecture scan") {
  TEST_CASE("empty catalog is consistent") {
    TempDir dir;
    const auto report = scan_conjectures(dir.path);
    CHECK(report.consistent());
    CHECK(report.entries_scanned == 0);
    CHECK(report.nonrigid_irreducible.empty());
    CHECK(render_conjecture_report(report).ends_with("consistent\n"));
  }

  TEST_CASE("real catalogs are consistent") {
    TempDir dir;
    build_catalog(Family::kAbstract, 7, dir.path);
    build_catalog(Family::kAdj4, 8, dir.path);
    build_catalog(Family::kAdj8, 6, dir.path);
    const auto report = scan_conjectures(dir.path);
    CHECK(report.consistent());
    for (const auto& e : report.nonrigid_irreducible) CHECK(e.is_cycle);
  }

  TEST_CASE("synthetic counterexamples are flagged") {
    auto planar = abstract_entry("GrDKPK");
    planar.planar = true;
    auto r1 = scan_conjectures(std::vector<CatalogEntry>{planar});
    REQUIRE(r1.counterexamples.size() == 1);
    CHECK(r1.counterexamples[0].conjecture == 1);
    CHECK(render_conjecture_report(r1).ends_with("counterexample found\n"));

    CatalogEntry lattice_noncycle{Family::kAdj8, 6, "E]~o", false, false, false, true, false, "0,0"};
    auto r3 = scan_conjectures(std::vector<CatalogEntry>{lattice_noncycle});
    REQUIRE(r3.counterexamples.size() == 1);
    CHECK(r3.counterexamples[0].conjecture == 3);

    CatalogEntry reducible_cycle{Family::kAdj4, 8, "G?????", true, false, false, true, true, "0,0"};
    auto r2 = scan_conjectures(std::vector<CatalogEntry>{reducible_cycle});
    REQUIRE(r2.counterexamples.size() == 1);
    CHECK(r2.counterexamples[0].conjecture == 2);

    CatalogEntry c4{Family::kAdj4, 4, "Cr", true, true, false, true, true, "0,0"};
    CHECK(scan_conjectures(std::vector<CatalogEntry>{c4}).consistent());
  }

  TEST_CASE("written counterexample is found on disk") {
    TempDir dir;
    auto planar = abstract_entry("GrDKPK");
    planar.planar = true;
    write_catalog_file(catalog_file(dir.path, Family::kAbstract, 8), {planar});
    CHECK_FALSE(scan_conjectures(dir.path).consistent());
  }
}

TEST_SUITE("lattice text") {
  TEST_CASE("parse") {
    const auto l = parse_lattice_text("kind=8\n0 0\n1 1\n\n2 2\n");
    CHECK(l.kind() == Adjacency::kEight);
    CHECK(l.size() == 3);
    CHECK(lattice_to_image(l).edge_count() == 2);
    CHECK(parse_lattice_text("kind=4\r\n0 0\r\n0 1\r\n").kind() == Adjacency::kFour);
  }

  TEST_CASE("errors") {
    CHECK_THROWS(parse_lattice_text(""));
    CHECK_THROWS(parse_lattice_text("kind=6\n0 0\n"));
    CHECK_THROWS(parse_lattice_text("kind=4\n0\n"));
    CHECK_THROWS(parse_lattice_text("kind=4\n"));
    CHECK_THROWS(parse_lattice_text("kind=4\n0 0\n0 0\n"));
  }
}
