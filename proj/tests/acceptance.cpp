// Acceptance run: builds the full catalogs in a scratch directory and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "digitop/canonical.hpp"
#include "digitop/catalog.hpp"
#include "digitop/graph6.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/lattice_tools.hpp"
#include "digitop/planarity.hpp"
#include "oracles.hpp"

using namespace digitop;
namespace fs = std::filesystem;

namespace {

using Counts = std::vector<std::size_t>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const Counts& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

struct Rows {
  Counts images, pointed, irreducible, rigid;
};

Rows rows_of(const fs::path& dir, Family family, std::size_t n_max) {
  Rows r;
  for (const auto& row : load_report(dir, family).rows) {
    if (row.n > n_max) continue;
    r.images.push_back(row.images);
    r.pointed.push_back(row.pointed_irreducible);
    r.irreducible.push_back(row.irreducible);
    r.rigid.push_back(row.rigid);
  }
  return r;
}

void check_rows(Outcome& o, const Rows& got, const Rows& want) {
  o.require(got.images == want.images, "images " + join(got.images));
  o.require(got.pointed == want.pointed, "pointed irreducible " + join(got.pointed));
  o.require(got.irreducible == want.irreducible, "irreducible " + join(got.irreducible));
  o.require(got.rigid == want.rigid, "rigid " + join(got.rigid));
}

Counts indicator(std::size_t n_max, std::set<std::size_t> ones) {
  Counts c;
  for (std::size_t n = 1; n <= n_max; ++n) c.push_back(ones.count(n));
  return c;
}

std::set<std::string> nonrigid_irreducible_noncycles(const fs::path& dir, std::size_t n) {
  std::set<std::string> out;
  for (const auto& e : read_catalog_file(catalog_file(dir, Family::kAbstract, n))) {
    if (e.nonrigid_irreducible() && !e.is_cycle) out.insert(e.canonical);
  }
  return out;
}

bool same_files(const fs::path& a, const fs::path& b, Family family, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto fa = catalog_file(a, family, n);
    const auto fb = catalog_file(b, family, n);
    if (!fs::exists(fa) || !fs::exists(fb) || slurp(fa) != slurp(fb)) return false;
  }
  return true;
}

class Runner {
 public:
  void run(int number, const std::string& title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title;
    line.precision(1);
    line << std::fixed << " (" << seconds << " s)";
    if (!o.detail.empty()) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
    failures_ += o.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / ("digitop-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path catalogs = root / "catalogs";
  fs::create_directories(catalogs);

  Runner runner;

  runner.run(1, "abstract table, n = 1..8 (extended n = 9)", [&] {
    Outcome o;
    build_catalog(Family::kAbstract, 9, catalogs);
    check_rows(o, rows_of(catalogs, Family::kAbstract, 8),
               {{1, 1, 2, 6, 21, 112, 853, 11117},
                {1, 0, 0, 0, 1, 2, 9, 68},
                {1, 0, 0, 0, 1, 1, 3, 28},
                {1, 0, 0, 0, 0, 0, 2, 26}});
    const auto nine = summarize(9, read_catalog_file(catalog_file(catalogs, Family::kAbstract, 9)));
    const bool extended = nine.images == 261080 && nine.pointed_irreducible == 1110 &&
                          nine.irreducible == 547 && nine.rigid == 544;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + "n = 9 " +
                (extended ? "matches" : "differs") + " (" + std::to_string(nine.images) + ", " +
                std::to_string(nine.pointed_irreducible) + ", " +
                std::to_string(nine.irreducible) + ", " + std::to_string(nine.rigid) + ")";
    return o;
  });

  runner.run(2, "4-adjacency table, n = 1..12", [&] {
    Outcome o;
    build_catalog(Family::kAdj4, 12, catalogs);
    const auto irr = indicator(12, {1, 8, 10, 12});
    check_rows(o, rows_of(catalogs, Family::kAdj4, 12),
               {{1, 1, 1, 3, 4, 10, 19, 51, 112, 300, 746, 2042}, irr, irr, indicator(12, {1})});
    return o;
  });

  runner.run(3, "8-adjacency table, n = 1..9", [&] {
    Outcome o;
    build_catalog(Family::kAdj8, 9, catalogs);
    const auto irr = indicator(9, {1, 6, 7, 8, 9});
    check_rows(o, rows_of(catalogs, Family::kAdj8, 9),
               {{1, 1, 2, 6, 15, 51, 173, 681, 2682}, irr, irr, indicator(9, {1})});
    return o;
  });

  runner.run(4, "fig1 fixtures", [&] {
    Outcome o;
    const std::vector<std::pair<std::string, std::size_t>> strings{
        {"GrDKPK", 8}, {"HhciKeX", 9}, {"HzSW[Mb", 9}};
    std::set<std::string> expected8;
    std::set<std::string> expected9;
    for (const auto& [s, n] : strings) {
      const auto g = graph6_decode(s);
      o.require(g.size() == n, s + " size");
      const auto c = classify(g);
      o.require(c.irreducible() && !c.rigid, s + " not irreducible non-rigid");
      o.require(!is_planar(g), s + " planar");
      (n == 8 ? expected8 : expected9).insert(canonical_form(g).code);
    }
    o.require(nonrigid_irreducible_noncycles(catalogs, 8) == expected8, "n = 8 catalog set");
    o.require(nonrigid_irreducible_noncycles(catalogs, 9) == expected9, "n = 9 catalog set");
    return o;
  });

  runner.run(5, "fig2 fixtures are reducible and pointed irreducible", [&] {
    Outcome o;
    for (const char* name : {"fig2a", "fig2b"}) {
      const auto c = classify(to_image(builtin_fixtures().at(name)));
      o.require(c.reducible && !c.pointed_reducible, name);
    }
    return o;
  });

  runner.run(6, "4-to-8 embedding and count dominance", [&] {
    Outcome o;
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
      for (const auto& e : read_catalog_file(catalog_file(catalogs, Family::kAdj4, n))) {
        const auto cells = CellSet::parse(e.witness_cells.value());
        const auto embedded = embed_4_to_8(cells.to_lattice(Adjacency::kFour));
        o.require(canonical_form(lattice_to_image(embedded)).code == e.canonical,
                  "adj4 n = " + std::to_string(n) + " " + e.canonical);
        ++checked;
      }
    }
    const auto four = rows_of(catalogs, Family::kAdj4, 9).images;
    const auto eight = rows_of(catalogs, Family::kAdj8, 9).images;
    for (std::size_t n = 1; n <= 9; ++n) {
      const bool ok = n >= 3 ? eight[n - 1] > four[n - 1] : eight[n - 1] >= four[n - 1];
      o.require(ok, "counts at n = " + std::to_string(n));
    }
    if (o.pass) o.detail = std::to_string(checked) + " witnesses embedded";
    return o;
  });

  runner.run(7, "oracle equivalence", [&] {
    Outcome o;
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto brute = oracle::connected_classes(n, oracle::brute_canonical);
      std::set<std::string> ours;
      const auto classes = enumerate_abstract_connected(n);
      for (const auto& c : classes) ours.insert(oracle::brute_canonical(c.representative));
      o.require(ours == brute && classes.size() == brute.size(),
                "abstract n = " + std::to_string(n));
      for (const auto& c : classes) {
        std::set<std::vector<std::size_t>> streamed;
        for (const auto& f : one_step_identity_maps(c.representative))
          streamed.emplace(f.table().begin(), f.table().end());
        o.require(streamed == oracle::one_step_maps(c.representative),
                  "one-step maps of " + c.canonical.code);
      }
    }
    for (auto kind : {Adjacency::kFour, Adjacency::kEight}) {
      for (std::size_t n = 1; n <= 5; ++n) {
        std::set<std::string> brute;
        for (const auto& cells : oracle::box_cell_sets(kind, n))
          brute.insert(canonical_form(lattice_to_image(LatticeImage(kind, cells))).code);
        std::set<std::string> ours;
        for (const auto& c : enumerate_lattice_images(kind, n)) ours.insert(c.canonical.code);
        o.require(ours == brute, "kind " + std::to_string(static_cast<int>(kind)) +
                                     " n = " + std::to_string(n));
      }
    }
    return o;
  });

  runner.run(8, "homotopy equivalence", [&] {
    Outcome o;
    o.require(homotopy_equivalent(cycle_image(4), DigitalImage(1)), "C4 ~ point");
    o.require(!homotopy_equivalent(cycle_image(5), cycle_image(8)), "C5 !~ C8");
    std::vector<DigitalImage> irreducible;
    for (std::size_t n = 1; n <= 8; ++n) {
      for (const auto& e : read_catalog_file(catalog_file(catalogs, Family::kAbstract, n))) {
        if (!e.reducible) irreducible.push_back(graph6_decode(e.canonical));
      }
    }
    std::size_t pairs = 0;
    for (const auto& a : irreducible) {
      for (const auto& b : irreducible) {
        o.require(homotopy_equivalent(a, b) == are_isomorphic(a, b),
                  graph6_encode(a) + " vs " + graph6_encode(b));
        ++pairs;
      }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " irreducible pairs";
    return o;
  });

  runner.run(9, "conjecture scan", [&] {
    Outcome o;
    const auto report = scan_conjectures(catalogs);
    o.require(report.consistent(),
              std::to_string(report.counterexamples.size()) + " counterexamples");
    o.require(render_conjecture_report(report).ends_with("consistent\n"), "report verdict");
    if (o.pass) {
      o.detail = std::to_string(report.entries_scanned) + " entries, " +
                 std::to_string(report.nonrigid_irreducible.size()) + " nonrigid irreducible";
    }
    return o;
  });

  runner.run(10, "determinism across reruns and shards", [&] {
    Outcome o;
    const fs::path rerun = root / "rerun";
    const fs::path in_process = root / "in-process";
    const fs::path processes = root / "processes";
    build_catalog(Family::kAbstract, 8, rerun);
    o.require(same_files(catalogs, rerun, Family::kAbstract, 8), "rerun differs");

    BuildOptions sharded;
    sharded.enumeration.shards = 4;
    sharded.enumeration.spill_dir = root / "spill";
    fs::create_directories(sharded.enumeration.spill_dir);
    build_catalog(Family::kAbstract, 8, in_process, sharded);
    o.require(same_files(catalogs, in_process, Family::kAbstract, 8), "4-shard build differs");

    bool merged = false;
    for (std::size_t s = 0; s < 4; ++s) {
      merged = build_catalog_shard(Family::kAbstract, 8, processes, s, 4).merged;
    }
    o.require(merged, "shard merge did not complete");
    o.require(same_files(catalogs, processes, Family::kAbstract, 8), "merged shards differ");
    return o;
  });

  fs::remove_all(root);
  std::cout << (runner.failures() == 0 ? "all criteria passed" : "some criteria failed") << '\n';
  return runner.failures() == 0 ? 0 : 1;
}
