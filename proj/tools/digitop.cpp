// Command line front end: enumerate, classify, report, conjectures, fixtures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "digitop/canonical.hpp"
#include "digitop/catalog.hpp"
#include "digitop/error.hpp"
#include "digitop/graph6.hpp"
#include "digitop/lattice_tools.hpp"
#include "digitop/planarity.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCounterexample = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw digitop::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_classification_header() {
  std::cout << "canonical,n,reducible,pointed_reducible,rigid,planar,is_cycle,label\n";
}

void print_classification(const digitop::DigitalImage& image) {
  const auto c = digitop::classify(image);
  std::cout << digitop::canonical_form(image).code << ',' << image.size() << ','
            << c.reducible << ',' << c.pointed_reducible << ',' << c.rigid << ','
            << digitop::is_planar(image) << ',' << digitop::is_cycle(image) << ','
            << c.label() << '\n';
}

int run_enumerate(const std::string& family_text, std::size_t n, const std::string& out,
                  std::size_t shards, std::optional<std::size_t> shard,
                  std::size_t budget_mb) {
  const digitop::Family family = digitop::parse_family(family_text);
  digitop::BuildOptions options;
  options.enumeration.shards = shards;
  options.enumeration.mem_budget_bytes = budget_mb << 20;
  options.enumeration.spill_dir = std::filesystem::path(out) / "spill";
  options.on_level = [&](std::size_t level, std::size_t classes) {
    std::cout << family_text << " n=" << level << ": " << classes << " classes\n"
              << std::flush;
  };
  if (shard) {
    const auto status =
        digitop::build_catalog_shard(family, n, out, *shard, shards, options);
    std::cout << "wrote shard " << status.shard_stem.string() << ".g6\n";
    if (!status.merged) std::cout << "waiting for the remaining shards before merging\n";
  } else {
    digitop::build_catalog(family, n, out, options);
  }
  std::error_code ec;
  std::filesystem::remove(options.enumeration.spill_dir, ec);
  return kExitOk;
}

int run_classify(const std::string& in, const std::string& format) {
  const std::string text = read_file(in);
  print_classification_header();
  if (format == "lattice") {
    print_classification(digitop::lattice_to_image(digitop::parse_lattice_text(text)));
    return kExitOk;
  }
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    print_classification(digitop::graph6_decode(line));
  }
  return kExitOk;
}

int run_report(const std::string& catalog, const std::string& family,
               const std::string& format) {
  const auto table = digitop::load_report(catalog, digitop::parse_family(family));
  for (const auto& w : table.warnings) std::cerr << w << '\n';
  std::cout << digitop::render_report(
      table, format == "md" ? digitop::ReportFormat::kMarkdown : digitop::ReportFormat::kCsv);
  return kExitOk;
}

int run_conjectures(const std::string& catalog) {
  if (!std::filesystem::is_directory(catalog)) {
    throw digitop::IoError("catalog directory " + catalog + " does not exist");
  }
  const auto report = digitop::scan_conjectures(std::filesystem::path(catalog));
  std::cout << digitop::render_conjecture_report(report);
  return report.consistent() ? kExitOk : kExitCounterexample;
}

int run_fixtures(const std::string& name, bool classify) {
  const auto& fixture = digitop::builtin_fixtures().at(name);
  const digitop::DigitalImage image = digitop::to_image(fixture);
  std::cout << "name: " << name << '\n'
            << "points: " << image.size() << '\n'
            << "edges: " << image.edge_count() << '\n'
            << "graph6: " << digitop::graph6_encode(image) << '\n';
  if (const auto* lattice = std::get_if<digitop::LatticeImage>(&fixture)) {
    std::cout << "kind=" << static_cast<int>(lattice->kind()) << '\n';
    for (auto p : lattice->points()) std::cout << p.x << ' ' << p.y << '\n';
  }
  if (classify) {
    const auto c = digitop::classify(image);
    std::cout << "reducible: " << c.reducible << '\n'
              << "pointed_reducible: " << c.pointed_reducible << '\n'
              << "rigid: " << c.rigid << '\n'
              << "planar: " << digitop::is_planar(image) << '\n'
              << "label: " << c.label() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and classify small binary digital images"};
  app.require_subcommand(1);

  std::string family;
  std::size_t n = 0;
  std::string out;
  std::size_t shards = 1;
  std::optional<std::size_t> shard;
  std::size_t budget_mb = 1024;
  auto* enumerate = app.add_subcommand("enumerate", "Build catalogs for n = 1..max");
  enumerate->add_option("--family", family)->required()->check(
      CLI::IsMember({"abstract", "adj4", "adj8"}));
  enumerate->add_option("--n", n, "Largest point count")->required()->check(
      CLI::Range(1, 62));
  enumerate->add_option("--out", out, "Output directory")->required();
  auto* shards_opt = enumerate->add_option("--shards", shards)->check(CLI::PositiveNumber);
  enumerate->add_option("--shard", shard, "Run only this shard of the top level")
      ->needs(shards_opt);
  enumerate->add_option("--mem-budget", budget_mb, "Dedup memory budget in MB")
      ->check(CLI::PositiveNumber);

  std::string in;
  std::string in_format;
  auto* classify = app.add_subcommand("classify", "Classify images from a file");
  classify->add_option("--in", in)->required();
  classify->add_option("--format", in_format)->required()->check(
      CLI::IsMember({"g6", "lattice"}));

  std::string catalog;
  std::string report_format;
  auto* report = app.add_subcommand("report", "Render a count table");
  report->add_option("--catalog", catalog)->required();
  report->add_option("--family", family)->required()->check(
      CLI::IsMember({"abstract", "adj4", "adj8"}));
  report->add_option("--format", report_format)->required()->check(
      CLI::IsMember({"csv", "md"}));

  auto* conjectures = app.add_subcommand("conjectures", "Scan catalogs for counterexamples");
  conjectures->add_option("--catalog", catalog)->required();

  std::string fixture;
  bool do_classify = false;
  auto* fixtures = app.add_subcommand("fixtures", "Print a built-in fixture image");
  fixtures->add_option("--name", fixture)->required()->check(
      CLI::IsMember({"fig1-1", "fig1-2", "fig1-3", "fig2a", "fig2b"}));
  fixtures->add_flag("--classify", do_classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate) {
      if (shard && *shard >= shards) {
        std::cerr << "--shard must be less than --shards\n";
        return kExitUsage;
      }
      return run_enumerate(family, n, out, shards, shard, budget_mb);
    }
    if (*classify) return run_classify(in, in_format);
    if (*report) return run_report(catalog, family, report_format);
    if (*conjectures) return run_conjectures(catalog);
    if (*fixtures) return run_fixtures(fixture, do_classify);
  } catch (const digitop::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
