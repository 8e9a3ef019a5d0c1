#include "digitop/code_store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <queue>
#include <string_view>

#include <unistd.h>

#include "digitop/error.hpp"

namespace digitop {
namespace {

constexpr std::size_t kEntryOverhead = 96;

std::size_t footprint(const std::string& code, const std::string& witness) {
  return code.size() + witness.size() + kEntryOverhead;
}

std::filesystem::path unique_run_path(const std::filesystem::path& dir) {
  static std::atomic<unsigned long> counter{0};
  return dir / ("digitop-run-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++) + ".tsv");
}

class RunReader {
 public:
  explicit RunReader(const std::filesystem::path& path) : in_(path) {
    if (!in_) throw IoError("cannot open spill run " + path.string());
    advance();
  }
  bool done() const { return done_; }
  const CodeRecord& current() const { return current_; }
  void advance() {
    std::string line;
    if (!std::getline(in_, line)) {
      done_ = true;
      return;
    }
    const auto tab = line.find('\t');
    current_.code = line.substr(0, tab);
    current_.witness = tab == std::string::npos ? "" : line.substr(tab + 1);
  }

 private:
  std::ifstream in_;
  CodeRecord current_;
  bool done_ = false;
};

}  // namespace

void keep_least_witness(CodeRecord& into, const CodeRecord& r) {
  if (r.witness < into.witness) into.witness = r.witness;
}

std::vector<CodeRecord> merge_records(std::vector<std::vector<CodeRecord>> runs) {
  std::vector<CodeRecord> all;
  std::size_t total = 0;
  for (const auto& r : runs) total += r.size();
  all.reserve(total);
  for (auto& r : runs) {
    std::move(r.begin(), r.end(), std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(), [](const CodeRecord& a, const CodeRecord& b) {
    return a.code != b.code ? a.code < b.code : a.witness < b.witness;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const CodeRecord& a, const CodeRecord& b) {
                          return a.code == b.code;
                        }),
            all.end());
  return all;
}

CodeStore::CodeStore(std::size_t budget_bytes, std::filesystem::path spill_dir)
    : budget_(budget_bytes), spill_dir_(std::move(spill_dir)) {}

CodeStore::~CodeStore() {
  std::error_code ec;
  for (const auto& run : runs_) std::filesystem::remove(run, ec);
}

void CodeStore::insert(std::string code, std::string witness) {
  auto it = live_.find(code);
  if (it != live_.end()) {
    if (witness < it->second) {
      live_bytes_ -= it->second.size();
      live_bytes_ += witness.size();
      it->second = std::move(witness);
    }
    return;
  }
  live_bytes_ += footprint(code, witness);
  live_.emplace(std::move(code), std::move(witness));
  if (live_bytes_ > budget_) spill();
}

void CodeStore::spill() {
  std::vector<CodeRecord> sorted;
  sorted.reserve(live_.size());
  for (auto& [code, witness] : live_) sorted.push_back({code, witness});
  std::sort(sorted.begin(), sorted.end(),
            [](const CodeRecord& a, const CodeRecord& b) { return a.code < b.code; });
  std::filesystem::create_directories(spill_dir_);
  const auto path = unique_run_path(spill_dir_);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create spill run " + path.string());
  for (const auto& r : sorted) out << r.code << '\t' << r.witness << '\n';
  if (!out.flush()) throw IoError("write failed for spill run " + path.string());
  runs_.push_back(path);
  live_.clear();
  live_bytes_ = 0;
}

std::vector<CodeRecord> CodeStore::finish() {
  std::vector<CodeRecord> memory;
  memory.reserve(live_.size());
  for (auto& [code, witness] : live_) memory.push_back({code, witness});
  live_.clear();
  live_bytes_ = 0;
  std::sort(memory.begin(), memory.end(),
            [](const CodeRecord& a, const CodeRecord& b) { return a.code < b.code; });
  if (runs_.empty()) return memory;

  std::vector<RunReader> readers;
  readers.reserve(runs_.size());
  for (const auto& run : runs_) readers.emplace_back(run);

  // Heap of (code, source); source == readers.size() is the in-memory run.
  const std::size_t mem_source = readers.size();
  std::size_t mem_pos = 0;
  auto head = [&](std::size_t s) -> const CodeRecord& {
    return s == mem_source ? memory[mem_pos] : readers[s].current();
  };
  auto greater = [&](std::size_t a, std::size_t b) {
    return head(a).code != head(b).code ? head(a).code > head(b).code : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(greater)> heap(greater);
  for (std::size_t s = 0; s < readers.size(); ++s) {
    if (!readers[s].done()) heap.push(s);
  }
  if (!memory.empty()) heap.push(mem_source);

  std::vector<CodeRecord> out;
  while (!heap.empty()) {
    const std::size_t s = heap.top();
    heap.pop();
    const CodeRecord& r = head(s);
    if (!out.empty() && out.back().code == r.code) {
      keep_least_witness(out.back(), r);
    } else {
      out.push_back(r);
    }
    bool more;
    if (s == mem_source) {
      more = ++mem_pos < memory.size();
    } else {
      readers[s].advance();
      more = !readers[s].done();
    }
    if (more) heap.push(s);
  }
  readers.clear();
  std::error_code ec;
  for (const auto& run : runs_) std::filesystem::remove(run, ec);
  runs_.clear();
  return out;
}

void write_shard_files(const std::filesystem::path& stem,
                       const std::vector<CodeRecord>& records) {
  const bool witnesses = std::any_of(records.begin(), records.end(),
                                     [](const CodeRecord& r) { return !r.witness.empty(); });
  auto write = [](const std::filesystem::path& path, auto&& field,
                  const std::vector<CodeRecord>& rs) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw IoError("cannot write " + tmp.string());
      for (const auto& r : rs) out << field(r) << '\n';
      if (!out.flush()) throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  };
  auto g6 = stem;
  g6 += ".g6";
  write(g6, [](const CodeRecord& r) -> const std::string& { return r.code; }, records);
  if (witnesses) {
    auto cells = stem;
    cells += ".cells";
    write(cells, [](const CodeRecord& r) -> const std::string& { return r.witness; },
          records);
  }
}

std::vector<CodeRecord> read_shard_files(const std::filesystem::path& stem) {
  auto g6 = stem;
  g6 += ".g6";
  auto cells = stem;
  cells += ".cells";
  std::ifstream codes(g6);
  if (!codes) throw IoError("cannot open " + g6.string());
  std::vector<CodeRecord> out;
  for (std::string line; std::getline(codes, line);) out.push_back({line, ""});
  if (std::filesystem::exists(cells)) {
    std::ifstream in(cells);
    std::size_t i = 0;
    for (std::string line; std::getline(in, line); ++i) {
      if (i >= out.size()) throw IoError("witness file longer than code file: " + cells.string());
      out[i].witness = line;
    }
    if (i != out.size()) throw IoError("witness file shorter than code file: " + cells.string());
  }
  return out;
}

}  // namespace digitop
