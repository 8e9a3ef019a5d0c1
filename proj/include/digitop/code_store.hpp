#ifndef DIGITOP_CODE_STORE_HPP_
#define DIGITOP_CODE_STORE_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace digitop {

/// One isomorphism class found during generation: its canonical graph6 code
/// and a witness payload (a cell string for lattice families, empty for
/// abstract images).
struct CodeRecord {
  std::string code;
  std::string witness;

  friend bool operator==(const CodeRecord&, const CodeRecord&) = default;
};

/// Folds `r` into `into` when codes match: the lexicographically least
/// witness is kept, so the outcome does not depend on arrival order.
void keep_least_witness(CodeRecord& into, const CodeRecord& r);

/// Sorted union by code of already sorted record lists.
std::vector<CodeRecord> merge_records(std::vector<std::vector<CodeRecord>> runs);

/// Deduplicating set of CodeRecords with a memory budget. When the estimated
/// footprint passes the budget the in-memory set is written as a sorted run
/// file under `spill_dir`; finish() merges all runs with what is left in
/// memory. Run files are removed by finish() and by the destructor.
class CodeStore {
 public:
  CodeStore(std::size_t budget_bytes, std::filesystem::path spill_dir);
  ~CodeStore();
  CodeStore(const CodeStore&) = delete;
  CodeStore& operator=(const CodeStore&) = delete;

  void insert(std::string code, std::string witness);

  /// All records sorted by code, one per code. The store is empty afterwards.
  std::vector<CodeRecord> finish();

  std::size_t spilled_runs() const noexcept { return runs_.size(); }

 private:
  void spill();

  std::size_t budget_;
  std::filesystem::path spill_dir_;
  std::unordered_map<std::string, std::string> live_;
  std::size_t live_bytes_ = 0;
  std::vector<std::filesystem::path> runs_;
};

/// Intermediate shard files: `<stem>.g6` holds one code per line, sorted;
/// `<stem>.cells` holds the matching witness per line (omitted when every
/// witness is empty). Both newline-terminated.
void write_shard_files(const std::filesystem::path& stem,
                       const std::vector<CodeRecord>& records);
std::vector<CodeRecord> read_shard_files(const std::filesystem::path& stem);

}  // namespace digitop

#endif  // DIGITOP_CODE_STORE_HPP_
