#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "xtrid/leonard.hpp"
#include "xtrid/serialize.hpp"

namespace xtrid {

enum class CensusMode { Exhaustive, RandomSample };

struct CensusJob {
  FieldSpec field;  // must be a prime field
  std::size_t d = 2;
  CensusMode mode = CensusMode::Exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t checkpoint_every = 1024;
  bool override_cost_guard = false;
  std::string output;  // records file (newline-delimited JSON)
};

// Throws InvalidArgument for malformed jobs and CostGuard when an exhaustive
// search is too large without the override flag.
void check_job(const CensusJob& job);

// Job file: {"field", "d", "mode": "exhaustive"|"random", "sample_count",
// "seed", "checkpoint_every", "output", "override"}.
CensusJob job_from_json(const io::Json& j);
io::Json to_json(const CensusJob& job);

struct ScanStats {
  std::uint64_t scanned = 0;
  std::uint64_t no_split_spectrum = 0;  // fewer than d+1 distinct roots in GF(p)
  std::uint64_t no_ordering = 0;        // no eigenvalue ordering satisfies the support pattern
  std::uint64_t rejected = 0;           // validate() refused the ordered candidate
  std::uint64_t hits = 0;

  ScanStats& operator+=(const ScanStats& rhs);
  friend bool operator==(const ScanStats&, const ScanStats&) = default;
};

// The indexed search space of a job. Exhaustive jobs enumerate tridiagonal A
// with superdiagonal fixed to 1 (the diagonal-similarity gauge) against
// diagonals A* with distinct entries, keeping only the lexicographically
// smaller of each A*-diagonal and its reversal. Random jobs draw index k
// from a stream seeded by (seed, k), so any subrange can be replayed.
class CandidateSpace {
 public:
  explicit CandidateSpace(const CensusJob& job);

  std::uint64_t size() const { return size_; }

  // The unordered pair at this index, thetas left empty.
  LeonardCandidate raw(std::uint64_t index) const;

  // The validated candidate at this index, with the lexicographically first
  // admissible eigenvalue ordering, or nullopt (tallied in stats).
  std::optional<LeonardCandidate> candidate_at(std::uint64_t index, ScanStats& stats) const;

 private:
  CensusJob job_;
  std::vector<std::vector<std::uint64_t>> dual_diagonals_;
  std::uint64_t size_ = 0;
};

// Estimated number of candidates for the job.
std::uint64_t estimate_cost(const CensusJob& job);

std::vector<LeonardCandidate> enumerate_candidates(const CensusJob& job);

// Per-map classification of the kernel/image equalities. The mixed classes
// occur only for d <= 2, where the two equalities are not equivalent.
enum class EqualityClass { BothEqual, NeitherEqual, KernelOnly, ImageOnly };

const char* equality_class_name(EqualityClass c);

struct CensusRecord {
  std::uint64_t index = 0;
  LeonardCandidate candidate;
  std::size_t dim_x = 0;
  std::size_t ker_upsilon_dim = 0, im_upsilon_dim = 0;
  std::size_t ker_upsilon_star_dim = 0, im_upsilon_star_dim = 0;
  bool bipartite = false, dual_bipartite = false;
  EqualityClass upsilon_class = EqualityClass::NeitherEqual;
  EqualityClass upsilon_star_class = EqualityClass::NeitherEqual;
};

// validate -> compute_x -> aw_params -> both upsilon reports -> flags.
// Propagates ValidationError; throws InvariantViolation on a mixed equality
// pattern when d >= 3.
CensusRecord classify(const LeonardCandidate& c);

io::Json to_json(const CensusRecord& r);
CensusRecord record_from_json(const io::Json& j);

struct SummaryKey {
  std::size_t d = 0;
  std::string field;
  EqualityClass upsilon_class = EqualityClass::NeitherEqual;
  EqualityClass upsilon_star_class = EqualityClass::NeitherEqual;
  bool bipartite = false;
  bool dual_bipartite = false;

  auto tie() const {
    return std::tie(d, field, upsilon_class, upsilon_star_class, bipartite, dual_bipartite);
  }
  friend bool operator<(const SummaryKey& a, const SummaryKey& b) { return a.tie() < b.tie(); }
};

struct CensusSummary {
  std::map<SummaryKey, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t dim_x_not_five = 0;
};

CensusSummary census_report(std::span<const CensusRecord> records);
// Folds a newline-delimited record stream.
CensusSummary census_report_from_lines(std::istream& in);
io::Json to_json(const CensusSummary& s);
std::string summary_table(const CensusSummary& s);

struct CensusRunOptions {
  unsigned workers = 1;
  bool resume = false;
  // Stop after this many chunks (leaves a resumable checkpoint).
  std::optional<std::uint64_t> max_chunks;
};

struct CensusOutcome {
  ScanStats stats;
  CensusSummary summary;
  bool complete = false;
};

// Scans the job's candidate space in chunks of checkpoint_every indices,
// appending records in index order to job.output and recording progress in
// job.output + ".ckpt". The summary is folded from the records file.
// Throws ResumeError on a missing, corrupt or mismatched checkpoint.
CensusOutcome run_census(const CensusJob& job, const CensusRunOptions& options);

}  // namespace xtrid
