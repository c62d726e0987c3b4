#include "xtrid/explorer.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "xtrid/awrel.hpp"
#include "xtrid/xspace.hpp"

namespace xtrid {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CostGuard("search space size overflows 64 bits");
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) out = checked_mul(out, base);
  return out;
}

// Gauge-fixed tridiagonal pair in residues: diag a, sub b (super = 1), dual t.
struct RawPair {
  std::vector<std::uint64_t> diag;
  std::vector<std::uint64_t> sub;
  std::vector<std::uint64_t> dual;
};

bool reversal_smaller(const std::vector<std::uint64_t>& t) {
  return std::lexicographical_compare(t.rbegin(), t.rend(), t.begin(), t.end());
}

// Reverses the basis and restores the superdiagonal gauge.
RawPair reversed(const RawPair& r) {
  RawPair out;
  out.diag.assign(r.diag.rbegin(), r.diag.rend());
  out.sub.assign(r.sub.rbegin(), r.sub.rend());
  out.dual.assign(r.dual.rbegin(), r.dual.rend());
  return out;
}

LeonardCandidate to_candidate(const RawPair& r, FieldSpec spec) {
  const std::size_t n = r.diag.size();
  LeonardCandidate c;
  c.d = n - 1;
  c.a_mat = Matrix::zero(spec, n);
  for (std::size_t i = 0; i < n; ++i) {
    c.a_mat(i, i) = Scalar(spec, static_cast<long long>(r.diag[i]));
    c.theta_stars.emplace_back(spec, static_cast<long long>(r.dual[i]));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    c.a_mat(i, i + 1) = Scalar::one(spec);
    c.a_mat(i + 1, i) = Scalar(spec, static_cast<long long>(r.sub[i]));
  }
  c.astar_mat = Matrix::diagonal(spec, c.theta_stars);
  return c;
}

// Roots in GF(p) of det(xI - A), evaluated by the three-term recurrence of
// the leading principal minors.
std::vector<std::uint64_t> roots(const RawPair& r, std::uint64_t p) {
  const std::size_t n = r.diag.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t prev = 1;
    std::uint64_t cur = (x + p - r.diag[0]) % p;
    for (std::size_t k = 1; k < n; ++k) {
      const std::uint64_t next = ((x + p - r.diag[k]) % p * cur % p + p - r.sub[k - 1] * prev % p) % p;
      prev = cur;
      cur = next;
    }
    if (cur == 0) out.push_back(x);
  }
  return out;
}

std::size_t distance(std::size_t i, std::size_t j) { return i > j ? i - j : j - i; }

// Lexicographically first ordering of the idempotents for which E_i A* E_j
// vanishes exactly when |i - j| > 1 (i != j).
std::optional<std::vector<std::size_t>> find_ordering(const std::vector<Matrix>& idempotents,
                                                      const Matrix& astar) {
  const std::size_t n = idempotents.size();
  std::vector<std::vector<bool>> nonzero(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    const Matrix right = astar * idempotents[j];
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) nonzero[i][j] = !(idempotents[i] * right).is_zero();
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        const auto dist = distance(a, b);
        if (dist == 0) continue;
        ok = nonzero[perm[a]][perm[b]] == (dist == 1);
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

EqualityClass class_of(const UpsilonReport& r, std::size_t d) {
  if (r.equality_i == r.equality_ii) {
    return r.equality_i ? EqualityClass::BothEqual : EqualityClass::NeitherEqual;
  }
  if (d >= 3) throw InvariantViolation("mixed kernel/image equality pattern for d >= 3");
  return r.equality_i ? EqualityClass::KernelOnly : EqualityClass::ImageOnly;
}

EqualityClass class_from_name(const std::string& s) {
  if (s == "BothEqual") return EqualityClass::BothEqual;
  if (s == "NeitherEqual") return EqualityClass::NeitherEqual;
  if (s == "KernelOnly") return EqualityClass::KernelOnly;
  if (s == "ImageOnly") return EqualityClass::ImageOnly;
  throw ParseError("unknown equality class \"" + s + "\"");
}

io::Json stats_to_json(const ScanStats& s) {
  return io::Json{{"scanned", s.scanned},     {"no_split_spectrum", s.no_split_spectrum},
                  {"no_ordering", s.no_ordering}, {"rejected", s.rejected},
                  {"hits", s.hits}};
}

ScanStats stats_from_json(const io::Json& j) {
  ScanStats s;
  s.scanned = j.at("scanned").get<std::uint64_t>();
  s.no_split_spectrum = j.at("no_split_spectrum").get<std::uint64_t>();
  s.no_ordering = j.at("no_ordering").get<std::uint64_t>();
  s.rejected = j.at("rejected").get<std::uint64_t>();
  s.hits = j.at("hits").get<std::uint64_t>();
  return s;
}

}  // namespace

ScanStats& ScanStats::operator+=(const ScanStats& rhs) {
  scanned += rhs.scanned;
  no_split_spectrum += rhs.no_split_spectrum;
  no_ordering += rhs.no_ordering;
  rejected += rhs.rejected;
  hits += rhs.hits;
  return *this;
}

std::uint64_t estimate_cost(const CensusJob& job) {
  if (job.mode == CensusMode::RandomSample) return job.sample_count;
  const std::uint64_t p = job.field.modulus();
  const std::size_t n = job.d + 1;
  // Ordered distinct dual diagonals, halved by the reversal symmetry.
  std::uint64_t duals = 1;
  for (std::size_t k = 0; k < n; ++k) duals = checked_mul(duals, p > k ? p - k : 0);
  duals /= 2;
  return checked_mul(checked_mul(duals, ipow(p, n)), ipow(p - 1, job.d));
}

void check_job(const CensusJob& job) {
  if (!job.field.is_prime_field()) throw InvalidArgument("census needs a prime field");
  if (job.d < 2) throw InvalidArgument("census needs d >= 2");
  if (job.checkpoint_every == 0) throw InvalidArgument("checkpoint_every must be positive");
  if (job.mode == CensusMode::Exhaustive && !job.override_cost_guard &&
      !(job.d + 1 <= 4 && job.field.modulus() <= 7)) {
    std::string estimate;
    try {
      estimate = std::to_string(estimate_cost(job));
    } catch (const CostGuard&) {
      estimate = "more than 2^64";
    }
    throw CostGuard("exhaustive census over " + job.field.name() + " with d = " +
                    std::to_string(job.d) + " would scan " + estimate +
                    " candidates; needs d+1 <= 4 and p <= 7 or the override flag");
  }
}

CensusJob job_from_json(const io::Json& j) {
  try {
    CensusJob job;
    job.field = FieldSpec::parse(j.at("field").get<std::string>());
    job.d = j.at("d").get<std::size_t>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "exhaustive") {
      job.mode = CensusMode::Exhaustive;
    } else if (mode == "random") {
      job.mode = CensusMode::RandomSample;
      job.sample_count = j.at("sample_count").get<std::uint64_t>();
    } else {
      throw ParseError("mode must be \"exhaustive\" or \"random\"");
    }
    job.seed = j.value("seed", std::uint64_t{0});
    job.checkpoint_every = j.value("checkpoint_every", std::uint64_t{1024});
    job.override_cost_guard = j.value("override", false);
    job.output = j.at("output").get<std::string>();
    return job;
  } catch (const io::Json::exception& e) {
    throw ParseError(std::string("malformed job file: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

io::Json to_json(const CensusJob& job) {
  io::Json j{{"field", job.field.name()},
             {"d", job.d},
             {"mode", job.mode == CensusMode::Exhaustive ? "exhaustive" : "random"},
             {"seed", job.seed},
             {"checkpoint_every", job.checkpoint_every},
             {"override", job.override_cost_guard},
             {"output", job.output}};
  if (job.mode == CensusMode::RandomSample) j["sample_count"] = job.sample_count;
  return j;
}

CandidateSpace::CandidateSpace(const CensusJob& job) : job_(job) {
  check_job(job);
  if (job.mode == CensusMode::RandomSample) {
    size_ = job.sample_count;
    return;
  }
  const std::uint64_t p = job.field.modulus();
  const std::size_t n = job.d + 1;
  std::vector<std::uint64_t> t(n, 0);
  // Odometer over all n-tuples; keep distinct ones not larger than their reversal.
  while (true) {
    std::vector<std::uint64_t> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && !reversal_smaller(t)) {
      dual_diagonals_.push_back(t);
    }
    std::size_t k = n;
    while (k > 0 && ++t[k - 1] == p) t[--k] = 0;
    if (k == 0) break;
  }
  size_ = checked_mul(checked_mul(dual_diagonals_.size(), ipow(p, n)), ipow(p - 1, job.d));
}

LeonardCandidate CandidateSpace::raw(std::uint64_t index) const {
  if (index >= size_) throw OutOfRange("candidate index out of range");
  const std::uint64_t p = job_.field.modulus();
  const std::size_t n = job_.d + 1;
  RawPair r;
  r.diag.resize(n);
  r.sub.resize(n - 1);
  if (job_.mode == CensusMode::Exhaustive) {
    std::uint64_t rest = index;
    for (std::size_t k = n - 1; k-- > 0;) {
      r.sub[k] = 1 + rest % (p - 1);
      rest /= p - 1;
    }
    for (std::size_t k = n; k-- > 0;) {
      r.diag[k] = rest % p;
      rest /= p;
    }
    r.dual = dual_diagonals_[rest];
  } else {
    std::uint64_t state = job_.seed ^ ((index + 1) * kGolden);
    for (auto& a : r.diag) a = splitmix64(state) % p;
    for (auto& b : r.sub) b = 1 + splitmix64(state) % (p - 1);
    while (r.dual.size() < n) {
      const auto t = splitmix64(state) % p;
      if (std::find(r.dual.begin(), r.dual.end(), t) == r.dual.end()) r.dual.push_back(t);
    }
    if (reversal_smaller(r.dual)) r = reversed(r);
  }
  return to_candidate(r, job_.field);
}

std::optional<LeonardCandidate> CandidateSpace::candidate_at(std::uint64_t index,
                                                            ScanStats& stats) const {
  ++stats.scanned;
  const auto spec = job_.field;
  const std::uint64_t p = spec.modulus();
  LeonardCandidate c = raw(index);

  RawPair r;
  for (std::size_t i = 0; i <= c.d; ++i) r.diag.push_back(c.a_mat(i, i).residue());
  for (std::size_t i = 0; i < c.d; ++i) r.sub.push_back(c.a_mat(i + 1, i).residue());
  const auto found = roots(r, p);
  if (found.size() != c.d + 1) {
    ++stats.no_split_spectrum;
    return std::nullopt;
  }
  std::vector<Scalar> spectrum;
  for (auto x : found) spectrum.emplace_back(spec, static_cast<long long>(x));

  const auto idempotents = primitive_idempotents(c.a_mat, spectrum);
  const auto ordering = find_ordering(idempotents, c.astar_mat);
  if (!ordering) {
    ++stats.no_ordering;
    return std::nullopt;
  }
  for (auto k : *ordering) c.thetas.push_back(spectrum[k]);
  try {
    validate(c);
  } catch (const ValidationError&) {
    ++stats.rejected;
    return std::nullopt;
  }
  ++stats.hits;
  return c;
}

std::vector<LeonardCandidate> enumerate_candidates(const CensusJob& job) {
  CandidateSpace space(job);
  ScanStats stats;
  std::vector<LeonardCandidate> out;
  for (std::uint64_t k = 0; k < space.size(); ++k) {
    if (auto c = space.candidate_at(k, stats)) out.push_back(std::move(*c));
  }
  return out;
}

const char* equality_class_name(EqualityClass c) {
  switch (c) {
    case EqualityClass::BothEqual: return "BothEqual";
    case EqualityClass::NeitherEqual: return "NeitherEqual";
    case EqualityClass::KernelOnly: return "KernelOnly";
    case EqualityClass::ImageOnly: return "ImageOnly";
  }
  return "unknown";
}

CensusRecord classify(const LeonardCandidate& c) {
  const LeonardSystem ls = validate(c);
  const XSpaceBasis xb = compute_x(ls);
  const AWParams params = aw_params(ls);
  const auto up = upsilon_report(ls, params, UpsilonKind::Upsilon);
  const auto up_star = upsilon_report(ls, params, UpsilonKind::UpsilonStar);
  const auto flags = bipartite_flags(ls);

  CensusRecord r;
  r.candidate = c;
  r.dim_x = xb.dim;
  r.ker_upsilon_dim = up.kernel_dim;
  r.im_upsilon_dim = up.image_dim;
  r.ker_upsilon_star_dim = up_star.kernel_dim;
  r.im_upsilon_star_dim = up_star.image_dim;
  r.bipartite = flags.bipartite;
  r.dual_bipartite = flags.dual_bipartite;
  r.upsilon_class = class_of(up, c.d);
  r.upsilon_star_class = class_of(up_star, c.d);
  return r;
}

io::Json to_json(const CensusRecord& r) {
  return io::Json{{"index", r.index},
                  {"candidate", io::to_json(r.candidate)},
                  {"dim_x", r.dim_x},
                  {"ker_upsilon_dim", r.ker_upsilon_dim},
                  {"im_upsilon_dim", r.im_upsilon_dim},
                  {"ker_upsilon_star_dim", r.ker_upsilon_star_dim},
                  {"im_upsilon_star_dim", r.im_upsilon_star_dim},
                  {"bipartite", r.bipartite},
                  {"dual_bipartite", r.dual_bipartite},
                  {"upsilon_class", equality_class_name(r.upsilon_class)},
                  {"upsilon_star_class", equality_class_name(r.upsilon_star_class)}};
}

CensusRecord record_from_json(const io::Json& j) {
  try {
    CensusRecord r;
    r.index = j.at("index").get<std::uint64_t>();
    r.candidate = io::candidate_from_json(j.at("candidate"));
    r.dim_x = j.at("dim_x").get<std::size_t>();
    r.ker_upsilon_dim = j.at("ker_upsilon_dim").get<std::size_t>();
    r.im_upsilon_dim = j.at("im_upsilon_dim").get<std::size_t>();
    r.ker_upsilon_star_dim = j.at("ker_upsilon_star_dim").get<std::size_t>();
    r.im_upsilon_star_dim = j.at("im_upsilon_star_dim").get<std::size_t>();
    r.bipartite = j.at("bipartite").get<bool>();
    r.dual_bipartite = j.at("dual_bipartite").get<bool>();
    r.upsilon_class = class_from_name(j.at("upsilon_class").get<std::string>());
    r.upsilon_star_class = class_from_name(j.at("upsilon_star_class").get<std::string>());
    return r;
  } catch (const io::Json::exception& e) {
    throw ParseError(std::string("malformed census record: ") + e.what());
  }
}

CensusSummary census_report(std::span<const CensusRecord> records) {
  CensusSummary s;
  for (const auto& r : records) {
    SummaryKey key{r.candidate.d,     r.candidate.spec().name(), r.upsilon_class,
                   r.upsilon_star_class, r.bipartite,               r.dual_bipartite};
    ++s.counts[key];
    ++s.total;
    if (r.dim_x != 5) ++s.dim_x_not_five;
  }
  return s;
}

CensusSummary census_report_from_lines(std::istream& in) {
  std::vector<CensusRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(io::parse_json(line)));
  }
  return census_report(records);
}

io::Json to_json(const CensusSummary& s) {
  io::Json rows = io::Json::array();
  for (const auto& [key, count] : s.counts) {
    rows.push_back(io::Json{{"d", key.d},
                            {"field", key.field},
                            {"upsilon_class", equality_class_name(key.upsilon_class)},
                            {"upsilon_star_class", equality_class_name(key.upsilon_star_class)},
                            {"bipartite", key.bipartite},
                            {"dual_bipartite", key.dual_bipartite},
                            {"count", count}});
  }
  return io::Json{{"rows", rows}, {"total", s.total}, {"dim_x_not_five", s.dim_x_not_five}};
}

std::string summary_table(const CensusSummary& s) {
  std::vector<std::vector<std::string>> cells{
      {"d", "field", "upsilon", "upsilon_star", "bipartite", "dual_bipartite", "count"}};
  const auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (const auto& [key, count] : s.counts) {
    cells.push_back({std::to_string(key.d), key.field, equality_class_name(key.upsilon_class),
                     equality_class_name(key.upsilon_star_class), yes_no(key.bipartite),
                     yes_no(key.dual_bipartite), std::to_string(count)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << std::left << std::setw(static_cast<int>(width[k])) << row[k];
      out << (k + 1 == row.size() ? "\n" : "  ");
    }
  }
  out << "total " << s.total << "\n";
  return out.str();
}

namespace {

struct ChunkResult {
  std::string lines;
  ScanStats stats;
};

ChunkResult scan_chunk(const CandidateSpace& space, std::uint64_t begin, std::uint64_t end) {
  ChunkResult out;
  for (std::uint64_t k = begin; k < end; ++k) {
    auto c = space.candidate_at(k, out.stats);
    if (!c) continue;
    CensusRecord r = classify(*c);
    r.index = k;
    out.lines += io::canonical_dump(to_json(r));
    out.lines += '\n';
  }
  return out;
}

void write_checkpoint(const std::filesystem::path& path, const CensusJob& job,
                      std::uint64_t next_chunk, std::uint64_t bytes, const ScanStats& stats) {
  const io::Json j{{"job", to_json(job)},
                   {"next_chunk", next_chunk},
                   {"records_bytes", bytes},
                   {"stats", stats_to_json(stats)}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << io::canonical_dump(j) << '\n';
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

CensusOutcome run_census(const CensusJob& job, const CensusRunOptions& options) {
  const CandidateSpace space(job);
  if (job.output.empty()) throw InvalidArgument("census job needs an output path");
  const std::filesystem::path records_path = job.output;
  std::filesystem::path ckpt_path = records_path;
  ckpt_path += ".ckpt";

  const std::uint64_t chunk = job.checkpoint_every;
  const std::uint64_t chunks = space.size() / chunk + (space.size() % chunk != 0 ? 1 : 0);
  std::uint64_t next_chunk = 0;
  std::uint64_t bytes = 0;
  ScanStats stats;

  if (options.resume) {
    std::ifstream in(ckpt_path);
    if (!in) throw ResumeError("no checkpoint at " + ckpt_path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      const auto j = io::Json::parse(buffer.str());
      if (j.at("job") != to_json(job)) {
        throw ResumeError("checkpoint belongs to a different job");
      }
      next_chunk = j.at("next_chunk").get<std::uint64_t>();
      bytes = j.at("records_bytes").get<std::uint64_t>();
      stats = stats_from_json(j.at("stats"));
    } catch (const io::Json::exception& e) {
      throw ResumeError(std::string("corrupt checkpoint: ") + e.what());
    }
    if (next_chunk > chunks) throw ResumeError("checkpoint is past the end of the job");
    std::error_code ec;
    const auto size = std::filesystem::file_size(records_path, ec);
    if (ec || size < bytes) throw ResumeError("records file is shorter than the checkpoint says");
    std::filesystem::resize_file(records_path, bytes);
  } else {
    std::ofstream truncate(records_path, std::ios::trunc);
    if (!truncate) throw Error("cannot open records file " + records_path.string());
    std::filesystem::remove(ckpt_path);
  }

  const unsigned workers = std::max(1U, options.workers);
  std::uint64_t budget = options.max_chunks.value_or(chunks);
  while (next_chunk < chunks && budget > 0) {
    const std::uint64_t wave = std::min<std::uint64_t>({workers, chunks - next_chunk, budget});
    std::vector<ChunkResult> results(wave);
    std::vector<std::exception_ptr> errors(wave);
    {
      std::vector<std::jthread> threads;
      for (std::uint64_t w = 0; w < wave; ++w) {
        threads.emplace_back([&, w] {
          try {
            const auto begin = (next_chunk + w) * chunk;
            results[w] = scan_chunk(space, begin, std::min(begin + chunk, space.size()));
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::ofstream out(records_path, std::ios::app | std::ios::binary);
    for (const auto& r : results) {
      out << r.lines;
      bytes += r.lines.size();
      stats += r.stats;
    }
    out.close();
    if (!out) throw Error("cannot append to " + records_path.string());
    next_chunk += wave;
    budget -= wave;
    write_checkpoint(ckpt_path, job, next_chunk, bytes, stats);
  }

  CensusOutcome outcome;
  outcome.stats = stats;
  outcome.complete = next_chunk == chunks;
  std::ifstream in(records_path);
  outcome.summary = census_report_from_lines(in);
  return outcome;
}

}  // namespace xtrid
