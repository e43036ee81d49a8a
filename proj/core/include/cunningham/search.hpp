#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cunningham/certify.hpp"
#include "cunningham/chain.hpp"

namespace cunningham {

/// A range-search job: every root z in [lo, hi] whose rooted chain reaches
/// min_length elements is reported. max_steps must leave room for at least
/// min_length + 1 iterations so a qualifying chain can terminate.
struct SearchTask {
  LinearMap map;
  Integer lo;
  Integer hi;
  unsigned long min_length = 0;
  unsigned long max_steps = 64;
};

/// One result row, consistent with rooted_chain(map, root, max_steps).
/// first/last are absent for length-zero chains.
struct RecordRow {
  Integer root;
  unsigned long length = 0;
  std::optional<Integer> first_element;
  std::optional<Integer> last_element;
  bool truncated = false;

  bool operator==(const RecordRow&) const = default;
};

using ProgressFn = std::function<void(unsigned long roots_done, unsigned long roots_total)>;

/// Scans [lo, hi], one rooted chain per root, on `jobs` workers over
/// contiguous sub-ranges. Rows come back in ascending root order and are
/// bit-identical for every worker count. Progress, when requested, is
/// reported out of band and never touches the result.
std::vector<RecordRow> search_range(const SearchTask& task, unsigned jobs = 1,
                                    const ProgressFn& progress = nullptr);

/// All rows achieving the maximum non-truncated length in the range, ties
/// in ascending root order. Throws Errc::all_truncated when every chain in
/// the range hit max_steps.
std::vector<RecordRow> longest_in_range(const SearchTask& task, unsigned jobs = 1);

/// CSV rendering of search rows: header `root,length,first_element,
/// last_element,truncated`, decimal integers, true/false flags, LF line
/// endings, empty element cells for length-zero rows.
std::string to_csv(const std::vector<RecordRow>& rows);

enum class BoundStatus {
  certified,        // certificate found and verified
  shared_factor,    // gcd(z, b) > 1: length 0, nothing to certify
  no_candidate,     // no witness exists in the scan window
  verify_failed,    // generated certificate failed re-verification (a bug)
  bound_violated,   // witness_index >= z although a bound applies
};

struct BoundRow {
  Integer root;
  BoundStatus status = BoundStatus::no_candidate;
  std::optional<Integer> prime;
  std::optional<Integer> witness_index;
  bool bound_expected = false;   // gcd(z, a) = 1 or z > M
  bool length_checked = false;   // chain terminated within max_steps
  bool length_below_witness = false;  // observed length < witness_index
};

struct BoundReport {
  std::vector<BoundRow> rows;
  unsigned long certified = 0;
  unsigned long uncertified = 0;  // shared_factor + no_candidate
  bool all_ok = true;             // no verify_failed / bound_violated / length breach
};

/// For every z in [lo, hi] (lo >= 2): obtain the tightest certificate
/// available (falling back across the root-divisor and s-term paths),
/// re-verify it, check witness_index < z whenever z is coprime to a or
/// exceeds M, and cross-check the claimed bound against the actually
/// iterated chain when it terminates within max_steps.
BoundReport verify_bound_range(const LinearMap& f, const Integer& lo,
                               const Integer& hi, unsigned long max_steps = 64);

}  // namespace cunningham
