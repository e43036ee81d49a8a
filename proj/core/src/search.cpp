#include "cunningham/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "cunningham/arith.hpp"
#include "cunningham/error.hpp"

namespace cunningham {

namespace {

void validate(const SearchTask& task) {
  if (task.lo > task.hi) {
    raise(Errc::invalid_range, "search range is empty: lo = " + to_decimal(task.lo) +
                                   " > hi = " + to_decimal(task.hi));
  }
  if (task.lo < 1) raise(Errc::invalid_argument, "search roots start at 1");
  if (task.max_steps < task.min_length + 1) {
    raise(Errc::invalid_steps, "max_steps must be at least min_length + 1");
  }
}

RecordRow row_from(const RootedChain& rc) {
  RecordRow row{rc.root, rc.length, std::nullopt, std::nullopt, rc.truncated};
  if (!rc.elements.empty()) {
    row.first_element = rc.elements.front();
    row.last_element = rc.elements.back();
  }
  return row;
}

void scan_block(const SearchTask& task, const Integer& lo, const Integer& hi,
                std::vector<RecordRow>& out, std::atomic<unsigned long>& done) {
  for (Integer z = lo; z <= hi; ++z) {
    const RootedChain rc = rooted_chain(task.map, z, task.max_steps);
    if (rc.length >= task.min_length) out.push_back(row_from(rc));
    done.fetch_add(1, std::memory_order_relaxed);
  }
}

}  // namespace

std::vector<RecordRow> search_range(const SearchTask& task, unsigned jobs,
                                    const ProgressFn& progress) {
  validate(task);

  const Integer span = task.hi - task.lo + 1;
  unsigned long total = 0;
  const bool span_fits = mpz_fits_ulong_p(span.get_mpz_t());
  if (span_fits) total = mpz_get_ui(span.get_mpz_t());
  if (jobs < 1) jobs = 1;
  if (span_fits && total < jobs) jobs = static_cast<unsigned>(total);

  std::atomic<unsigned long> done{0};

  if (jobs == 1) {
    std::vector<RecordRow> rows;
    scan_block(task, task.lo, task.hi, rows, done);
    if (progress && span_fits) progress(done.load(), total);
    return rows;
  }

  // Contiguous blocks, one per worker; concatenating block results in
  // block order keeps roots ascending with no merge step.
  Integer width = (span + jobs - 1) / jobs;
  std::vector<std::vector<RecordRow>> partial(jobs);
  std::vector<std::exception_ptr> worker_error(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);

  std::mutex progress_mutex;
  std::atomic<bool> stop_progress{false};
  std::thread reporter;
  if (progress && span_fits) {
    reporter = std::thread([&] {
      while (!stop_progress.load()) {
        {
          std::lock_guard<std::mutex> lock(progress_mutex);
          progress(done.load(), total);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(200));
      }
    });
  }

  for (unsigned w = 0; w < jobs; ++w) {
    Integer block_lo = task.lo + width * w;
    Integer block_hi = std::min(Integer(block_lo + width - 1), task.hi);
    if (block_lo > task.hi) break;
    workers.emplace_back([&task, block_lo, block_hi, &partial, &worker_error, w, &done] {
      try {
        scan_block(task, block_lo, block_hi, partial[w], done);
      } catch (...) {
        worker_error[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();

  if (reporter.joinable()) {
    stop_progress.store(true);
    reporter.join();
  }
  for (const auto& error : worker_error) {
    if (error) std::rethrow_exception(error);
  }
  if (progress && span_fits) progress(done.load(), total);

  std::vector<RecordRow> rows;
  for (auto& block : partial) {
    rows.insert(rows.end(), std::make_move_iterator(block.begin()),
                std::make_move_iterator(block.end()));
  }
  return rows;
}

std::vector<RecordRow> longest_in_range(const SearchTask& task, unsigned jobs) {
  validate(task);
  SearchTask all = task;
  all.min_length = 0;
  const std::vector<RecordRow> rows = search_range(all, jobs);

  std::optional<unsigned long> best;
  for (const RecordRow& row : rows) {
    if (row.truncated) continue;
    if (!best || row.length > *best) best = row.length;
  }
  if (!best) {
    raise(Errc::all_truncated,
          "every chain in the range hit max_steps = " + std::to_string(task.max_steps));
  }

  std::vector<RecordRow> winners;
  for (const RecordRow& row : rows) {
    if (!row.truncated && row.length == *best) winners.push_back(row);
  }
  return winners;
}

std::string to_csv(const std::vector<RecordRow>& rows) {
  std::ostringstream out;
  out << "root,length,first_element,last_element,truncated\n";
  for (const RecordRow& row : rows) {
    out << to_decimal(row.root) << ',' << row.length << ','
        << (row.first_element ? to_decimal(*row.first_element) : "") << ','
        << (row.last_element ? to_decimal(*row.last_element) : "") << ','
        << (row.truncated ? "true" : "false") << '\n';
  }
  return out.str();
}

BoundReport verify_bound_range(const LinearMap& f, const Integer& lo,
                               const Integer& hi, unsigned long max_steps) {
  if (lo < 2) raise(Errc::invalid_argument, "verify_bound_range requires lo >= 2");
  if (lo > hi) raise(Errc::invalid_range, "verify_bound_range requires lo <= hi");

  const Integer threshold = s_term_threshold(f);
  BoundReport report;

  for (Integer z = lo; z <= hi; ++z) {
    BoundRow row;
    row.root = z;

    if (gcd(z, f.b()) > 1) {
      row.status = BoundStatus::shared_factor;
      ++report.uncertified;
      report.rows.push_back(std::move(row));
      continue;
    }

    std::optional<Certificate> cert;
    try {
      cert = tighten(f, z);
    } catch (const Error&) {
    }
    if (!cert) {
      try {
        cert = root_divisor_witness(f, z);
      } catch (const Error&) {
      }
    }
    if (!cert) {
      try {
        cert = s_term_witness(f, z);
      } catch (const Error&) {
      }
    }
    if (!cert) {
      row.status = BoundStatus::no_candidate;
      ++report.uncertified;
      report.rows.push_back(std::move(row));
      continue;
    }

    row.prime = cert->prime;
    row.witness_index = cert->witness_index;
    if (!verify_certificate(*cert)) {
      row.status = BoundStatus::verify_failed;
      report.all_ok = false;
      report.rows.push_back(std::move(row));
      continue;
    }

    row.status = BoundStatus::certified;
    ++report.certified;
    row.bound_expected = (gcd(z, f.a()) == 1) || (z > threshold);
    if (row.bound_expected && cert->witness_index >= z) {
      row.status = BoundStatus::bound_violated;
      report.all_ok = false;
    }

    // The certificate claims l(z) < witness_index; confirm against the
    // actually iterated chain whenever it terminates.
    const RootedChain rc = rooted_chain(f, z, max_steps);
    if (!rc.truncated) {
      row.length_checked = true;
      row.length_below_witness = Integer(rc.length) < cert->witness_index;
      if (!row.length_below_witness) report.all_ok = false;
    }

    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cunningham
