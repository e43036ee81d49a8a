#include "cunningham/search.hpp"

#include <doctest.h>

#include "cunningham/arith.hpp"
#include "cunningham/error.hpp"
#include "oracles.hpp"

using cunningham::Errc;
using cunningham::Error;
using cunningham::Integer;
using cunningham::LinearMap;
using cunningham::RecordRow;
using cunningham::SearchTask;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a cunningham::Error");
  return Errc::invalid_argument;
}

// Row set computed entirely by the brute-force oracle.
std::vector<RecordRow> brute_rows(const LinearMap& f, long lo, long hi,
                                  unsigned long min_length, unsigned long max_steps) {
  std::vector<RecordRow> rows;
  for (long z = lo; z <= hi; ++z) {
    const auto chain = oracle::brute_rooted_chain(f.a(), f.b(), z, max_steps);
    if (chain.elements.size() < min_length) continue;
    RecordRow row{Integer(z), chain.elements.size(), std::nullopt, std::nullopt,
                  chain.truncated};
    if (!chain.elements.empty()) {
      row.first_element = chain.elements.front();
      row.last_element = chain.elements.back();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE_BEGIN("search");

TEST_CASE("search_range equals brute force and spots the known roots") {
  const LinearMap f(2, 3);
  const SearchTask task{f, 1, 40, 4, 64};
  const auto rows = cunningham::search_range(task);
  CHECK(rows == brute_rows(f, 1, 40, 4, 64));

  bool seen_root_1 = false, seen_root_32 = false;
  for (const auto& row : rows) {
    if (row.root == 1) {
      seen_root_1 = true;
      CHECK(row.length == 4);
      CHECK(row.first_element == Integer(5));
      CHECK(row.last_element == Integer(61));
    }
    if (row.root == 32) {
      seen_root_32 = true;
      CHECK(row.length == 6);
      CHECK(row.first_element == Integer(67));
      CHECK(row.last_element == Integer(2237));
    }
  }
  CHECK(seen_root_1);
  CHECK(seen_root_32);
}

TEST_CASE("search_range finds the 41,83,167 chain from root 20") {
  const SearchTask task{LinearMap(2, 1), 15, 25, 3, 64};
  const auto rows = cunningham::search_range(task);
  bool seen = false;
  for (const auto& row : rows) {
    if (row.root == 20) {
      seen = true;
      CHECK(row.length == 3);
      CHECK(row.first_element == Integer(41));
      CHECK(row.last_element == Integer(167));
    }
  }
  CHECK(seen);
  CHECK(cunningham::search_range(task) == brute_rows(LinearMap(2, 1), 15, 25, 3, 64));
}

TEST_CASE("task invariants are enforced") {
  CHECK(code_of([] {
          cunningham::search_range(SearchTask{LinearMap(2, 1), 10, 9, 0, 64});
        }) == Errc::invalid_range);
  CHECK(code_of([] {
          cunningham::search_range(SearchTask{LinearMap(2, 1), 1, 9, 4, 4});
        }) == Errc::invalid_steps);
  CHECK(code_of([] {
          cunningham::search_range(SearchTask{LinearMap(2, 1), 0, 9, 0, 64});
        }) == Errc::invalid_argument);
}

TEST_CASE("worker count never changes the result") {
  const SearchTask task{LinearMap(2, 3), 1, 150, 0, 32};
  const auto serial = cunningham::search_range(task, 1);
  for (unsigned jobs : {2u, 3u, 4u, 7u, 200u}) {
    CAPTURE(jobs);
    REQUIRE(cunningham::search_range(task, jobs) == serial);
    REQUIRE(cunningham::to_csv(cunningham::search_range(task, jobs)) ==
            cunningham::to_csv(serial));
  }
  // ascending and complete: min_length 0 reports every root
  REQUIRE(serial.size() == 150);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].root == Integer(i + 1));
  }
}

TEST_CASE("progress reporting is monotone and reaches the total") {
  const SearchTask task{LinearMap(2, 1), 1, 60, 0, 16};
  unsigned long last = 0, total = 0;
  bool monotone = true;
  cunningham::search_range(task, 3, [&](unsigned long done, unsigned long all) {
    monotone = monotone && done >= last;
    last = done;
    total = all;
  });
  CHECK(monotone);
  CHECK(last == 60);
  CHECK(total == 60);
}

TEST_CASE("longest_in_range") {
  SUBCASE("roots 22 and 32 share the record for 2z+3 below 40") {
    // Brute force over the range: exactly two chains reach the maximal
    // length 6, {47,...,1597} from 22 and {67,...,2237} from 32.
    unsigned long best = 0;
    std::vector<Integer> expect;
    for (long z = 1; z <= 40; ++z) {
      const auto chain = oracle::brute_rooted_chain(2, 3, z, 64);
      if (chain.elements.size() > best) {
        best = chain.elements.size();
        expect.clear();
      }
      if (chain.elements.size() == best) expect.push_back(z);
    }
    REQUIRE(best == 6);
    REQUIRE(expect == std::vector<Integer>{22, 32});

    const auto winners =
        cunningham::longest_in_range(SearchTask{LinearMap(2, 3), 1, 40, 0, 64});
    REQUIRE(winners.size() == 2);
    CHECK(winners[0].root == 22);
    CHECK(winners[0].length == 6);
    CHECK(winners[1].root == 32);
    CHECK(winners[1].length == 6);
    CHECK(winners[1].first_element == Integer(67));
    CHECK(winners[1].last_element == Integer(2237));
  }
  SUBCASE("record holders for 2z+1 below 50 match brute force") {
    const auto winners =
        cunningham::longest_in_range(SearchTask{LinearMap(2, 1), 2, 50, 0, 64});
    unsigned long best = 0;
    std::vector<Integer> expect;
    for (long z = 2; z <= 50; ++z) {
      const auto chain = oracle::brute_rooted_chain(2, 1, z, 64);
      if (chain.elements.size() > best) {
        best = chain.elements.size();
        expect.clear();
      }
      if (chain.elements.size() == best) expect.push_back(z);
    }
    REQUIRE(winners.size() == expect.size());
    for (std::size_t i = 0; i < winners.size(); ++i) {
      CHECK(winners[i].root == expect[i]);
      CHECK(winners[i].length == best);
    }
  }
  SUBCASE("single root with an immediate composite") {
    const auto winners =
        cunningham::longest_in_range(SearchTask{LinearMap(2, 1), 4, 4, 0, 64});
    REQUIRE(winners.size() == 1);
    CHECK(winners[0].root == 4);
    CHECK(winners[0].length == 0);  // f(4) = 9 composite
  }
  SUBCASE("all-truncated range is an error") {
    // f(2) = 5 is prime, so max_steps = 1 truncates the only chain.
    CHECK(code_of([] {
            cunningham::longest_in_range(SearchTask{LinearMap(2, 1), 2, 2, 0, 1});
          }) == Errc::all_truncated);
  }
}

TEST_CASE("csv rendering") {
  const auto rows = cunningham::search_range(SearchTask{LinearMap(2, 3), 1, 5, 0, 64});
  const std::string csv = cunningham::to_csv(rows);
  // By hand: 2 -> {7,17,37} then 77; 3 shares the offset; 4 -> {11} then 25;
  // 5 -> {13,29,61} then 125.
  CHECK(csv ==
        "root,length,first_element,last_element,truncated\n"
        "1,4,5,61,false\n"
        "2,3,7,37,false\n"
        "3,0,,,false\n"
        "4,1,11,11,false\n"
        "5,3,13,61,false\n");

  // Truncated rows keep their last element and flag it.
  const auto cut = cunningham::search_range(SearchTask{LinearMap(2, 1), 2, 2, 0, 2});
  CHECK(cunningham::to_csv(cut) ==
        "root,length,first_element,last_element,truncated\n"
        "2,2,5,11,true\n");
}

TEST_CASE("verify_bound_range certifies an interval above the threshold") {
  const auto report = cunningham::verify_bound_range(LinearMap(2, 3), 22, 100, 64);
  CHECK(report.all_ok);
  for (const auto& row : report.rows) {
    CAPTURE(row.root.get_str());
    if (cunningham::gcd(row.root, 3) > 1) {
      REQUIRE(row.status == cunningham::BoundStatus::shared_factor);
      continue;
    }
    REQUIRE(row.status == cunningham::BoundStatus::certified);
    REQUIRE(row.bound_expected);  // every such z exceeds M = 21
    REQUIRE(*row.witness_index < row.root);
  }
}

TEST_CASE("verify_bound_range reports the documented gap at z = 2") {
  const auto report = cunningham::verify_bound_range(LinearMap(2, 1), 2, 2, 64);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].status == cunningham::BoundStatus::no_candidate);
  CHECK(report.all_ok);  // a gap is not a failure
  CHECK(report.uncertified == 1);
}

TEST_CASE("verify_bound_range pins the root-32 bound") {
  const auto report = cunningham::verify_bound_range(LinearMap(2, 3), 32, 32, 64);
  REQUIRE(report.rows.size() == 1);
  const auto& row = report.rows[0];
  CHECK(row.status == cunningham::BoundStatus::certified);
  CHECK(*row.witness_index == 7);
  CHECK(row.length_checked);
  CHECK(row.length_below_witness);  // observed length 6 < 7
}

TEST_SUITE_END();
