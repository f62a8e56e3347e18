#include "ropas/task_set.hpp"

#include "ropas/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace ropas;

TEST_CASE("task_set basics: membership, count, emptiness") {
  task_set s(5);
  CHECK(s.universe() == 5);
  CHECK(s.empty());
  CHECK(s.count() == 0);
  s.set(0);
  s.set(3);
  CHECK(!s.empty());
  CHECK(s.count() == 2);
  CHECK(s.test(0));
  CHECK(!s.test(1));
  CHECK(s.test(3));
  s.reset(0);
  CHECK(!s.test(0));
  CHECK(s.count() == 1);
  CHECK(!s.full());
  for (int t = 0; t < 5; ++t) s.set(t);
  CHECK(s.full());
}

TEST_CASE("task_set rejects out-of-range ids") {
  task_set s(3);
  CHECK_THROWS_AS(s.set(3), validation_error);
  CHECK_THROWS_AS(s.set(-1), validation_error);
  CHECK_THROWS_AS(s.reset(7), validation_error);
  CHECK_THROWS_AS(task_set(-1), validation_error);
}

TEST_CASE("task_set algebra") {
  task_set a = task_set::of(6, {0, 2, 4});
  task_set b = task_set::of(6, {2, 3});
  CHECK((a | b) == task_set::of(6, {0, 2, 3, 4}));
  CHECK((a & b) == task_set::of(6, {2}));
  CHECK((a - b) == task_set::of(6, {0, 4}));
  CHECK(a.contains(task_set::of(6, {0, 4})));
  CHECK(!a.contains(b));
  CHECK(a.contains(task_set(6)));  // empty set is in everything
  CHECK(a.intersects(b));
  CHECK(!a.intersects(task_set::of(6, {1, 5})));
}

TEST_CASE("compare_value orders sets by bit-vector value") {
  // {6} = 64 outranks {0,1,2} = 7 even though it has fewer members
  task_set lo = task_set::of(8, {0, 1, 2});
  task_set hi = task_set::of(8, {6});
  CHECK(lo.compare_value(hi) < 0);
  CHECK(hi.compare_value(lo) > 0);
  CHECK(lo.compare_value(lo) == 0);

  // the high word must dominate for sets wider than 64 tasks
  task_set wide_lo = task_set::of(70, {0, 1, 2, 3, 63});
  task_set wide_hi = task_set::of(70, {64});
  CHECK(wide_lo.compare_value(wide_hi) < 0);
}

TEST_CASE("iteration runs ascending across word boundaries") {
  task_set s = task_set::of(130, {0, 63, 64, 100, 129});
  CHECK(s.to_vector() == std::vector<int>{0, 63, 64, 100, 129});
  CHECK(s.find_first() == 0);
  CHECK(task_set(4).find_first() == -1);
}

TEST_CASE("hex keys: canonical lowercase, least significant bit is task 0") {
  CHECK(task_set(4).to_hex() == "0");
  CHECK(task_set::of(4, {0}).to_hex() == "1");
  CHECK(task_set::of(4, {1, 3}).to_hex() == "a");
  CHECK(task_set::of(8, {4, 5, 6, 7}).to_hex() == "f0");
  CHECK(task_set::of(70, {64}).to_hex() == "10000000000000000");

  CHECK(task_set::from_hex("a", 4) == task_set::of(4, {1, 3}));
  CHECK(task_set::from_hex("A", 4) == task_set::of(4, {1, 3}));  // parser is lenient
  CHECK(task_set::from_hex("00f0", 8) == task_set::of(8, {4, 5, 6, 7}));
  CHECK(task_set::from_hex("0", 12) == task_set(12));
  CHECK_THROWS_AS(task_set::from_hex("", 4), validation_error);
  CHECK_THROWS_AS(task_set::from_hex("zz", 4), validation_error);
  CHECK_THROWS_AS(task_set::from_hex("10", 4), validation_error);  // bit 4 of a 4-universe
}

TEST_CASE("hex round-trips for scattered sets") {
  for (int universe : {1, 7, 64, 65, 128, 200}) {
    task_set s(universe);
    for (int t = 0; t < universe; t += 1 + t / 3) s.set(t);
    CHECK(task_set::from_hex(s.to_hex(), universe) == s);
  }
}

TEST_CASE("bit strings read left to right as task 0,1,2,...") {
  CHECK(task_set::of(4, {1, 2}).to_bitstring() == "0110");
  CHECK(task_set(3).to_bitstring() == "000");
}

TEST_CASE("hashes agree exactly when sets agree") {
  task_set a = task_set::of(90, {3, 70});
  task_set b = task_set::of(90, {3, 70});
  task_set c = task_set::of(90, {3, 71});
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());  // not guaranteed in theory, required of FNV here
}
