#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>
#include <string>

#include "eclk/dataset.hpp"

using namespace eclk;

TEST_CASE("parses the canonical label convention") {
  std::istringstream in(
      "+1 1:0.5 3:-2\n"
      "-1 2:1.25\n"
      "+1 1:1 2:1 3:1\n");
  const Dataset ds = ParseLibsvm(in);
  CHECK(ds.num_samples == 3);
  CHECK(ds.d == 3);
  CHECK(ds.y == std::vector<double>{1.0, -1.0, 1.0});
  CHECK(ds.row_ptr == std::vector<int>{0, 2, 3, 6});
  CHECK(ds.col == std::vector<int>{0, 2, 1, 0, 1, 2});
  CHECK(ds.val == std::vector<double>{0.5, -2.0, 1.25, 1.0, 1.0, 1.0});
}

TEST_CASE("remaps zero-one and one-two label sets") {
  std::istringstream zo("0 1:1\n1 1:2\n0 2:3\n");
  const Dataset a = ParseLibsvm(zo);
  CHECK(a.y == std::vector<double>{-1.0, 1.0, -1.0});

  std::istringstream ot("2 1:1\n1 1:2\n");
  const Dataset b = ParseLibsvm(ot);
  CHECK(b.y == std::vector<double>{1.0, -1.0});
}

TEST_CASE("skips blank lines and comments are not supported") {
  std::istringstream in("+1 1:1\n\n   \n-1 2:1\n");
  const Dataset ds = ParseLibsvm(in);
  CHECK(ds.num_samples == 2);
}

TEST_CASE("rejects malformed input with the line number") {
  auto expect_throw = [](const char* text, const char* needle) {
    std::istringstream in(text);
    try {
      ParseLibsvm(in);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_throw("+1 0:1\n", "line 1");              // 1-based indices only
  expect_throw("+1 2:1 2:2\n", "line 1");          // not strictly increasing
  expect_throw("+1 3:1 2:2\n", "line 1");          // decreasing
  expect_throw("+1 1:1\n-1 x:1\n", "line 2");      // junk index
  expect_throw("+1 1:abc\n", "line 1");            // junk value
  expect_throw("5 1:1\n", "label");                // unknown label set
  expect_throw("", "empty");
}

TEST_CASE("mixed label conventions in one file are rejected") {
  std::istringstream in("0 1:1\n-1 1:2\n");
  CHECK_THROWS_AS(ParseLibsvm(in), ParseError);
}

TEST_CASE("dimension override") {
  std::istringstream ok("+1 1:1\n");
  const Dataset ds = ParseLibsvm(ok, 10);
  CHECK(ds.d == 10);
  std::istringstream bad("+1 11:1\n");
  CHECK_THROWS_AS(ParseLibsvm(bad, 10), ParseError);
}

TEST_CASE("write / parse round trip preserves content") {
  std::istringstream in("+1 1:0.5 3:-0.125\n-1 2:3\n+1 1:1e-3\n");
  const Dataset ds = ParseLibsvm(in, 5);
  std::ostringstream out;
  WriteLibsvm(ds, out);
  std::istringstream back_in(out.str());
  const Dataset back = ParseLibsvm(back_in, 5);
  CHECK(back.Hash() == ds.Hash());
  CHECK(back.col == ds.col);
  CHECK(back.val == ds.val);
  CHECK(back.y == ds.y);
}

TEST_CASE("hash is content sensitive") {
  std::istringstream in1("+1 1:1 2:2\n");
  std::istringstream in2("+1 1:1 2:2.0000001\n");
  std::istringstream in3("-1 1:1 2:2\n");
  const std::uint64_t h1 = ParseLibsvm(in1).Hash();
  CHECK(h1 != ParseLibsvm(in2).Hash());
  CHECK(h1 != ParseLibsvm(in3).Hash());
  std::istringstream in4("+1 1:1 2:2\n");
  CHECK(h1 == ParseLibsvm(in4).Hash());
}

TEST_CASE("row accessors") {
  std::istringstream in("+1 1:3 4:-1\n-1 2:2\n");
  const Dataset ds = ParseLibsvm(in);
  const double x[4] = {1.0, 10.0, 100.0, 1000.0};
  CHECK(ds.RowDot(0, x) == doctest::Approx(3.0 - 1000.0));
  CHECK(ds.RowDot(1, x) == doctest::Approx(20.0));
  CHECK(ds.RowSquaredNorm(0) == doctest::Approx(10.0));
  CHECK(ds.RowSquaredNorm(1) == doctest::Approx(4.0));
  CHECK(ds.RowNnz(0) == 2);
  CHECK(ds.RowNnz(1) == 1);
}

TEST_CASE("partition shuffles, splits evenly, drops the surplus") {
  const Partition part = MakePartition(103, 10, 42);
  CHECK(part.n == 10);
  CHECK(part.m == 10);
  std::set<int> seen;
  for (const auto& shard : part.shards) {
    CHECK(shard.size() == 10);
    for (int row : shard) {
      CHECK(row >= 0);
      CHECK(row < 103);
      CHECK(seen.insert(row).second);  // no row on two nodes
    }
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("partition is seed deterministic") {
  const Partition a = MakePartition(50, 5, 7);
  const Partition b = MakePartition(50, 5, 7);
  const Partition c = MakePartition(50, 5, 8);
  CHECK(a.shards == b.shards);
  CHECK(a.shards != c.shards);
}

TEST_CASE("block split keeps the given order contiguously") {
  std::vector<int> order = {9, 3, 5, 1, 0, 7};
  const Partition part = SplitBlocks(order, 3);
  CHECK(part.m == 2);
  CHECK(part.shards[0] == std::vector<int>{9, 3});
  CHECK(part.shards[1] == std::vector<int>{5, 1});
  CHECK(part.shards[2] == std::vector<int>{0, 7});
}

TEST_CASE("partition argument validation") {
  CHECK_THROWS_AS(MakePartition(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(MakePartition(5, 6, 1), std::invalid_argument);
  CHECK_NOTHROW(MakePartition(5, 5, 1));
}
