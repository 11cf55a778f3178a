#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "constel/partition.hpp"

using namespace constel;

namespace {

// Independent oracle: standard Young tableaux counted by corner-removal
// recursion, no hook lengths anywhere.
Int count_syt(const Partition& p, std::map<Partition, Int>& memo) {
    if (p.empty()) return 1;
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    Int total = 0;
    for (int row = 1; row <= p.length(); ++row) {
        const bool corner = row == p.length() || p[row - 1] > p[row];
        if (!corner) continue;
        std::vector<int> parts = p.parts();
        --parts[static_cast<std::size_t>(row - 1)];
        total += count_syt(Partition::from_unsorted(parts), memo);
    }
    memo.emplace(p, total);
    return total;
}

}  // namespace

TEST_CASE("construction and validation") {
    CHECK(Partition{}.empty());
    CHECK(Partition{}.size() == 0);
    CHECK(Partition{}.length() == 0);
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, -1}), std::invalid_argument);
    CHECK(Partition({3, 1, 0, 0}) == Partition({3, 1}));
    CHECK(Partition::from_unsorted({1, 3, 2}) == Partition({3, 2, 1}));
}

TEST_CASE("serialization round trip") {
    CHECK(Partition({6, 6, 4, 4, 4, 3, 3}).to_string() == "6,6,4,4,4,3,3");
    CHECK(Partition{}.to_string() == "");
    CHECK(Partition::parse("6,6,4,4,4,3,3") == Partition({6, 6, 4, 4, 4, 3, 3}));
    CHECK(Partition::parse("") == Partition{});
    CHECK_THROWS_AS(Partition::parse("3,,1"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("1,3"), std::invalid_argument);
}

TEST_CASE("conjugate") {
    CHECK(conjugate(Partition({3, 1})) == Partition({2, 1, 1}));
    CHECK(conjugate(Partition{}) == Partition{});
    CHECK(conjugate(Partition({2, 2})) == Partition({2, 2}));
    for (int n = 0; n <= 9; ++n)
        for (const Partition& p : partitions_of(n)) CHECK(conjugate(conjugate(p)) == p);
}

TEST_CASE("z_of") {
    CHECK(z_of(Partition({1, 1, 1})) == 6);
    CHECK(z_of(Partition({2, 1})) == 2);
    CHECK(z_of(Partition({3, 3})) == 18);
    CHECK(z_of(Partition{}) == 1);
    // n!/z_lambda is a class size, hence integral; class sizes sum to n!
    for (int n = 1; n <= 9; ++n) {
        Int total = 0;
        for (const Partition& p : partitions_of(n))
            total += exact_div(factorial(static_cast<unsigned long>(n)), z_of(p), "class size");
        CHECK(total == factorial(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("dimension matches tableau counting") {
    CHECK(dimension(Partition({5})) == 1);
    CHECK(dimension(Partition({2, 1})) == 2);
    CHECK(dimension(Partition({2, 2})) == 2);
    CHECK(dimension(Partition{}) == 1);
    std::map<Partition, Int> memo;
    for (int n = 0; n <= 10; ++n)
        for (const Partition& p : partitions_of(n)) CHECK(dimension(p) == count_syt(p, memo));
}

TEST_CASE("scale") {
    CHECK(scale(Partition({2, 1}), 3) == Partition({6, 3}));
    CHECK(scale(Partition({1, 1, 1}), 2) == Partition({2, 2, 2}));
    CHECK(scale(Partition{}, 5) == Partition{});
    CHECK_THROWS_AS(scale(Partition({1}), 0), std::invalid_argument);
}

TEST_CASE("partition enumeration") {
    const int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 0; n <= 12; ++n) CHECK(partitions_of(n).size() == static_cast<std::size_t>(expected[n]));
    CHECK(partitions_of(3).front() == Partition({3}));
    CHECK(partitions_of(3).back() == Partition({1, 1, 1}));
    for (const Partition& p : partitions_of(8)) CHECK(p.size() == 8);
}
