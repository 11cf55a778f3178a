#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "constel/betaset.hpp"
#include "constel/charengine.hpp"

using namespace constel;

namespace {

// Grid-level border strip test, independent of the particle model: the
// cells of theta minus nu must number k, be edge-connected, and contain no
// 2x2 square.
bool is_border_strip(const Partition& theta, const Partition& nu, int k) {
    if (nu.length() > theta.length()) return false;
    for (int i = 1; i <= nu.length(); ++i)
        if (nu.part_or_zero(i) > theta.part_or_zero(i)) return false;
    std::set<std::pair<int, int>> cells;
    for (int i = 1; i <= theta.length(); ++i)
        for (int j = nu.part_or_zero(i) + 1; j <= theta.part_or_zero(i); ++j) cells.insert({i, j});
    if (static_cast<int>(cells.size()) != k) return false;
    for (const auto& [i, j] : cells)
        if (cells.count({i + 1, j}) && cells.count({i, j + 1}) && cells.count({i + 1, j + 1}))
            return false;
    // connectivity by flood fill
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> stack{*cells.begin()};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (!cells.count({i, j}) || seen.count({i, j})) continue;
        seen.insert({i, j});
        stack.push_back({i + 1, j});
        stack.push_back({i - 1, j});
        stack.push_back({i, j + 1});
        stack.push_back({i, j - 1});
    }
    return seen.size() == cells.size();
}

// Reachability oracle: theta empties under repeated m-strip removal.
bool strips_reach_empty(const Partition& theta, int m, std::map<Partition, bool>& memo) {
    if (theta.empty()) return true;
    if (theta.size() % m != 0) return false;
    auto it = memo.find(theta);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (const Partition& nu : partitions_of(theta.size() - m)) {
        if (!is_border_strip(theta, nu, m)) continue;
        if (strips_reach_empty(nu, m, memo)) {
            ok = true;
            break;
        }
    }
    memo.emplace(theta, ok);
    return ok;
}

// Sign via an arbitrary (seeded) removal order instead of the greedy one.
int sign_theta_random_order(const Partition& theta, int m, unsigned seed) {
    const int depth = [&] {
        int d = theta.length() + theta.size() + m;
        return ((d + m - 1) / m) * m;
    }();
    std::set<long> occupied;
    for (long x : beta_window(theta, depth)) occupied.insert(x);
    std::mt19937 rng(seed);
    long jump_overs = 0;
    for (int step = 0; step < theta.size() / m; ++step) {
        std::vector<long> sources;
        for (long p : occupied)
            if (p - m >= -depth && !occupied.count(p - m)) sources.push_back(p);
        REQUIRE(!sources.empty());
        const long src = sources[rng() % sources.size()];
        for (long q = src - m + 1; q < src; ++q)
            if (occupied.count(q)) ++jump_overs;
        occupied.erase(src);
        occupied.insert(src - m);
    }
    return jump_overs % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("beta set encoding") {
    // S = {3, 0, -1, -2, -4, -5, -7, -8, ...}
    const BetaSet b = to_beta(Partition({4, 2, 2, 2, 1, 1}));
    CHECK(b.positives == std::vector<long>{3, 0});
    CHECK(b.negatives_absent == std::vector<long>{-3, -6});

    const BetaSet empty = to_beta(Partition{});
    CHECK(empty.positives.empty());
    CHECK(empty.negatives_absent.empty());

    const BetaSet one = to_beta(Partition({1}));
    CHECK(one.positives == std::vector<long>{0});
    CHECK(one.negatives_absent == std::vector<long>{-1});
}

TEST_CASE("beta window") {
    CHECK(beta_window(Partition({4, 2, 2, 2, 1, 1}), 8) ==
          std::vector<long>{3, 0, -1, -2, -4, -5, -7, -8});
    CHECK(beta_window(Partition{}, 3) == std::vector<long>{-1, -2, -3});
}

TEST_CASE("beta round trip") {
    for (int n = 0; n <= 12; ++n)
        for (const Partition& p : partitions_of(n)) CHECK(from_beta(to_beta(p)) == p);
}

TEST_CASE("from_beta rejects bad sets") {
    CHECK_THROWS_AS(from_beta(BetaSet{{0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(from_beta(BetaSet{{0, 2}, {-1}}), std::invalid_argument);     // charge
    CHECK_THROWS_AS(from_beta(BetaSet{{0, 0}, {-1, -2}}), std::invalid_argument); // not decreasing
    CHECK_THROWS_AS(from_beta(BetaSet{{-1}, {-1}}), std::invalid_argument);
}

TEST_CASE("m_split examples") {
    auto split = m_split(Partition({6, 6, 4, 4, 4, 3, 3}), 3);
    REQUIRE(split.has_value());
    CHECK((*split)[0] == Partition({1, 1}));
    CHECK((*split)[1] == Partition({2, 2}));
    CHECK((*split)[2] == Partition({2, 1, 1}));

    auto empty_split = m_split(Partition{}, 4);
    REQUIRE(empty_split.has_value());
    CHECK(empty_split->size() == 4);
    for (const Partition& c : *empty_split) CHECK(c.empty());

    CHECK_FALSE(m_split(Partition({1}), 2).has_value());
    CHECK(m_split(Partition({4, 2, 2, 2, 1, 1}), 2).has_value());
    auto two = m_split(Partition({4, 2, 2, 2, 1, 1}), 2);
    CHECK((*two)[0] == Partition({1, 1, 1}));
    CHECK((*two)[1] == Partition({2, 1}));
}

TEST_CASE("m_split agrees with exhaustive strip removal") {
    for (int m : {2, 3}) {
        std::map<Partition, bool> memo;
        for (int n = 0; n <= 12; ++n)
            for (const Partition& theta : partitions_of(n)) {
                const auto split = m_split(theta, m);
                CHECK(split.has_value() == strips_reach_empty(theta, m, memo));
                if (split) {
                    int total = 0;
                    for (const Partition& c : *split) total += c.size();
                    CHECK(m * total == theta.size());
                }
            }
    }
}

TEST_CASE("sign_theta examples") {
    CHECK(sign_theta(Partition({2}), 2) == 1);
    CHECK(sign_theta(Partition({1, 1}), 2) == -1);
    for (int m = 2; m <= 5; ++m) CHECK(sign_theta(Partition({m}), m) == 1);
    CHECK(sign_theta(Partition({6, 6, 4, 4, 4, 3, 3}), 3) == 1);
    CHECK_THROWS_AS(sign_theta(Partition({1}), 2), std::invalid_argument);
    CHECK(sign_theta(Partition({2, 1, 1}), 4) == 1);  // single hook spanning three rows
    CHECK_THROWS_AS(sign_theta(Partition({2, 2}), 4), std::invalid_argument);
}

TEST_CASE("sign_theta is removal-order independent") {
    for (int m : {2, 3}) {
        for (int n = m; n <= 9; n += m) {
            for (const Partition& theta : partitions_of(n)) {
                if (!m_split(theta, m)) continue;
                const int expected = sign_theta(theta, m);
                for (unsigned seed : {1u, 2u, 3u})
                    CHECK(sign_theta_random_order(theta, m, seed) == expected);
            }
        }
    }
}

TEST_CASE("sign_theta matches the character factorization on small cases") {
    // chi at [m] for a splittable theta of size m is sgn_theta times the
    // product of component dimensions (single decomposition, lam = (1)).
    for (int m : {2, 3, 4}) {
        for (const Partition& theta : partitions_of(m)) {
            auto split = m_split(theta, m);
            if (!split) continue;
            Int expected = sign_theta(theta, m);
            for (const Partition& c : *split) expected *= dimension(c);
            CHECK(chi(theta, Partition({m})) == expected);
        }
    }
}
