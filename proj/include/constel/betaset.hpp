#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "constel/partition.hpp"

namespace constel {

// A partition as a particle configuration on the integers: position
// lambda_i - i carries a particle for every row i >= 1 (rows beyond the
// last part contribute the solid tail -l-1, -l-2, ...). The stored form
// is the charge-0 normalization: the finite set of occupied nonnegative
// positions plus the finite set of vacant negative positions.
struct BetaSet {
    std::vector<long> positives;        // occupied positions >= 0, strictly decreasing
    std::vector<long> negatives_absent; // vacant positions < 0, strictly decreasing
};

inline bool operator==(const BetaSet& a, const BetaSet& b) {
    return a.positives == b.positives && a.negatives_absent == b.negatives_absent;
}

// First `depth` particle positions lambda_i - i, i = 1..depth, in
// decreasing order. Positions below -depth form a solid run.
inline std::vector<long> beta_window(const Partition& p, int depth) {
    std::vector<long> w;
    w.reserve(static_cast<std::size_t>(depth));
    for (int i = 1; i <= depth; ++i) w.push_back(static_cast<long>(p.part_or_zero(i)) - i);
    return w;
}

// Inverse of beta_window: positions sorted decreasing, solid below the
// window. Rows with lambda_i = 0 are dropped.
inline Partition partition_from_window(const std::vector<long>& desc) {
    std::vector<int> parts;
    for (std::size_t i = 0; i < desc.size(); ++i) {
        long v = desc[i] + static_cast<long>(i) + 1;
        if (v > 0) parts.push_back(static_cast<int>(v));
    }
    return Partition(std::move(parts));
}

inline BetaSet to_beta(const Partition& p) {
    BetaSet b;
    const int depth = p.length();
    std::set<long> occupied_negative;
    for (int i = 1; i <= depth; ++i) {
        long v = static_cast<long>(p[i - 1]) - i;
        if (v >= 0)
            b.positives.push_back(v);
        else
            occupied_negative.insert(v);
    }
    // Vacant negatives live in [-depth, -1]; everything below is solid.
    for (long v = -1; v >= -depth; --v)
        if (!occupied_negative.count(v)) b.negatives_absent.push_back(v);
    return b;
}

inline Partition from_beta(const BetaSet& b) {
    if (b.positives.size() != b.negatives_absent.size())
        throw std::invalid_argument("beta set violates the charge condition");
    for (std::size_t i = 0; i + 1 < b.positives.size(); ++i)
        if (b.positives[i] <= b.positives[i + 1])
            throw std::invalid_argument("beta set positives must be strictly decreasing");
    for (std::size_t i = 0; i + 1 < b.negatives_absent.size(); ++i)
        if (b.negatives_absent[i] <= b.negatives_absent[i + 1])
            throw std::invalid_argument("beta set holes must be strictly decreasing");
    for (long v : b.positives)
        if (v < 0) throw std::invalid_argument("beta set positives must be >= 0");
    for (long v : b.negatives_absent)
        if (v >= 0) throw std::invalid_argument("beta set holes must be < 0");

    long depth = 0;
    if (!b.negatives_absent.empty()) depth = -b.negatives_absent.back();
    std::set<long> holes(b.negatives_absent.begin(), b.negatives_absent.end());
    std::vector<long> window(b.positives.begin(), b.positives.end());
    for (long v = -1; v >= -depth; --v)
        if (!holes.count(v)) window.push_back(v);
    return partition_from_window(window);
}

namespace detail {

inline int floor_mod(long x, int m) {
    int r = static_cast<int>(x % m);
    return r < 0 ? r + m : r;
}

// Window depth large enough that m-strip removals and residue splitting
// never touch the solid region. Always a multiple of m.
inline int split_depth(const Partition& p, int m) {
    int d = p.length() + p.size() + m;
    return ((d + m - 1) / m) * m;
}

}  // namespace detail

// Residue-class decomposition of the particle configuration. Component i
// collects positions congruent to i mod m, rescaled. Present exactly when
// every class is charge-balanced; a missing value means "not splittable",
// not an error.
inline std::optional<std::vector<Partition>> m_split(const Partition& theta, int m) {
    if (m < 2) throw std::invalid_argument("m_split requires m >= 2");
    const int depth = detail::split_depth(theta, m);
    const std::vector<long> window = beta_window(theta, depth);
    const int class_depth = depth / m;

    std::vector<std::vector<long>> classes(static_cast<std::size_t>(m));
    for (long x : window)
        classes[static_cast<std::size_t>(detail::floor_mod(x, m))].push_back((x - detail::floor_mod(x, m)) / m);

    std::vector<Partition> comps;
    comps.reserve(static_cast<std::size_t>(m));
    for (auto& cls : classes) {
        std::sort(cls.begin(), cls.end(), std::greater<long>());
        // Charge check: occupied a >= 0 vs vacant a in [-class_depth, -1].
        long occupied_pos = 0, occupied_neg = 0;
        for (long a : cls) (a >= 0 ? occupied_pos : occupied_neg)++;
        long vacant_neg = class_depth - occupied_neg;
        if (occupied_pos != vacant_neg) return std::nullopt;
        comps.push_back(partition_from_window(cls));
    }
    return comps;
}

// Sign of Littlewood's factorization: parity of the jump-overs between
// residue classes accumulated by any maximal sequence of m-strip removals.
// Removal order does not change the parity, so a canonical greedy order is
// used: always jump the particle with the largest source position. Every
// particle strictly between source and target lies in a different residue
// class than the moving particle (the gap is shorter than m), so each one
// counts.
inline int sign_theta(const Partition& theta, int m) {
    if (m < 2) throw std::invalid_argument("sign_theta requires m >= 2");
    if (theta.size() % m != 0 || !m_split(theta, m))
        throw std::invalid_argument("sign_theta: partition " + theta.to_string() + " is not " +
                                    std::to_string(m) + "-splittable");
    const int depth = detail::split_depth(theta, m);
    std::set<long> occupied;
    for (long x : beta_window(theta, depth)) occupied.insert(x);

    long jump_overs = 0;
    const int steps = theta.size() / m;
    for (int step = 0; step < steps; ++step) {
        bool moved = false;
        for (auto it = occupied.rbegin(); it != occupied.rend(); ++it) {
            const long src = *it;
            const long dst = src - m;
            if (dst < -depth || occupied.count(dst)) continue;
            for (long q = dst + 1; q < src; ++q)
                if (occupied.count(q)) ++jump_overs;
            occupied.erase(src);
            occupied.insert(dst);
            moved = true;
            break;
        }
        if (!moved) throw std::logic_error("sign_theta: greedy removal stalled");
    }
    return jump_overs % 2 == 0 ? 1 : -1;
}

}  // namespace constel
