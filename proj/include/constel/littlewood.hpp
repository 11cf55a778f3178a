#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "constel/betaset.hpp"
#include "constel/charengine.hpp"
#include "constel/exact.hpp"
#include "constel/parallel.hpp"
#include "constel/partition.hpp"
#include "constel/poly.hpp"

namespace constel {

// One way of distributing the multiset of parts of a partition over an
// ordered tuple of components with prescribed sizes.
using Decomposition = std::vector<Partition>;

namespace detail {

inline void distribute_value(int value, int multiplicity, std::size_t comp,
                             std::vector<std::vector<int>>& acc, std::vector<int>& room,
                             const std::map<int, int, std::greater<int>>& counts,
                             std::map<int, int, std::greater<int>>::const_iterator it,
                             std::vector<Decomposition>& out);

inline void distribute_next(std::vector<std::vector<int>>& acc, std::vector<int>& room,
                            const std::map<int, int, std::greater<int>>& counts,
                            std::map<int, int, std::greater<int>>::const_iterator it,
                            std::vector<Decomposition>& out) {
    if (it == counts.end()) {
        Decomposition d;
        d.reserve(acc.size());
        for (const auto& parts : acc) d.emplace_back(parts);
        out.push_back(std::move(d));
        return;
    }
    distribute_value(it->first, it->second, 0, acc, room, counts, it, out);
}

// Spread `multiplicity` copies of `value` over components comp..end, then
// recurse into the next distinct part value. Working per distinct value
// keeps the enumeration duplicate-free.
inline void distribute_value(int value, int multiplicity, std::size_t comp,
                             std::vector<std::vector<int>>& acc, std::vector<int>& room,
                             const std::map<int, int, std::greater<int>>& counts,
                             std::map<int, int, std::greater<int>>::const_iterator it,
                             std::vector<Decomposition>& out) {
    if (comp + 1 == acc.size()) {
        if (static_cast<long>(multiplicity) * value > room[comp]) return;
        for (int c = 0; c < multiplicity; ++c) acc[comp].push_back(value);
        room[comp] -= multiplicity * value;
        distribute_next(acc, room, counts, std::next(it), out);
        room[comp] += multiplicity * value;
        acc[comp].resize(acc[comp].size() - static_cast<std::size_t>(multiplicity));
        return;
    }
    const int max_here = std::min(multiplicity, room[comp] / value);
    for (int take = 0; take <= max_here; ++take) {
        for (int c = 0; c < take; ++c) acc[comp].push_back(value);
        room[comp] -= take * value;
        distribute_value(value, multiplicity - take, comp + 1, acc, room, counts, it, out);
        room[comp] += take * value;
        acc[comp].resize(acc[comp].size() - static_cast<std::size_t>(take));
    }
}

}  // namespace detail

// Every way to split the multiset of parts of lam into an ordered tuple of
// partitions with the given sizes. Unordered within a component, ordered
// across components, no duplicates.
inline std::vector<Decomposition> decompositions(const Partition& lam, const std::vector<int>& sizes) {
    int total = 0;
    for (int s : sizes) {
        if (s < 0) throw std::invalid_argument("decompositions: negative component size");
        total += s;
    }
    if (total != lam.size()) throw std::invalid_argument("decompositions: sizes must sum to |lam|");
    if (sizes.empty()) return lam.empty() ? std::vector<Decomposition>{{}} : std::vector<Decomposition>{};

    std::map<int, int, std::greater<int>> counts;
    for (int part : lam.parts()) ++counts[part];
    std::vector<std::vector<int>> acc(sizes.size());
    std::vector<int> room = sizes;
    std::vector<Decomposition> out;
    detail::distribute_next(acc, room, counts, counts.begin(), out);
    return out;
}

// Component i (1-based, i = 1..m) of the factorization corresponds to
// residue class m - i of the split. This is the orientation under which
// the content-polynomial factorization below holds exactly; the character
// sum is invariant under any fixed assignment, so the same one is used
// everywhere.
inline std::vector<Partition> split_components_ordered(const std::vector<Partition>& split) {
    return {split.rbegin(), split.rend()};
}

// Right-hand side of the character factorization at content m*lam:
//   z_lam * sgn_theta * sum over decompositions prod_i chi(theta_i, lam_i) / z_{lam_i}.
// Always an exact integer; a non-integral sum is an arithmetic bug.
inline Int littlewood_rhs(const Partition& theta, const Partition& lam, int m,
                          const CharTable& table = global_char_table()) {
    if (theta.size() != m * lam.size())
        throw std::invalid_argument("littlewood_rhs: |theta| must equal m*|lam|");
    auto split = m_split(theta, m);
    if (!split)
        throw std::invalid_argument("littlewood_rhs: theta is not " + std::to_string(m) + "-splittable");
    const std::vector<Partition> comps = split_components_ordered(*split);

    std::vector<int> sizes;
    sizes.reserve(comps.size());
    for (const Partition& c : comps) sizes.push_back(c.size());

    Rat sum = 0;
    for (const Decomposition& deco : decompositions(lam, sizes)) {
        Rat term = 1;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            term *= table.chi(comps[i], deco[i]);
            Rat inv(1, z_of(deco[i]));
            inv.canonicalize();
            term *= inv;
        }
        sum += term;
    }
    sum *= z_of(lam) * sign_theta(theta, m);
    return require_integral(sum, "littlewood_rhs");
}

struct LittlewoodFailure {
    Partition theta;
    Partition lam;
    Int lhs;
    Int rhs;
};

struct LittlewoodReport {
    long checked = 0;
    std::vector<LittlewoodFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Full sweep of the factorization: for every theta of size m*n <= max_size
// and every lam of size n, chi(theta, m*lam) must equal the factorized sum
// when theta splits and 0 otherwise.
inline LittlewoodReport verify_littlewood(int max_size, int m, unsigned threads = 0,
                                          const CharTable& table = global_char_table()) {
    if (m < 2) throw std::invalid_argument("verify_littlewood requires m >= 2");
    LittlewoodReport report;
    for (int mn = m; mn <= max_size; mn += m) {
        const auto& thetas = partitions_of(mn);
        const auto& lams = partitions_of(mn / m);
        std::vector<std::vector<LittlewoodFailure>> worker_failures(resolve_threads(threads));
        parallel_for(thetas.size(), threads, [&](unsigned worker, std::size_t ti) {
            const Partition& theta = thetas[ti];
            const bool splittable = m_split(theta, m).has_value();
            for (const Partition& lam : lams) {
                const Int lhs = table.chi(theta, scale(lam, m));
                const Int rhs = splittable ? littlewood_rhs(theta, lam, m, table) : Int(0);
                if (lhs != rhs) worker_failures[worker].push_back({theta, lam, lhs, rhs});
            }
        });
        report.checked += static_cast<long>(thetas.size() * lams.size());
        for (const auto& batch : worker_failures)
            report.failures.insert(report.failures.end(), batch.begin(), batch.end());
    }
    // Canonical order so reports never depend on scheduling.
    std::sort(report.failures.begin(), report.failures.end(), [](const auto& a, const auto& b) {
        return std::tie(a.theta, a.lam) < std::tie(b.theta, b.lam);
    });
    return report;
}

// Exact check of the content-polynomial factorization
//   H_theta(x) = m^{|theta|} prod_{i=1..m} prod_{j=0..m-1} H_{theta^(i)}((x-i+j+1)/m)
// by evaluating both sides at |theta|+1 integer points (the degree bound
// makes pointwise agreement a complete check).
inline bool verify_content_factorization(const Partition& theta, int m) {
    auto split = m_split(theta, m);
    if (!split)
        throw std::invalid_argument("verify_content_factorization: theta is not " +
                                    std::to_string(m) + "-splittable");
    const std::vector<Partition> comps = split_components_ordered(*split);
    std::vector<IntPoly> comp_polys;
    comp_polys.reserve(comps.size());
    for (const Partition& c : comps) comp_polys.push_back(content_poly(c));

    const IntPoly lhs_poly = content_poly(theta);
    const Int scale_factor = pow_int(m, static_cast<unsigned long>(theta.size()));
    for (int x = 1; x <= theta.size() + 1; ++x) {
        Rat rhs = scale_factor;
        for (int i = 1; i <= m; ++i)
            for (int j = 0; j <= m - 1; ++j) {
                Rat point(x - i + j + 1, m);
                point.canonicalize();
                rhs *= comp_polys[static_cast<std::size_t>(i - 1)].eval(point);
            }
        if (Rat(lhs_poly.eval(Int(x))) != rhs) return false;
    }
    return true;
}

}  // namespace constel
