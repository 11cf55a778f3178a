#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "constel/census.hpp"
#include "constel/exact.hpp"

namespace constel {

// e^{(m),j}_{k_1..k_{m-1}} = prod over i != j in 1..m of (i-j)^{k_{(i-j) mod m}}.
// Never zero: every base is a nonzero integer.
inline Int e_coeff(int m, int j, std::span<const int> ks) {
    if (m < 2 || j < 1 || j > m) throw std::invalid_argument("e_coeff: need m >= 2 and 1 <= j <= m");
    if (static_cast<int>(ks.size()) != m - 1)
        throw std::invalid_argument("e_coeff: index vector must have m-1 entries");
    for (int k : ks)
        if (k < 0) throw std::invalid_argument("e_coeff: negative index entry");
    Int v = 1;
    for (int i = 1; i <= m; ++i) {
        if (i == j) continue;
        const int idx = ((i - j) % m + m) % m;  // lands in 1..m-1
        v *= pow_int(i - j, static_cast<unsigned long>(ks[static_cast<std::size_t>(idx - 1)]));
    }
    return v;
}

// d^{(m)} combines the e-coefficients over the reflection-paired centers:
//   m = 2p:   d = 2 * sum_{j=1..p} e^{(m),j}
//   m = 2p+1: d = e^{(m),p+1} + 2 * sum_{j=1..p} e^{(m),j}
// Positivity and divisibility by m are theorems, so they are enforced
// here: a violation is an implementation bug and must not produce output.
inline Int d_coeff(int m, std::span<const int> ks) {
    const int p = m / 2;
    Int v = 0;
    for (int j = 1; j <= p; ++j) v += 2 * e_coeff(m, j, ks);
    if (m % 2 == 1) v += e_coeff(m, p + 1, ks);
    if (v <= 0) throw std::logic_error("d_coeff: value must be positive");
    if (v % m != 0) throw std::logic_error("d_coeff: value must be divisible by m");
    return v;
}

inline Int c_coeff(int m, std::span<const int> ks) {
    return exact_div(d_coeff(m, ks), Int(m), "c_coeff");
}

// All vectors of `len` nonnegative entries summing to `total`, in
// lexicographic order.
inline std::vector<std::vector<int>> mark_vectors(int len, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(len), 0);
    auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == len - 1) {
            cur[static_cast<std::size_t>(slot)] = left;
            out.push_back(cur);
            return;
        }
        for (int take = 0; take <= left; ++take) {
            cur[static_cast<std::size_t>(slot)] = take;
            self(self, slot + 1, left - take);
        }
    };
    if (len == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, total);
    return out;
}

// Right-hand side of the hypermap/constellation relation:
//   sum_{i=0..g} m^{2g-2i} sum_{|k|=2i} c^{(m)}_k C^{(g-i, k)}_{n,m,D}.
inline Int relation_rhs(const CensusBundle& constellations, int n, int m, int g,
                        const std::optional<std::set<int>>& degrees) {
    if (constellations.kind != MapKind::constellation)
        throw std::invalid_argument("relation_rhs: need a constellation census");
    Int total = 0;
    for (int i = 0; i <= g; ++i) {
        const Int weight = pow_int(m, static_cast<unsigned long>(2 * g - 2 * i));
        for (const std::vector<int>& ks : mark_vectors(m - 1, 2 * i)) {
            CountQuery q{m, n, g - i, degrees, ks};
            total += weight * c_coeff(m, ks) * count_constellations(constellations, q);
        }
    }
    return total;
}

struct RelationFailure {
    int n = 0;
    int genus = 0;
    Int hypermaps;
    Int rhs;
};

struct RelationReport {
    long cases = 0;
    std::vector<RelationFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Exact sweep of the relation over the (n, g) grid.
inline RelationReport verify_relation(const CensusBundle& hypermaps,
                                      const CensusBundle& constellations, int n_max, int m,
                                      int g_max, const std::optional<std::set<int>>& degrees) {
    if (hypermaps.kind != MapKind::hypermap)
        throw std::invalid_argument("verify_relation: need a hypermap census");
    if (n_max > hypermaps.n_max || n_max > constellations.n_max)
        throw std::invalid_argument("verify_relation: censuses too small for n_max");
    RelationReport report;
    for (int n = 1; n <= n_max; ++n)
        for (int g = 0; g <= g_max; ++g) {
            CountQuery q{m, n, g, degrees, {}};
            const Int lhs = count_hypermaps(hypermaps, q);
            const Int rhs = relation_rhs(constellations, n, m, g, degrees);
            ++report.cases;
            if (lhs != rhs) report.failures.push_back({n, g, lhs, rhs});
        }
    return report;
}

struct AsymptoticRow {
    int n = 0;
    Int hypermaps;
    Int constellations;
    Rat ratio;  // H / (m^{2g} C), exact
};

// Exact ratios H^{(g)}_{n,m,D} / (m^{2g} C^{(g)}_{n,m,D}) for trend
// inspection. Rows with a zero constellation count are skipped.
inline std::vector<AsymptoticRow> asymptotic_table(const CensusBundle& hypermaps,
                                                   const CensusBundle& constellations, int m, int g,
                                                   const std::optional<std::set<int>>& degrees,
                                                   std::span<const int> ns) {
    std::vector<AsymptoticRow> rows;
    for (int n : ns) {
        CountQuery hq{m, n, g, degrees, {}};
        CountQuery cq{m, n, g, degrees, {}};
        const Int h = count_hypermaps(hypermaps, hq);
        const Int c = count_constellations(constellations, cq);
        if (c == 0) continue;
        Rat ratio(h, pow_int(m, static_cast<unsigned long>(2 * g)) * c);
        ratio.canonicalize();
        rows.push_back({n, h, c, ratio});
    }
    return rows;
}

}  // namespace constel
