#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "constel/census.hpp"
#include "constel/exact.hpp"
#include "constel/parallel.hpp"
#include "constel/partition.hpp"

namespace constel {

// Permutation of {0..n-1} as its image vector. Products compose left to
// right: (a*b)(i) = b(a(i)).
using Perm = std::vector<std::uint8_t>;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Perm perm_identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), static_cast<std::uint8_t>(0));
    return p;
}

inline Perm perm_mult(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
    return r;
}

inline Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint8_t>(i);
    return r;
}

inline Partition cycle_type(const Perm& p) {
    std::vector<int> lengths;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    return Partition::from_unsorted(std::move(lengths));
}

inline int cycle_count(const Perm& p) { return cycle_type(p).length(); }

// Single orbit check by union-find over all cycle edges.
inline bool is_transitive(std::span<const Perm> perms, int n) {
    if (n < 1) throw std::invalid_argument("is_transitive: need n >= 1");
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const Perm& p : perms)
        for (int i = 0; i < n; ++i) {
            int a = find(i), b = find(p[static_cast<std::size_t>(i)]);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    int root = find(0);
    for (int i = 1; i < n; ++i)
        if (find(i) != root) return false;
    return true;
}

namespace detail {

// All permutations with the given cycle type, each generated once: cycles
// are anchored at their minimal element and discovered in increasing
// anchor order.
inline void perms_of_type_rec(std::vector<int>& remaining_lengths, std::vector<bool>& used,
                              Perm& perm, int placed, std::vector<Perm>& out) {
    const int n = static_cast<int>(perm.size());
    if (placed == n) {
        out.push_back(perm);
        return;
    }
    int anchor = 0;
    while (used[static_cast<std::size_t>(anchor)]) ++anchor;
    used[static_cast<std::size_t>(anchor)] = true;

    int last_len = 0;
    for (std::size_t li = 0; li < remaining_lengths.size(); ++li) {
        const int len = remaining_lengths[li];
        if (len == last_len) continue;  // distinct lengths only
        last_len = len;
        remaining_lengths.erase(remaining_lengths.begin() + static_cast<std::ptrdiff_t>(li));

        // choose the rest of the anchor's cycle as an ordered tuple
        std::vector<int> cycle{anchor};
        auto extend = [&](auto&& self) -> void {
            if (static_cast<int>(cycle.size()) == len) {
                for (std::size_t c = 0; c + 1 < cycle.size(); ++c)
                    perm[static_cast<std::size_t>(cycle[c])] = static_cast<std::uint8_t>(cycle[c + 1]);
                perm[static_cast<std::size_t>(cycle.back())] = static_cast<std::uint8_t>(cycle.front());
                perms_of_type_rec(remaining_lengths, used, perm, placed + len, out);
                return;
            }
            for (int e = anchor + 1; e < n; ++e) {
                if (used[static_cast<std::size_t>(e)]) continue;
                used[static_cast<std::size_t>(e)] = true;
                cycle.push_back(e);
                self(self);
                cycle.pop_back();
                used[static_cast<std::size_t>(e)] = false;
            }
        };
        extend(extend);

        remaining_lengths.insert(remaining_lengths.begin() + static_cast<std::ptrdiff_t>(li), len);
    }
    used[static_cast<std::size_t>(anchor)] = false;
}

inline std::vector<Perm> perms_of_type(const Partition& type, int n) {
    if (type.size() != n) throw std::invalid_argument("perms_of_type: |type| must equal n");
    std::vector<int> lengths(type.parts().begin(), type.parts().end());
    std::sort(lengths.begin(), lengths.end());
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    Perm perm(static_cast<std::size_t>(n));
    std::vector<Perm> out;
    perms_of_type_rec(lengths, used, perm, 0, out);
    return out;
}

inline std::vector<Perm> all_perms(int n) {
    Perm p = perm_identity(n);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

constexpr long kOracleBudget = 100000000;  // tuples; partial truth is never returned

inline Census merge_and_root(std::vector<std::map<CensusKey, long>>& locals, int n,
                             const Int& per_object) {
    std::map<CensusKey, long> merged;
    for (const auto& local : locals)
        for (const auto& [key, value] : local) merged[key] += value;
    Census out;
    for (const auto& [key, value] : merged)
        if (value != 0) out[key] = exact_div(Int(value), per_object, "oracle rooted count");
    return out;
}

}  // namespace detail

// Ground-truth constellation census: iterate every (sigma_1..sigma_m) in
// S_n^m, close with phi = (sigma_1...sigma_m)^{-1}, keep transitive tuples,
// key by (genus, type(phi), cycle counts), then divide by (n-1)!.
inline CensusBundle brute_constellations(int n, int m, unsigned threads = 0) {
    if (n < 1 || m < 2) throw std::invalid_argument("brute_constellations: need n >= 1, m >= 2");
    double tuples = 1;
    const Int n_fact = factorial(static_cast<unsigned long>(n));
    for (int i = 0; i < m; ++i) tuples *= mpz_get_d(n_fact.get_mpz_t());
    if (tuples > static_cast<double>(detail::kOracleBudget))
        throw BudgetExceeded("brute_constellations: (n!)^m exceeds the enumeration budget");

    const std::vector<Perm> perms = detail::all_perms(n);
    std::vector<std::map<CensusKey, long>> locals(resolve_threads(threads));
    parallel_for(perms.size(), threads, [&](unsigned worker, std::size_t first) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
        pick[0] = first;
        std::vector<Perm> tuple(static_cast<std::size_t>(m + 1));
        for (;;) {
            Perm product = perms[pick[0]];
            for (int i = 1; i < m; ++i) product = perm_mult(product, perms[pick[static_cast<std::size_t>(i)]]);
            const Perm phi = perm_inverse(product);
            for (int i = 0; i < m; ++i) tuple[static_cast<std::size_t>(i)] = perms[pick[static_cast<std::size_t>(i)]];
            tuple[static_cast<std::size_t>(m)] = phi;
            if (is_transitive(tuple, n)) {
                std::vector<int> colors(static_cast<std::size_t>(m));
                int vertices = 0;
                for (int i = 0; i < m; ++i) {
                    colors[static_cast<std::size_t>(i)] = cycle_count(perms[pick[static_cast<std::size_t>(i)]]);
                    vertices += colors[static_cast<std::size_t>(i)];
                }
                const Partition mu = cycle_type(phi);
                locals[worker][{genus_of(vertices, mu.length(), n, m), mu, colors}] += 1;
            }
            // advance the inner slots only; slot 0 is the stolen work unit
            int slot = m - 1;
            while (slot >= 1 && ++pick[static_cast<std::size_t>(slot)] == perms.size()) {
                pick[static_cast<std::size_t>(slot)] = 0;
                --slot;
            }
            if (slot < 1) break;
        }
    });

    CensusBundle bundle{MapKind::constellation, m, n, {}};
    bundle.rooted =
        detail::merge_and_root(locals, n, factorial(static_cast<unsigned long>(n - 1)));
    return bundle;
}

// Ground-truth hypermap census: tau is the fixed [m^n] permutation
// (0..m-1)(m..2m-1)...; iterate phi over permutations of S_{mn} whose
// cycle lengths are all divisible by m (generated directly by type), set
// sigma = (tau phi)^{-1}, keep transitive triples, key by (genus,
// type(phi)/m, l(sigma)), divide by (n-1)! m^{n-1}.
inline CensusBundle brute_hypermaps(int n, int m, unsigned threads = 0) {
    if (n < 1 || m < 2) throw std::invalid_argument("brute_hypermaps: need n >= 1, m >= 2");
    const int big_n = m * n;

    Rat budget = 0;
    const Int mn_fact = factorial(static_cast<unsigned long>(big_n));
    for (const Partition& mu : partitions_of(n)) {
        Rat cls(mn_fact, z_of(scale(mu, m)));
        cls.canonicalize();
        budget += cls;
    }
    if (budget > detail::kOracleBudget)
        throw BudgetExceeded("brute_hypermaps: candidate phi count exceeds the enumeration budget");

    Perm tau(static_cast<std::size_t>(big_n));
    for (int i = 0; i < big_n; ++i)
        tau[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i / m) * m + (i + 1) % m);

    std::vector<std::pair<Perm, Partition>> candidates;  // (phi, mu)
    for (const Partition& mu : partitions_of(n))
        for (Perm& phi : detail::perms_of_type(scale(mu, m), big_n))
            candidates.emplace_back(std::move(phi), mu);

    std::vector<std::map<CensusKey, long>> locals(resolve_threads(threads));
    parallel_for(candidates.size(), threads, [&](unsigned worker, std::size_t ci) {
        const auto& [phi, mu] = candidates[ci];
        const Perm sigma = perm_inverse(perm_mult(tau, phi));
        const std::vector<Perm> triple{sigma, tau, phi};
        if (!is_transitive(triple, big_n)) return;
        const int vertices = cycle_count(sigma);
        locals[worker][{genus_of(vertices, mu.length(), n, m), mu, {vertices}}] += 1;
    });

    CensusBundle bundle{MapKind::hypermap, m, n, {}};
    bundle.rooted = detail::merge_and_root(
        locals, n,
        factorial(static_cast<unsigned long>(n - 1)) * pow_int(m, static_cast<unsigned long>(n - 1)));
    return bundle;
}

// Marked count straight from an oracle census; same weighting as the
// character-based counts.
inline Int marked_count(const CensusBundle& bundle, const CountQuery& q) {
    return count_census(bundle, q);
}

}  // namespace constel
