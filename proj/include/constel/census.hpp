#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "constel/charengine.hpp"
#include "constel/exact.hpp"
#include "constel/parallel.hpp"
#include "constel/partition.hpp"
#include "constel/poly.hpp"
#include "constel/series.hpp"

namespace constel {

enum class MapKind { hypermap, constellation };

// Genus from the Euler relation V - mn + (n + F) = 2 - 2g of a map with V
// vertices, n hyperedges of degree m and F hyperfaces. Rejects keys that
// cannot come from a map (odd defect or negative genus).
inline int genus_of(int vertices, int faces, int n, int m) {
    const int defect = 2 - vertices - faces - n + m * n;
    if (defect < 0 || defect % 2 != 0)
        throw std::invalid_argument("genus_of: no surface with V=" + std::to_string(vertices) +
                                    " F=" + std::to_string(faces) + " n=" + std::to_string(n) +
                                    " m=" + std::to_string(m));
    return defect / 2;
}

// Key of one rooted-count bucket: genus, hyperface degree profile (degrees
// are m times the parts), and per-color vertex counts (one slot per color
// for constellations, a single total for hypermaps).
struct CensusKey {
    int genus = 0;
    Partition mu;
    std::vector<int> colors;

    auto operator<=>(const CensusKey&) const = default;
};

using Census = std::map<CensusKey, Int>;

// Pre-connectivity bucket: hyperedge count, hyperface profile, color counts.
struct RawKey {
    int n = 0;
    Partition mu;
    std::vector<int> colors;

    auto operator<=>(const RawKey&) const = default;
};

using RawCensus = std::map<RawKey, Int>;

namespace detail {

inline std::vector<int> nonzero_degrees(const IntPoly& h) {
    std::vector<int> idx;
    for (int d = 0; d <= h.degree(); ++d)
        if (h.coeff(d) != 0) idx.push_back(d);
    return idx;
}

}  // namespace detail

// Counts of (m+1)-factorizations sigma_1 ... sigma_m phi = id in S_n,
// keyed by the cycle type of phi and the cycle counts of the sigma_i:
//   count(mu, v) = z_mu^{-1} sum over theta of f^theta chi^theta_mu
//                  prod_i [x^{v_i}] H_theta(x).
// Disconnected factorizations included. Parallel over theta.
inline RawCensus rc_census(int n, int m, unsigned threads = 0,
                           const CharTable& table = global_char_table()) {
    if (n < 1 || m < 2) throw std::invalid_argument("rc_census: need n >= 1 and m >= 2");
    const auto& thetas = partitions_of(n);
    const auto& mus = partitions_of(n);

    using Numerators = std::map<std::pair<Partition, std::vector<int>>, Int>;
    std::vector<Numerators> locals(resolve_threads(threads));
    parallel_for(thetas.size(), threads, [&](unsigned worker, std::size_t ti) {
        const Partition& theta = thetas[ti];
        const Int f = dimension(theta);
        const IntPoly h = content_poly(theta);
        const std::vector<int> degrees = detail::nonzero_degrees(h);
        for (const Partition& mu : mus) {
            const Int ch = table.chi(theta, mu);
            if (ch == 0) continue;
            const Int base = f * ch;
            // walk the m-fold cartesian product of nonzero degrees
            std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
            for (;;) {
                Int term = base;
                std::vector<int> colors(static_cast<std::size_t>(m));
                for (int i = 0; i < m; ++i) {
                    colors[static_cast<std::size_t>(i)] = degrees[pick[static_cast<std::size_t>(i)]];
                    term *= h.coeff(degrees[pick[static_cast<std::size_t>(i)]]);
                }
                locals[worker][{mu, colors}] += term;
                int slot = m - 1;
                while (slot >= 0 && ++pick[static_cast<std::size_t>(slot)] == degrees.size()) {
                    pick[static_cast<std::size_t>(slot)] = 0;
                    --slot;
                }
                if (slot < 0) break;
            }
        }
    });

    Numerators merged;
    for (const auto& local : locals)
        for (const auto& [key, value] : local) merged[key] += value;

    RawCensus out;
    for (const auto& [key, numerator] : merged) {
        if (numerator == 0) continue;
        Int count = exact_div(numerator, z_of(key.first), "rc_census");
        if (count < 0) throw std::logic_error("rc_census: negative count");
        if (count != 0) out[{n, key.first, key.second}] = count;
    }
    return out;
}

// Counts of 3-factorizations sigma tau phi = id in S_{mn} with tau a fixed
// permutation of cycle type [m^n] and phi of cycle type m*mu, keyed by
// (mu, number of cycles of sigma):
//   count(mu, V) = (m^{l(mu)} z_mu)^{-1} sum over theta of
//                  chi^theta_{[m^n]} chi^theta_{m mu} [x^V] H_theta(x).
inline RawCensus rh_census(int n, int m, unsigned threads = 0,
                           const CharTable& table = global_char_table()) {
    if (n < 1 || m < 2) throw std::invalid_argument("rh_census: need n >= 1 and m >= 2");
    const auto& thetas = partitions_of(m * n);
    const auto& mus = partitions_of(n);
    const Partition m_column(std::vector<int>(static_cast<std::size_t>(n), m));

    using Numerators = std::map<std::pair<Partition, int>, Int>;
    std::vector<Numerators> locals(resolve_threads(threads));
    parallel_for(thetas.size(), threads, [&](unsigned worker, std::size_t ti) {
        const Partition& theta = thetas[ti];
        const Int column_chi = table.chi(theta, m_column);
        if (column_chi == 0) return;
        const IntPoly h = content_poly(theta);
        for (const Partition& mu : mus) {
            const Int ch = table.chi(theta, scale(mu, m));
            if (ch == 0) continue;
            const Int base = column_chi * ch;
            for (int v = 0; v <= h.degree(); ++v)
                if (h.coeff(v) != 0) locals[worker][{mu, v}] += base * h.coeff(v);
        }
    });

    Numerators merged;
    for (const auto& local : locals)
        for (const auto& [key, value] : local) merged[key] += value;

    RawCensus out;
    for (const auto& [key, numerator] : merged) {
        if (numerator == 0) continue;
        const Int den = pow_int(m, static_cast<unsigned long>(key.first.length())) * z_of(key.first);
        Int count = exact_div(numerator, den, "rh_census");
        if (count < 0) throw std::logic_error("rh_census: negative count");
        if (count != 0) out[{n, key.first, {key.second}}] = count;
    }
    return out;
}

// Transitive counts from raw ones: the exponential formula, taken as the
// formal log of the generating series weighted z^n/n! with full (x, y)
// marking. Raw must be complete for every n <= n_max.
inline RawCensus connected_census(const RawCensus& raw, int n_max, int num_colors) {
    Series f(n_max, 0, num_colors, n_max);
    for (const auto& [key, count] : raw) {
        if (key.n > n_max) continue;
        if (static_cast<int>(key.colors.size()) != num_colors)
            throw std::invalid_argument("connected_census: inconsistent color slot count");
        Exponent e = f.exponent();
        e.z = key.n;
        e.xs = key.colors;
        for (int part : key.mu.parts()) e.ys[static_cast<std::size_t>(part - 1)] += 1;
        Rat weight(count, factorial(static_cast<unsigned long>(key.n)));
        weight.canonicalize();
        f.add_term(e, weight);
    }
    const Series t = f.log1p();

    RawCensus out;
    for (const auto& [e, c] : t.terms()) {
        std::vector<int> mu_parts;
        for (int part = n_max; part >= 1; --part)
            for (int rep = 0; rep < e.ys[static_cast<std::size_t>(part - 1)]; ++rep)
                mu_parts.push_back(part);
        Int count = require_integral(c * Rat(factorial(static_cast<unsigned long>(e.z))),
                                     "connected_census");
        if (count != 0) out[{e.z, Partition(mu_parts), e.xs}] = count;
    }
    return out;
}

// Rooted counts keyed by genus. The divisions encode the correspondences
// between rooted maps and transitive factorizations: 1-to-(n-1)! for
// constellations, 1-to-(n-1)! m^{n-1} for hypermaps. Both must be exact.
inline Census rooted_census(const RawCensus& transitive, MapKind kind, int m) {
    Census out;
    for (const auto& [key, count] : transitive) {
        int vertices = 0;
        for (int v : key.colors) vertices += v;
        const int genus = genus_of(vertices, key.mu.length(), key.n, m);
        Int den = factorial(static_cast<unsigned long>(key.n - 1));
        if (kind == MapKind::hypermap) den *= pow_int(m, static_cast<unsigned long>(key.n - 1));
        Int rooted = exact_div(count, den, "rooted_census");
        if (rooted != 0) out[{genus, key.mu, key.colors}] = rooted;
    }
    return out;
}

struct CensusBundle {
    MapKind kind = MapKind::constellation;
    int m = 2;
    int n_max = 0;
    Census rooted;
};

inline CensusBundle build_census(MapKind kind, int m, int n_max, unsigned threads = 0,
                                 const CharTable& table = global_char_table()) {
    if (n_max < 1) throw std::invalid_argument("build_census: need n_max >= 1");
    RawCensus raw;
    for (int n = 1; n <= n_max; ++n) {
        RawCensus part = kind == MapKind::constellation ? rc_census(n, m, threads, table)
                                                        : rh_census(n, m, threads, table);
        raw.insert(part.begin(), part.end());
    }
    const int num_colors = kind == MapKind::constellation ? m : 1;
    return {kind, m, n_max, rooted_census(connected_census(raw, n_max, num_colors), kind, m)};
}

// A counting query against a built census. Degrees restricts hyperface
// degrees to m*d for d in the set (empty optional = unrestricted); marks
// choose distinguished vertices per color and stay empty for hypermaps.
struct CountQuery {
    int m = 2;
    int n = 1;
    int genus = 0;
    std::optional<std::set<int>> degrees;
    std::vector<int> marks;
};

namespace detail {

inline bool degrees_allow(const std::optional<std::set<int>>& degrees, const Partition& mu) {
    if (!degrees) return true;
    for (int part : mu.parts())
        if (!degrees->count(part)) return false;
    return true;
}

}  // namespace detail

// Marked count from a rooted census: sum over matching buckets of
// count * prod_i binom(colors_i, marks_i). Marks beyond the stated ones
// are zero. Exact nonnegative integer.
inline Int count_census(const CensusBundle& bundle, const CountQuery& q) {
    if (q.m != bundle.m) throw std::invalid_argument("count_census: query m does not match census");
    if (q.n < 1 || q.n > bundle.n_max)
        throw std::invalid_argument("count_census: n outside the census budget");
    if (q.genus < 0) throw std::invalid_argument("count_census: negative genus");
    for (int k : q.marks)
        if (k < 0) throw std::invalid_argument("count_census: negative mark count");
    Int total = 0;
    for (const auto& [key, count] : bundle.rooted) {
        if (key.mu.size() != q.n || key.genus != q.genus) continue;
        if (!detail::degrees_allow(q.degrees, key.mu)) continue;
        if (q.marks.size() > key.colors.size())
            throw std::invalid_argument("count_census: more mark slots than colors");
        Int weighted = count;
        for (std::size_t i = 0; i < q.marks.size(); ++i)
            weighted *= binomial(static_cast<unsigned long>(key.colors[i]),
                                 static_cast<unsigned long>(q.marks[i]));
        total += weighted;
    }
    return total;
}

inline Int count_constellations(const CensusBundle& bundle, const CountQuery& q) {
    if (bundle.kind != MapKind::constellation)
        throw std::invalid_argument("count_constellations: census is not a constellation census");
    if (static_cast<int>(q.marks.size()) > bundle.m)
        throw std::invalid_argument("count_constellations: at most m mark slots");
    return count_census(bundle, q);
}

inline Int count_hypermaps(const CensusBundle& bundle, const CountQuery& q) {
    if (bundle.kind != MapKind::hypermap)
        throw std::invalid_argument("count_hypermaps: census is not a hypermap census");
    if (!q.marks.empty()) throw std::invalid_argument("count_hypermaps: marks not supported");
    return count_census(bundle, q);
}

}  // namespace constel
