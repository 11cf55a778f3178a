#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "constel/betaset.hpp"
#include "constel/exact.hpp"
#include "constel/partition.hpp"

namespace constel {

// One way of removing a k-border-strip from a partition.
struct StripRemoval {
    Partition remaining;
    int height = 0;  // rows spanned minus one
};

inline bool operator==(const StripRemoval& a, const StripRemoval& b) {
    return a.remaining == b.remaining && a.height == b.height;
}

// All removals of a border strip of length k, as single-particle jumps of
// length k on the beta set. The strip height equals the number of
// particles jumped over. Empty when no removal exists.
inline std::vector<StripRemoval> border_strips(const Partition& theta, int k) {
    if (k < 1) throw std::invalid_argument("border_strips requires k >= 1");
    const int depth = theta.length() + k;
    const std::vector<long> window = beta_window(theta, depth);
    const std::set<long> occupied(window.begin(), window.end());

    std::vector<StripRemoval> out;
    for (long src : window) {
        const long dst = src - k;
        if (dst < -depth || occupied.count(dst)) continue;  // below -depth is solid
        int height = 0;
        for (long q : window)
            if (dst < q && q < src) ++height;
        std::vector<long> next = window;
        std::replace(next.begin(), next.end(), src, dst);
        std::sort(next.begin(), next.end(), std::greater<long>());
        out.push_back({partition_from_window(next), height});
    }
    return out;
}

namespace detail {

// Memo key: shape parts, -1 separator, then the still-unconsumed content
// parts in decreasing order.
using ChiKey = std::vector<std::int32_t>;

struct ChiKeyHash {
    std::size_t operator()(const ChiKey& key) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int32_t v : key) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace detail

// Irreducible symmetric-group character values by the Murnaghan-Nakayama
// rule, with a memo table shared by all callers. Parts of the content
// partition are consumed largest-first; the result does not depend on the
// order, the canonical order just maximizes cache reuse. Lookups take a
// shared lock, insertions an exclusive one, so evaluations can fan out
// over shapes from many threads.
class CharTable {
public:
    Int chi(const Partition& shape, const Partition& content) const {
        if (shape.size() != content.size())
            throw std::invalid_argument("chi: |shape| = " + std::to_string(shape.size()) +
                                        " but |content| = " + std::to_string(content.size()));
        return chi_rec(shape, content.parts());
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return memo_.size();
    }

    // Binary dump, version tagged, records sorted by key so the bytes are
    // reproducible. Layout per record: key length, key entries (int32),
    // value sign (int8), magnitude byte count, magnitude big-endian.
    void save(std::ostream& os) const {
        std::map<detail::ChiKey, Int> sorted;
        {
            std::shared_lock lock(mutex_);
            sorted.insert(memo_.begin(), memo_.end());
        }
        os.write(kMagic, sizeof(kMagic) - 1);
        write_u64(os, sorted.size());
        for (const auto& [key, value] : sorted) {
            write_u64(os, key.size());
            for (std::int32_t v : key) write_i32(os, v);
            const int sign = sgn(value);
            os.put(static_cast<char>(sign));
            std::size_t nbytes = 0;
            std::vector<unsigned char> buf((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8 + 1);
            mpz_export(buf.data(), &nbytes, 1, 1, 1, 0, value.get_mpz_t());
            write_u64(os, nbytes);
            os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(nbytes));
        }
    }

    // Merge a previously saved dump. Returns false (leaving the table
    // untouched) when the header does not match this version.
    bool load(std::istream& is) {
        char magic[sizeof(kMagic) - 1];
        if (!is.read(magic, sizeof(magic)) || !std::equal(magic, magic + sizeof(magic), kMagic))
            return false;
        std::uint64_t count = read_u64(is);
        if (!is) return false;
        std::vector<std::pair<detail::ChiKey, Int>> records;
        for (std::uint64_t r = 0; r < count; ++r) {
            std::uint64_t klen = read_u64(is);
            if (!is || klen > (1u << 20)) return false;  // truncated or corrupt
            detail::ChiKey key(klen);
            for (auto& v : key) v = read_i32(is);
            int sign = is.get();
            std::uint64_t nbytes = read_u64(is);
            if (!is || nbytes > (1u << 24)) return false;
            std::vector<unsigned char> buf(nbytes);
            is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(nbytes));
            if (!is) return false;
            Int value = 0;
            if (nbytes > 0) mpz_import(value.get_mpz_t(), nbytes, 1, 1, 1, 0, buf.data());
            if (sign == static_cast<int>(static_cast<unsigned char>(-1))) value = -value;
            records.emplace_back(std::move(key), std::move(value));
        }
        std::unique_lock lock(mutex_);
        for (auto& [key, value] : records) memo_.emplace(std::move(key), std::move(value));
        return true;
    }

private:
    static constexpr char kMagic[] = "CONSTELCHI1\n";

    Int chi_rec(const Partition& shape, std::vector<int> content_desc) const {
        if (content_desc.empty()) return 1;  // sizes match, so shape is empty too

        detail::ChiKey key;
        key.reserve(shape.parts().size() + content_desc.size() + 1);
        for (int v : shape.parts()) key.push_back(v);
        key.push_back(-1);
        for (int v : content_desc) key.push_back(v);
        {
            std::shared_lock lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }

        const int k = content_desc.front();
        std::vector<int> rest(content_desc.begin() + 1, content_desc.end());
        Int total = 0;
        for (const StripRemoval& removal : border_strips(shape, k)) {
            Int sub = chi_rec(removal.remaining, rest);
            if (removal.height % 2 == 0)
                total += sub;
            else
                total -= sub;
        }
        {
            std::unique_lock lock(mutex_);
            memo_.emplace(std::move(key), total);
        }
        return total;
    }

    static int sgn(const Int& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }
    static void write_u64(std::ostream& os, std::uint64_t v) {
        for (int b = 7; b >= 0; --b) os.put(static_cast<char>((v >> (8 * b)) & 0xff));
    }
    static void write_i32(std::ostream& os, std::int32_t v) {
        write_u64_n(os, static_cast<std::uint32_t>(v), 4);
    }
    static void write_u64_n(std::ostream& os, std::uint64_t v, int n) {
        for (int b = n - 1; b >= 0; --b) os.put(static_cast<char>((v >> (8 * b)) & 0xff));
    }
    static std::uint64_t read_u64(std::istream& is) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v = (v << 8) | static_cast<unsigned char>(is.get());
        return v;
    }
    static std::int32_t read_i32(std::istream& is) {
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v = (v << 8) | static_cast<unsigned char>(is.get());
        return static_cast<std::int32_t>(v);
    }

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<detail::ChiKey, Int, detail::ChiKeyHash> memo_;
};

inline CharTable& global_char_table() {
    static CharTable table;
    return table;
}

inline Int chi(const Partition& shape, const Partition& content) {
    return global_char_table().chi(shape, content);
}

// Number of tuples (tau_1, ..., tau_k) with tau_i of cycle type betas[i]
// and tau_1 ... tau_k sigma = id for one fixed sigma of cycle type alpha:
//   sum over theta of (n!)^{-1} (f^theta)^{1-k} chi^theta_alpha
//                     prod_i (n!/z_{beta_i}) chi^theta_{beta_i}.
inline Int frobenius_count(const Partition& alpha, const std::vector<Partition>& betas,
                           const CharTable& table = global_char_table()) {
    const int n = alpha.size();
    for (const Partition& beta : betas)
        if (beta.size() != n)
            throw std::invalid_argument("frobenius_count: all partitions must have the same size");

    const Int n_fact = factorial(static_cast<unsigned long>(n));
    Rat total = 0;
    for (const Partition& theta : partitions_of(n)) {
        Rat term(1);
        term /= n_fact;
        const Int f = dimension(theta);
        const int k = static_cast<int>(betas.size());
        if (k >= 1) {
            // (f^theta)^{1-k}
            term /= pow_int(f, static_cast<unsigned long>(k - 1));
        } else {
            term *= f;
        }
        term *= table.chi(theta, alpha);
        for (const Partition& beta : betas) {
            Rat cls(n_fact, z_of(beta));
            cls.canonicalize();
            term *= cls * table.chi(theta, beta);
        }
        total += term;
    }
    Int result = require_integral(total, "frobenius_count");
    if (result < 0) throw std::logic_error("frobenius_count: negative count");
    return result;
}

}  // namespace constel
