#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "constel/exact.hpp"

namespace constel {

// An integer partition: a weakly decreasing sequence of positive parts.
// The empty partition is a valid value (size 0, length 0).
class Partition {
public:
    Partition() = default;

    // Parts must already be weakly decreasing; trailing zeros are stripped.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i - 1] < parts_[i])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    static Partition from_unsorted(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        return Partition(std::move(parts));
    }

    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
    // Part with 1-based row index, 0 beyond the last row.
    int part_or_zero(int row1) const {
        return row1 <= length() ? parts_[static_cast<std::size_t>(row1 - 1)] : 0;
    }
    const std::vector<int>& parts() const { return parts_; }

    auto operator<=>(const Partition&) const = default;

    // Serialized as comma-separated decreasing integers; empty partition
    // serializes as the empty string.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    static Partition parse(std::string_view text) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string_view::npos) next = text.size();
            std::string token(text.substr(pos, next - pos));
            if (token.empty()) throw std::invalid_argument("empty partition part in \"" + std::string(text) + "\"");
            std::size_t used = 0;
            int v = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument("bad partition part \"" + token + "\"");
            parts.push_back(v);
            pos = next + 1;
        }
        return Partition(std::move(parts));
    }

private:
    std::vector<int> parts_;
};

inline Partition conjugate(const Partition& p) {
    std::vector<int> t;
    if (!p.empty()) {
        t.resize(static_cast<std::size_t>(p[0]));
        for (int part : p.parts())
            for (int j = 0; j < part; ++j) ++t[static_cast<std::size_t>(j)];
    }
    return Partition(std::move(t));
}

// z_lambda = prod_i i^{m_i} m_i!, the centralizer order of a permutation of
// cycle type lambda; n!/z_lambda is the conjugacy class size.
inline Int z_of(const Partition& p) {
    Int z = 1;
    int run_value = 0, run_count = 0;
    auto flush = [&] {
        for (int j = 1; j <= run_count; ++j) z *= Int(run_value) * j;
    };
    for (int part : p.parts()) {
        if (part == run_value) {
            ++run_count;
        } else {
            flush();
            run_value = part;
            run_count = 1;
        }
    }
    flush();
    return z;
}

// Dimension of the irreducible representation indexed by p, by hook lengths.
inline Int dimension(const Partition& p) {
    const Partition q = conjugate(p);
    Int hooks = 1;
    for (int i = 1; i <= p.length(); ++i)
        for (int j = 1; j <= p.part_or_zero(i); ++j)
            hooks *= (p.part_or_zero(i) - j) + (q.part_or_zero(j) - i) + 1;
    return exact_div(factorial(static_cast<unsigned long>(p.size())), hooks, "hook length formula");
}

inline Partition scale(const Partition& p, int m) {
    if (m < 1) throw std::invalid_argument("scale factor must be >= 1");
    std::vector<int> parts;
    parts.reserve(p.parts().size());
    for (int part : p.parts()) parts.push_back(m * part);
    return Partition(std::move(parts));
}

namespace detail {

inline void gen_partitions(int n, int max_part, std::vector<int>& stack,
                           std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(stack);
        return;
    }
    for (int first = std::min(n, max_part); first >= 1; --first) {
        stack.push_back(first);
        gen_partitions(n - first, first, stack, out);
        stack.pop_back();
    }
}

}  // namespace detail

// All partitions of n in descending lexicographic order, (n) first and
// [1^n] last. Cached; the returned reference stays valid for the process.
inline const std::vector<Partition>& partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative n");
    static std::mutex mutex;
    static std::map<int, std::vector<Partition>> cache;  // node stability for returned refs
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace(n);
    if (inserted) {
        std::vector<int> stack;
        detail::gen_partitions(n, n, stack, it->second);
    }
    return it->second;
}

}  // namespace constel
