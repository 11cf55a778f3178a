#pragma once

#include <vector>

#include "constel/exact.hpp"
#include "constel/partition.hpp"

namespace constel {

// Dense univariate polynomial with exact integer coefficients,
// index = degree. The zero polynomial stores no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPoly one() { return IntPoly({Int(1)}); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Int coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(k)];
    }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const IntPoly&) const = default;

    IntPoly operator*(const IntPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntPoly(std::move(r));
    }

    IntPoly operator+(const IntPoly& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
        return IntPoly(std::move(r));
    }

    // Multiply in place by the linear factor (x + a).
    void mul_linear(const Int& a) {
        std::vector<Int> r(c_.size() + 1, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r[i + 1] += c_[i];
            r[i] += c_[i] * a;
        }
        c_ = std::move(r);
        normalize();
    }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

// Content polynomial H_theta(x) = prod over cells (x + content), content of
// the cell in row i, column j being j - i. Monic of degree |theta|;
// H of the empty partition is 1.
inline IntPoly content_poly(const Partition& theta) {
    IntPoly h = IntPoly::one();
    for (int i = 1; i <= theta.length(); ++i)
        for (int j = 1; j <= theta.part_or_zero(i); ++j) h.mul_linear(Int(j - i));
    return h;
}

}  // namespace constel
