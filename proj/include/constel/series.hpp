#pragma once

#include <compare>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "constel/exact.hpp"

namespace constel {

// Multi-exponent of one series term: degrees in z, u, the x-slot vector
// and the y-slot vector. Widths of xs/ys are fixed per series.
struct Exponent {
    int z = 0;
    int u = 0;
    std::vector<int> xs;
    std::vector<int> ys;

    auto operator<=>(const Exponent&) const = default;
};

// Truncated multivariate formal power series over exact rationals. Values
// are immutable once built up; every operation returns a new series. Terms
// beyond the z or u truncation bound are discarded by arithmetic, and
// coefficient queries beyond the bounds are rejected so "zero" is never
// confused with "truncated away".
class Series {
public:
    Series(int z_max, int u_max, int num_x, int num_y)
        : z_max_(z_max), u_max_(u_max), num_x_(num_x), num_y_(num_y) {
        if (z_max < 0 || u_max < 0 || num_x < 0 || num_y < 0)
            throw std::invalid_argument("Series: negative truncation or slot count");
    }

    static Series constant(const Rat& c, int z_max, int u_max, int num_x, int num_y) {
        Series s(z_max, u_max, num_x, num_y);
        s.add_term(s.exponent(), c);
        return s;
    }

    int z_max() const { return z_max_; }
    int u_max() const { return u_max_; }
    int num_x() const { return num_x_; }
    int num_y() const { return num_y_; }
    const std::map<Exponent, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Blank exponent with the right slot widths.
    Exponent exponent() const {
        Exponent e;
        e.xs.assign(static_cast<std::size_t>(num_x_), 0);
        e.ys.assign(static_cast<std::size_t>(num_y_), 0);
        return e;
    }

    // Accumulates into an existing term; zero coefficients are not stored.
    void add_term(const Exponent& e, const Rat& c) {
        check_shape(e);
        if (e.z > z_max_ || e.u > u_max_)
            throw std::out_of_range("Series::add_term: exponent beyond truncation");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Stored coefficient, or 0 for an unset exponent inside the truncation
    // box. Queries outside the box are errors: that part of the series was
    // never computed.
    Rat coeff(const Exponent& e) const {
        check_shape(e);
        if (e.z > z_max_ || e.u > u_max_)
            throw std::out_of_range("Series::coeff: exponent beyond truncation");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Series operator+(const Series& o) const {
        Series r = with_common_bounds(o);
        for (const auto& [e, c] : terms_)
            if (e.z <= r.z_max_ && e.u <= r.u_max_) r.add_term(e, c);
        for (const auto& [e, c] : o.terms_)
            if (e.z <= r.z_max_ && e.u <= r.u_max_) r.add_term(e, c);
        return r;
    }

    Series operator-(const Series& o) const { return *this + o.scaled(Rat(-1)); }

    Series scaled(const Rat& f) const {
        Series r(z_max_, u_max_, num_x_, num_y_);
        if (f == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * f);
        return r;
    }

    Series operator*(const Series& o) const {
        Series r = with_common_bounds(o);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                if (ea.z + eb.z > r.z_max_ || ea.u + eb.u > r.u_max_) continue;
                Exponent e = ea;
                e.z += eb.z;
                e.u += eb.u;
                for (std::size_t i = 0; i < e.xs.size(); ++i) e.xs[i] += eb.xs[i];
                for (std::size_t i = 0; i < e.ys.size(); ++i) e.ys[i] += eb.ys[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    // log(1 + a) = sum_{k>=1} (-1)^{k+1} a^k / k. Requires every term of a
    // to carry z-degree >= 1 so the expansion terminates at the z bound.
    Series log1p() const {
        for (const auto& [e, c] : terms_)
            if (e.z == 0)
                throw std::invalid_argument(
                    "Series::log1p: argument must have zero constant term and z-valuation >= 1");
        Series result(z_max_, u_max_, num_x_, num_y_);
        Series power = *this;
        for (int k = 1; k <= z_max_ && !power.is_zero(); ++k) {
            Rat f(k % 2 == 1 ? 1 : -1, k);
            f.canonicalize();
            for (const auto& [e, c] : power.terms_) result.add_term(e, c * f);
            power = power * *this;
        }
        return result;
    }

    // Multiply each term by its z-degree.
    Series z_dz() const {
        Series r(z_max_, u_max_, num_x_, num_y_);
        for (const auto& [e, c] : terms_)
            if (e.z > 0) r.terms_.emplace(e, c * e.z);
        return r;
    }

    // Affine substitution target for one x slot: x_i <- x_coef*x + u_coef*u.
    struct XAffine {
        Rat x_coef;
        Rat u_coef;
    };

    // Substitute every x_i by an affine form in a single common pair (x, u),
    // rescale each y_i and z. The result has one x slot; u powers produced
    // by the expansion are truncated at the u bound.
    Series substitute(std::span<const XAffine> x_forms, std::span<const Rat> y_scales,
                      const Rat& z_scale) const {
        if (static_cast<int>(x_forms.size()) != num_x_)
            throw std::invalid_argument("Series::substitute: need one affine form per x slot");
        if (static_cast<int>(y_scales.size()) != num_y_)
            throw std::invalid_argument("Series::substitute: need one scale per y slot");
        Series r(z_max_, u_max_, num_x_ == 0 ? 0 : 1, num_y_);
        for (const auto& [e, c] : terms_) {
            // prod_i (a_i x + b_i u)^{e.xs[i]} expanded binomially.
            // spread: map from (x_deg, u_deg) to coefficient
            std::map<std::pair<int, int>, Rat> spread{{{0, 0}, Rat(1)}};
            for (std::size_t i = 0; i < e.xs.size(); ++i) {
                const auto& form = x_forms[i];
                for (int p = 0; p < e.xs[i]; ++p) {
                    std::map<std::pair<int, int>, Rat> next;
                    for (const auto& [du, k] : spread) {
                        if (form.x_coef != 0) next[{du.first + 1, du.second}] += k * form.x_coef;
                        if (form.u_coef != 0) next[{du.first, du.second + 1}] += k * form.u_coef;
                    }
                    spread = std::move(next);
                }
            }
            Rat base = c * pow_rat(z_scale, e.z);
            for (std::size_t i = 0; i < e.ys.size(); ++i) base *= pow_rat(y_scales[i], e.ys[i]);
            if (base == 0) continue;
            for (const auto& [du, k] : spread) {
                Exponent ne = r.exponent();
                ne.z = e.z;
                ne.u = e.u + du.second;
                if (ne.u > u_max_) continue;
                if (!ne.xs.empty()) ne.xs[0] = du.first;
                ne.ys = e.ys;
                r.add_term(ne, base * k);
            }
        }
        return r;
    }

    // One term per line, "coeff * z^a u^b x1^c1 ... y1^d1 ...", sorted by
    // exponent. Zero-degree factors are omitted; the constant term prints
    // as the bare coefficient.
    std::string dump() const {
        std::ostringstream os;
        for (const auto& [e, c] : terms_) {
            os << rat_to_string(c);
            if (e.z) os << " * z^" << e.z;
            if (e.u) os << " * u^" << e.u;
            for (std::size_t i = 0; i < e.xs.size(); ++i)
                if (e.xs[i]) os << " * x" << (i + 1) << "^" << e.xs[i];
            for (std::size_t i = 0; i < e.ys.size(); ++i)
                if (e.ys[i]) os << " * y" << (i + 1) << "^" << e.ys[i];
            os << "\n";
        }
        return os.str();
    }

private:
    static Rat pow_rat(const Rat& b, int e) {
        Rat r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    void check_shape(const Exponent& e) const {
        if (static_cast<int>(e.xs.size()) != num_x_ || static_cast<int>(e.ys.size()) != num_y_)
            throw std::invalid_argument("Series: exponent slot widths do not match the series");
        if (e.z < 0 || e.u < 0)
            throw std::invalid_argument("Series: negative exponent");
        for (int v : e.xs)
            if (v < 0) throw std::invalid_argument("Series: negative exponent");
        for (int v : e.ys)
            if (v < 0) throw std::invalid_argument("Series: negative exponent");
    }

    Series with_common_bounds(const Series& o) const {
        if (num_x_ != o.num_x_ || num_y_ != o.num_y_)
            throw std::invalid_argument("Series: incompatible slot counts");
        return Series(std::min(z_max_, o.z_max_), std::min(u_max_, o.u_max_), num_x_, num_y_);
    }

    int z_max_, u_max_, num_x_, num_y_;
    std::map<Exponent, Rat> terms_;
};

}  // namespace constel
