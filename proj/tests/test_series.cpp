#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "constel/series.hpp"

using namespace constel;

namespace {

Series z_power(int deg, const Rat& c, int z_max) {
    Series s(z_max, 0, 0, 0);
    Exponent e = s.exponent();
    e.z = deg;
    s.add_term(e, c);
    return s;
}

// exp(z) - 1 truncated, the compositional inverse of log(1+a).
Series exp_minus_one(int z_max) {
    Series s(z_max, 0, 0, 0);
    Rat f = 1;
    for (int k = 1; k <= z_max; ++k) {
        f /= k;
        Exponent e = s.exponent();
        e.z = k;
        s.add_term(e, f);
    }
    return s;
}

Series random_sparse(std::mt19937& rng, int z_max, int num_terms) {
    Series s(z_max, 0, 0, 0);
    for (int t = 0; t < num_terms; ++t) {
        Exponent e = s.exponent();
        e.z = 1 + static_cast<int>(rng() % static_cast<unsigned>(z_max));
        int num = static_cast<int>(rng() % 9) - 4;
        int den = 1 + static_cast<int>(rng() % 4);
        Rat c(num, den);
        c.canonicalize();
        s.add_term(e, c);
    }
    return s;
}

}  // namespace

TEST_CASE("mul examples") {
    const Series one = Series::constant(1, 2, 0, 0, 0);
    const Series a = one + z_power(1, 1, 2);          // 1 + z
    const Series b = one + z_power(1, -1, 2);         // 1 - z
    const Series ab = a * b;
    CHECK(ab.coeff(ab.exponent()) == 1);
    Exponent e1 = ab.exponent();
    e1.z = 1;
    CHECK(ab.coeff(e1) == 0);
    Exponent e2 = ab.exponent();
    e2.z = 2;
    CHECK(ab.coeff(e2) == -1);

    const Series q = one + z_power(1, 1, 2) + z_power(2, 1, 2);
    const Series q2 = q * q;  // 1 + 2z + 3z^2 after truncation
    CHECK(q2.coeff(ab.exponent()) == 1);
    CHECK(q2.coeff(e1) == 2);
    CHECK(q2.coeff(e2) == 3);

    CHECK((q * Series::constant(1, 2, 0, 0, 0)).terms() == q.terms());
}

TEST_CASE("log1p examples") {
    const Series lz = z_power(1, 1, 3).log1p();
    Exponent e = lz.exponent();
    e.z = 1;
    CHECK(lz.coeff(e) == 1);
    e.z = 2;
    CHECK(lz.coeff(e) == Rat(-1, 2));
    e.z = 3;
    CHECK(lz.coeff(e) == Rat(1, 3));

    CHECK(Series(4, 0, 0, 0).log1p().is_zero());

    // log(1 + (e^z - 1)) = z
    const Series recovered = exp_minus_one(5).log1p();
    Exponent ez = recovered.exponent();
    ez.z = 1;
    CHECK(recovered.coeff(ez) == 1);
    CHECK(recovered.terms().size() == 1);

    CHECK_THROWS_AS(Series::constant(1, 3, 0, 0, 0).log1p(), std::invalid_argument);
}

TEST_CASE("z_dz examples") {
    Series s(4, 0, 0, 0);
    Exponent e = s.exponent();
    e.z = 2;
    s.add_term(e, 1);
    const Series d = s.z_dz();
    CHECK(d.coeff(e) == 2);

    CHECK(Series::constant(7, 3, 0, 0, 0).z_dz().is_zero());

    Series t(4, 0, 0, 0);
    e.z = 1;
    t.add_term(e, 1);
    e.z = 4;
    t.add_term(e, 3);
    const Series dt = t.z_dz();
    e.z = 1;
    CHECK(dt.coeff(e) == 1);
    e.z = 4;
    CHECK(dt.coeff(e) == 12);
}

TEST_CASE("substitute examples") {
    // x1^2 with x1 <- (x + u)/2 gives (x^2 + 2xu + u^2)/4
    Series s(0, 2, 1, 0);
    Exponent e = s.exponent();
    e.xs[0] = 2;
    s.add_term(e, 1);
    const std::vector<Series::XAffine> forms{{Rat(1, 2), Rat(1, 2)}};
    const Series sub = s.substitute(forms, {}, 1);
    Exponent q = sub.exponent();
    q.xs[0] = 2;
    CHECK(sub.coeff(q) == Rat(1, 4));
    q = sub.exponent();
    q.xs[0] = 1;
    q.u = 1;
    CHECK(sub.coeff(q) == Rat(1, 2));
    q = sub.exponent();
    q.u = 2;
    CHECK(sub.coeff(q) == Rat(1, 4));

    // z <- 4z
    Series t(1, 0, 0, 0);
    Exponent ez = t.exponent();
    ez.z = 1;
    t.add_term(ez, 1);
    const Series t4 = t.substitute({}, {}, 4);
    CHECK(t4.coeff(ez) == 4);

    // x1 x2 with x_i <- (x + (i-1)u)/3 gives (x^2 + xu)/9
    Series w(0, 2, 2, 0);
    Exponent ew = w.exponent();
    ew.xs = {1, 1};
    w.add_term(ew, 1);
    const std::vector<Series::XAffine> forms2{{Rat(1, 3), Rat(0)}, {Rat(1, 3), Rat(1, 3)}};
    const Series wsub = w.substitute(forms2, {}, 1);
    Exponent qw = wsub.exponent();
    qw.xs[0] = 2;
    CHECK(wsub.coeff(qw) == Rat(1, 9));
    qw = wsub.exponent();
    qw.xs[0] = 1;
    qw.u = 1;
    CHECK(wsub.coeff(qw) == Rat(1, 9));
}

TEST_CASE("substitute with identity assignments is the identity") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Series s(4, 2, 2, 3);
        for (int t = 0; t < 5; ++t) {
            Exponent e = s.exponent();
            e.z = static_cast<int>(rng() % 5);
            e.xs[0] = static_cast<int>(rng() % 3);
            e.ys[static_cast<std::size_t>(rng() % 3)] = static_cast<int>(rng() % 2);
            Rat c(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3));
            c.canonicalize();
            s.add_term(e, c);
        }
        // collapse x2 (exponent zero everywhere here) and keep x1 as x
        std::vector<Series::XAffine> forms{{Rat(1), Rat(0)}, {Rat(1), Rat(0)}};
        std::vector<Rat> yscale{1, 1, 1};
        const Series t2 = s.substitute(forms, yscale, 1);
        for (const auto& [e, c] : s.terms()) {
            Exponent q = t2.exponent();
            q.z = e.z;
            q.u = e.u;
            q.xs[0] = e.xs[0] + e.xs[1];
            q.ys = e.ys;
            CHECK(t2.coeff(q) == c);
        }
    }
}

TEST_CASE("coeff truncation discipline") {
    const Series s = z_power(1, 2, 3) + Series::constant(1, 3, 0, 0, 0);
    Exponent e = s.exponent();
    e.z = 1;
    CHECK(s.coeff(e) == 2);
    e.z = 2;
    CHECK(s.coeff(e) == 0);
    e.z = 4;
    CHECK_THROWS_AS(s.coeff(e), std::out_of_range);
    Exponent bad = s.exponent();
    bad.xs.push_back(1);
    CHECK_THROWS_AS(s.coeff(bad), std::invalid_argument);
}

TEST_CASE("log of a product is the sum of logs") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const Series a = random_sparse(rng, 6, 4);
        const Series b = random_sparse(rng, 6, 4);
        const Series one = Series::constant(1, 6, 0, 0, 0);
        const Series lhs = ((one + a) * (one + b) - one).log1p();
        const Series rhs = a.log1p() + b.log1p();
        CHECK(lhs.terms() == rhs.terms());
    }
}

TEST_CASE("z_dz of log1p satisfies the quotient rule") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Series a = random_sparse(rng, 6, 4);
        const Series one = Series::constant(1, 6, 0, 0, 0);
        // (1 + a) * z_dz(log(1+a)) must equal z_dz(a)
        const Series lhs = (one + a) * a.log1p().z_dz();
        CHECK(lhs.terms() == a.z_dz().terms());
    }
}

TEST_CASE("dump format") {
    Series s(2, 1, 1, 2);
    Exponent e = s.exponent();
    e.z = 1;
    e.xs[0] = 2;
    s.add_term(e, Rat(3, 2));
    Exponent f = s.exponent();
    f.ys[1] = 1;
    s.add_term(f, -2);
    CHECK(s.dump() == "-2 * y2^1\n3/2 * z^1 * x1^2\n");
}
