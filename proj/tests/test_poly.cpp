#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "constel/poly.hpp"

using namespace constel;

namespace {

// The rising-factorial route: H_theta(x) = prod_i (x - i + 1)^{(theta_i)}
// with x^{(n)} = x (x+1) ... (x+n-1), each row expanded separately and the
// row polynomials multiplied together.
IntPoly rising_factorial_route(const Partition& theta) {
    IntPoly h = IntPoly::one();
    for (int i = 1; i <= theta.length(); ++i) {
        IntPoly row = IntPoly::one();
        for (int t = 0; t < theta.part_or_zero(i); ++t) row.mul_linear(Int(-i + 1 + t));
        h = h * row;
    }
    return h;
}

}  // namespace

TEST_CASE("IntPoly basics") {
    IntPoly zero;
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);
    CHECK(zero.coeff(0) == 0);

    IntPoly p({Int(2), Int(0), Int(1)});  // x^2 + 2
    CHECK(p.degree() == 2);
    CHECK(p.eval(Int(3)) == 11);
    CHECK(p.eval(Rat(1, 2)) == Rat(9, 4));
    CHECK((p * zero).is_zero());
    CHECK((p + IntPoly({Int(-2), Int(0), Int(-1)})).is_zero());

    IntPoly q = IntPoly::one();
    q.mul_linear(Int(-1));  // x - 1
    q.mul_linear(Int(1));   // (x - 1)(x + 1)
    CHECK(q == IntPoly({Int(-1), Int(0), Int(1)}));
}

TEST_CASE("content polynomial examples") {
    CHECK(content_poly(Partition{}) == IntPoly::one());
    CHECK(content_poly(Partition({1})) == IntPoly({Int(0), Int(1)}));
    // contents {0, 1, -1}: x^3 - x
    CHECK(content_poly(Partition({2, 1})) == IntPoly({Int(0), Int(-1), Int(0), Int(1)}));
    // contents {0, 1, 2}: x^3 + 3x^2 + 2x
    CHECK(content_poly(Partition({3})) == IntPoly({Int(0), Int(2), Int(3), Int(1)}));
}

TEST_CASE("content polynomial is monic of degree |theta|") {
    for (int n = 0; n <= 10; ++n)
        for (const Partition& theta : partitions_of(n)) {
            const IntPoly h = content_poly(theta);
            CHECK(h.degree() == n);
            CHECK(h.coeff(n) == 1);
        }
}

TEST_CASE("content polynomial equals the rising-factorial product") {
    for (int n = 0; n <= 12; ++n)
        for (const Partition& theta : partitions_of(n)) {
            const IntPoly via_contents = content_poly(theta);
            const IntPoly via_rising = rising_factorial_route(theta);
            CHECK(via_contents == via_rising);
            // spot check by evaluation as well
            CHECK(via_contents.eval(Int(n + 1)) == via_rising.eval(Int(n + 1)));
        }
}
