#include <doctest.h>

#include "graphforms/linalg.hpp"

using namespace graphforms;

TEST_CASE("rref rank kernel") {
    Mat a{{Rational(1), Rational(2), Rational(3)},
          {Rational(2), Rational(4), Rational(6)},
          {Rational(0), Rational(1), Rational(1)}};
    CHECK(rank(a) == 2);
    auto kb = kernel_basis(a);
    REQUIRE(kb.size() == 1);
    for (const auto& row : a) {
        Rational s(0);
        for (size_t j = 0; j < 3; ++j) s += row[j] * kb[0][j];
        CHECK(s == Rational(0));
    }
}

TEST_CASE("solve") {
    Mat a{{Rational(2), Rational(1)}, {Rational(1), Rational(-1)}};
    auto x = solve(a, {Rational(5), Rational(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(2));
    CHECK((*x)[1] == Rational(1));
    // inconsistent system
    Mat b{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK_FALSE(solve(b, {Rational(0), Rational(1)}).has_value());
    // underdetermined but consistent
    Mat c{{Rational(1), Rational(1)}};
    auto y = solve(c, {Rational(3)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == Rational(3));
}

TEST_CASE("det") {
    Mat a{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    CHECK(det(a) == Rational(-2));
    Mat s{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(det(s) == Rational(0));
    CHECK(det(mat_identity(4)) == Rational(1));
}

TEST_CASE("products") {
    Mat a{{Rational(1), Rational(2)}, {Rational(0), Rational(1)}};
    auto sq = mat_mul(a, a);
    CHECK(sq[0][1] == Rational(4));
    auto v = mat_apply(a, {Rational(1), Rational(1)});
    CHECK(v[0] == Rational(3));
    CHECK(mat_transpose(a)[1][0] == Rational(2));
}
