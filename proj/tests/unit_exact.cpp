#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tukey/exact.hpp"
#include "tukey/sampling.hpp"

using testsupport::Rational;
using namespace tukey::exact;

namespace {

int rational_sign_of_product_sum(
    const std::vector<std::array<double, 2>>& terms) {
    Rational acc = 0;
    for (const auto& t : terms) acc += Rational(t[0]) * Rational(t[1]);
    if (acc > 0) return +1;
    if (acc < 0) return -1;
    return 0;
}

}  // namespace

TEST_CASE("two_sum is an error-free transform") {
    tukey::RngStream rng(11, 0);
    for (int i = 0; i < 2000; ++i) {
        double a = (rng.next_double() - 0.5) * std::ldexp(1.0, i % 80 - 40);
        double b = (rng.next_double() - 0.5) * std::ldexp(1.0, (i * 7) % 80 - 40);
        double s, err;
        two_sum(a, b, s, err);
        CHECK(Rational(s) + Rational(err) == Rational(a) + Rational(b));
    }
}

TEST_CASE("two_prod is an error-free transform") {
    tukey::RngStream rng(12, 0);
    for (int i = 0; i < 2000; ++i) {
        double a = (rng.next_double() - 0.5) * std::ldexp(1.0, i % 60 - 30);
        double b = (rng.next_double() - 0.5) * std::ldexp(1.0, (i * 13) % 60 - 30);
        double p, err;
        two_prod(a, b, p, err);
        CHECK(Rational(p) + Rational(err) == Rational(a) * Rational(b));
    }
}

TEST_CASE("grow_expansion keeps the exact running sum") {
    tukey::RngStream rng(13, 0);
    std::vector<double> e;
    Rational expect = 0;
    for (int i = 0; i < 300; ++i) {
        double b = (rng.next_double() - 0.5) * std::ldexp(1.0, i % 90 - 45);
        grow_expansion(e, b);
        expect += Rational(b);
        Rational got = 0;
        for (double c : e) got += Rational(c);
        CHECK(got == expect);
    }
    CHECK(expansion_sign(e) == (expect > 0 ? 1 : expect < 0 ? -1 : 0));
}

TEST_CASE("expansion_sign handles cancellation and zeros") {
    std::vector<double> e;
    CHECK(expansion_sign(e) == 0);
    grow_expansion(e, 1.0);
    grow_expansion(e, std::ldexp(1.0, -80));
    grow_expansion(e, -1.0);
    CHECK(expansion_sign(e) == 1);  // only the tiny positive tail survives
    grow_expansion(e, -std::ldexp(1.0, -80));
    CHECK(expansion_sign(e) == 0);
    grow_expansion(e, -std::ldexp(1.0, -1000));
    CHECK(expansion_sign(e) == -1);
}

TEST_CASE("sign_of_product_sum agrees with rationals on random terms") {
    tukey::RngStream rng(14, 0);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<std::array<double, 2>> terms;
        int m = 1 + int(rng.next_below(5));
        for (int i = 0; i < m; ++i) {
            double a = (rng.next_double() - 0.5) * 2.0;
            double b = (rng.next_double() - 0.5) * 2.0;
            terms.push_back({a, b});
        }
        // Append the negation of the running sum in two pieces to force
        // heavy cancellation in about half the cases.
        if (rep % 2 == 0) {
            double acc = 0;
            for (auto& t : terms) acc += t[0] * t[1];
            terms.push_back({-acc, 1.0});
        }
        CHECK(sign_of_product_sum(terms) ==
              rational_sign_of_product_sum(terms));
    }
}

TEST_CASE("sign_of_product_sum survives extreme magnitudes") {
    const double huge = std::ldexp(1.0, 1000);
    const double tiny = std::ldexp(1.0, -1000);
    const double denorm = std::numeric_limits<double>::denorm_min();

    std::vector<std::array<double, 2>> overflowing = {
        {huge, huge}, {-huge, huge}, {tiny, tiny}};
    CHECK(sign_of_product_sum(overflowing) ==
          rational_sign_of_product_sum(overflowing));

    std::vector<std::array<double, 2>> denormal = {{denorm, 1.0},
                                                   {-denorm, 0.5}};
    CHECK(sign_of_product_sum(denormal) ==
          rational_sign_of_product_sum(denormal));

    std::vector<std::array<double, 2>> zero = {{huge, tiny}, {-1.0, 1.0}};
    // 2^1000 * 2^-1000 == 1 exactly, so the sum is exactly zero.
    CHECK(sign_of_product_sum(zero) == 0);
}

TEST_CASE("sign_of_product_sum exact case near the double boundary") {
    // a*b + c*d with a*b = -(c*d) exactly but both products inexact in
    // double arithmetic: classic determinant cancellation.
    double a = 1.0 + std::ldexp(1.0, -30);
    std::vector<std::array<double, 2>> terms = {{a, a}, {-a, a}};
    CHECK(sign_of_product_sum(terms) == 0);

    terms = {{a, a}, {-a, a}, {std::ldexp(1.0, -200), std::ldexp(1.0, -200)}};
    CHECK(sign_of_product_sum(terms) == 1);
}
