#pragma once

#include <array>
#include <span>
#include <vector>

// Error-free floating-point transforms, used to decide signs of small
// polynomial expressions in double coordinates without rounding error.
// The building blocks follow the classic nonoverlapping-expansion scheme:
// every value is carried as a sum of doubles whose bit ranges do not
// overlap, so the sign of the total is the sign of the largest component.

namespace tukey::exact {

// s + err == a + b exactly, |err| <= ulp(s)/2.
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    double bv = s - a;
    double av = s - bv;
    err = (a - av) + (b - bv);
}

// p + err == a * b exactly (requires a correctly rounded fma, which IEEE
// mandates and every libm we target provides).
void two_prod(double a, double b, double& p, double& err);

// Adds one double to a nonoverlapping expansion, keeping it nonoverlapping.
// Components are stored in increasing magnitude order; zeros are permitted.
void grow_expansion(std::vector<double>& e, double b);

// Sign of the exact value of an expansion: -1, 0 or +1.
int expansion_sign(const std::vector<double>& e);

// Exact sign of sum(terms[i][0] * terms[i][1]).  Inputs must be finite.
// Falls back to arbitrary-precision rationals when the products would
// overflow or lose bits to underflow, so the result is exact for every
// finite double input.
int sign_of_product_sum(std::span<const std::array<double, 2>> terms);

}  // namespace tukey::exact
