#include "tukey/exact.hpp"

#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_int.hpp>

namespace tukey::exact {

void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

void grow_expansion(std::vector<double>& e, double b) {
    double q = b;
    for (double& c : e) {
        double s, err;
        two_sum(q, c, s, err);
        c = err;
        q = s;
    }
    e.push_back(q);
}

int expansion_sign(const std::vector<double>& e) {
    // Largest-magnitude component is last; the first nonzero one from the
    // top carries the sign of the whole sum.
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
        if (*it > 0.0) return +1;
        if (*it < 0.0) return -1;
    }
    return 0;
}

namespace {

// Magnitude band in which two_prod error terms and expansion carries are
// guaranteed representable.  Outside it we switch to rationals.
constexpr double kProductFloor = 1e-280;
constexpr double kProductCeil = 1e280;

int sign_via_rationals(std::span<const std::array<double, 2>> terms) {
    using boost::multiprecision::cpp_rational;
    cpp_rational acc = 0;
    for (const auto& t : terms)
        acc += cpp_rational(t[0]) * cpp_rational(t[1]);
    if (acc > 0) return +1;
    if (acc < 0) return -1;
    return 0;
}

}  // namespace

int sign_of_product_sum(std::span<const std::array<double, 2>> terms) {
    std::vector<double> e;
    e.reserve(2 * terms.size());
    for (const auto& t : terms) {
        double a = t[0], b = t[1];
        double p, err;
        two_prod(a, b, p, err);
        bool underflow = (p == 0.0 && a != 0.0 && b != 0.0) ||
                         (p != 0.0 && std::fabs(p) < kProductFloor);
        if (!std::isfinite(p) || underflow || std::fabs(p) > kProductCeil)
            return sign_via_rationals(terms);
        if (err != 0.0) grow_expansion(e, err);
        grow_expansion(e, p);
    }
    return expansion_sign(e);
}

}  // namespace tukey::exact
