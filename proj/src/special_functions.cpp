#include "hgineq/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hgineq/errors.hpp"

namespace hgineq {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace

std::complex<double> complex_log_gamma(std::complex<double> z) {
    // Lanczos for Gamma(z) = Gamma((z-1)+1).
    std::complex<double> x = z - 1.0;
    std::complex<double> a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
    std::complex<double> t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

std::complex<double> complex_gamma(std::complex<double> z) {
    if (is_pole(z)) throw DomainError("Gamma has a pole at non-positive integer arguments");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        std::complex<double> s = std::sin(std::numbers::pi * z);
        return std::numbers::pi / (s * std::exp(complex_log_gamma(1.0 - z)));
    }
    if (z.imag() == 0.0) {
        // Exact small factorials keep integer arguments exact.
        double r = z.real();
        if (r == std::round(r) && r <= 20.0) {
            double f = 1.0;
            for (int i = 2; i < static_cast<int>(r); ++i) f *= i;
            return f;
        }
        return std::exp(complex_log_gamma(z).real());
    }
    return std::exp(complex_log_gamma(z));
}

double fractional_constant(std::complex<double> b, int k) {
    double rb = b.real();
    if (!(rb > 0.0 && rb < k)) throw DomainError("fractional constant requires 0 < Re b < k");
    double num = std::abs(complex_gamma(static_cast<double>(k + 1)));
    double den = std::abs(complex_gamma(b) * complex_gamma(static_cast<double>(k) - b));
    return num / den * std::pow(2.0, k - rb) / (rb * (k - rb));
}

}  // namespace hgineq
