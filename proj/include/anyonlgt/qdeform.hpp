#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace anyonlgt {

using cplx = std::complex<double>;

/// Deformation parameter q = exp(i*angle), stored as an angle so |q| = 1 holds
/// exactly.  The default for level k is angle = 2*pi/(k+2).  angle == 0 means
/// the undeformed point q = 1 (used for classical 6j limits).
struct QDeformation {
    int k = 0;
    double angle = 0.0;

    static QDeformation level(int k) {
        if (k < 1) throw std::invalid_argument("QDeformation: level k must be >= 1");
        return {k, 2.0 * std::numbers::pi / (k + 2)};
    }
    static QDeformation undeformed() { return {0, 0.0}; }

    cplx q() const { return std::polar(1.0, angle); }

    /// q^e for a real exponent, evaluated as a phase.
    cplx qpow(double e) const { return std::polar(1.0, angle * e); }
};

/// [n]_q = (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2}) = sin(n*angle/2)/sin(angle/2).
/// Real by construction; antisymmetric in n; [n]_{q=1} = n.
inline double qnumber(double n, const QDeformation& q) {
    if (q.angle == 0.0) return n;
    return std::sin(0.5 * n * q.angle) / std::sin(0.5 * q.angle);
}

/// [n]_q! = prod_{m=1..n} [m]_q, with [0]_q! = 1.  Integer n >= 0 only.
inline double qfactorial(int n, const QDeformation& q) {
    if (n < 0) throw std::domain_error("qfactorial: negative argument");
    double r = 1.0;
    for (int m = 2; m <= n; ++m) r *= qnumber(m, q);
    return r;
}

} // namespace anyonlgt
