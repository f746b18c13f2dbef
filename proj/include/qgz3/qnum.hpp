#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgz3 {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Principal square root with the cut convention pinned: a negative real
/// radicand (imaginary part exactly zero) maps to +i*sqrt(|r|), never -i.
inline cplx sqrt_principal(cplx z) {
    if (z.imag() == 0.0) z = cplx(z.real(), +0.0);
    return std::sqrt(z);
}

/// Principal square root that snaps a numerically-tiny imaginary part to +0
/// before branching, so values straddling the cut resolve deterministically.
inline cplx sqrt_principal_snapped(cplx z, double rel = 1e-13) {
    if (std::abs(z.imag()) <= rel * std::abs(z.real())) z = cplx(z.real(), +0.0);
    return std::sqrt(z);
}

/// Deformation parameter: either a generic point on the unit circle
/// q = exp(2*pi*i*t), a primitive l-th root of unity zeta = exp(2*pi*i*m/l)
/// with l odd, or a radial perturbation zeta*exp(eps) used when taking
/// numeric limits toward the root.
class QParam {
public:
    static constexpr int kMaxRootOrder = 9;  // session bound used by the angle guard

    static double default_generic_angle() { return 1.0 / (2.0 * std::exp(1.0)); }

    static QParam generic(double angle) {
        // Reject angles that are (close to) rationals with small denominator:
        // those hit a root of unity and silently break the generic-q contracts.
        for (int den = 1; den <= 2 * kMaxRootOrder; ++den) {
            double nearest = std::round(angle * den) / den;
            if (std::abs(angle - nearest) < 1e-9)
                throw std::invalid_argument("generic angle too close to rational " +
                                            std::to_string(std::lround(angle * den)) + "/" +
                                            std::to_string(den));
        }
        QParam p;
        p.angle_ = angle;
        return p;
    }

    static QParam generic() { return generic(default_generic_angle()); }

    static QParam root(int l, int m = 1) {
        if (l <= 2 || l % 2 == 0) throw std::invalid_argument("root order l must be odd and > 2");
        int mm = ((m % l) + l) % l;
        if (std::gcd(mm, l) != 1) throw std::invalid_argument("root selector m must be coprime to l");
        QParam p;
        p.at_root_ = true;
        p.l_ = l;
        p.m_ = mm;
        p.angle_ = double(mm) / double(l);
        return p;
    }

    /// q = zeta_{l,m} * exp(-i*eps): the point on the unit circle at angular
    /// distance eps below the root, where every q-integer is real and
    /// nonzero. This is the canonical approach path for root limits.
    static QParam near_root(int l, int m, double eps) {
        QParam p = root(l, m);
        p.at_root_ = false;
        p.l_ = 0;
        p.m_ = 0;
        p.angle_ = double(((m % l) + l) % l) / double(l) - eps / (2.0 * kPi);
        return p;
    }

    bool at_root() const { return at_root_; }
    int root_order() const { return l_; }
    int root_selector() const { return m_; }
    double angle() const { return angle_; }

    cplx q() const { return q_pow(1); }

    cplx q_pow(long long n) const {
        if (l_ > 0) {
            // exact periodic phase: zeta^n depends only on (m*n) mod l
            long long k = ((m_ * n) % l_ + l_) % l_;
            return std::polar(1.0, 2.0 * kPi * double(k) / double(l_));
        }
        return std::polar(1.0, 2.0 * kPi * angle_ * double(n));
    }

    /// (q^n - q^-n)/(q - q^-1): on the unit circle this is the real ratio
    /// sin(2*pi*t*n)/sin(2*pi*t), returned with exact zero imaginary part so
    /// that branch decisions downstream are deterministic.
    cplx q_int_value(long long n) const {
        if (l_ > 0) {
            long long k = ((m_ * n) % l_ + l_) % l_;
            if (k == 0) return cplx(0.0, 0.0);
            double s = std::sin(2.0 * kPi * double(k) / double(l_));
            return cplx(s / std::sin(2.0 * kPi * double(m_) / double(l_)), 0.0);
        }
        double s = std::sin(2.0 * kPi * angle_ * double(n));
        return cplx(s / std::sin(2.0 * kPi * angle_), 0.0);
    }

private:
    bool at_root_ = false;
    int l_ = 0;  // 0 for plain generic
    int m_ = 0;
    double angle_ = 0.0;  // q-phase in turns
};

/// First-order expansion a + b*eps of a quantity along q = zeta*exp(eps).
/// At generic q the derivative slot is zero by convention.
struct Jet {
    cplx value{0.0, 0.0};
    cplx deriv{0.0, 0.0};

    Jet() = default;
    Jet(cplx v) : value(v) {}
    Jet(cplx v, cplx d) : value(v), deriv(d) {}

    friend Jet operator+(const Jet& a, const Jet& b) { return {a.value + b.value, a.deriv + b.deriv}; }
    friend Jet operator-(const Jet& a, const Jet& b) { return {a.value - b.value, a.deriv - b.deriv}; }
    friend Jet operator-(const Jet& a) { return {-a.value, -a.deriv}; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        return {a.value * b.value, a.value * b.deriv + b.value * a.deriv};
    }
    friend Jet operator*(cplx s, const Jet& a) { return {s * a.value, s * a.deriv}; }

    /// Quotient rule; a 0/0 input is a resolved first-order limit whose value
    /// is deriv/deriv and whose own derivative is no longer defined (NaN).
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.value != cplx(0.0, 0.0)) {
            cplx v = a.value / b.value;
            return {v, (a.deriv - v * b.deriv) / b.value};
        }
        if (a.value == cplx(0.0, 0.0)) {
            double nan = std::numeric_limits<double>::quiet_NaN();
            return {a.deriv / b.deriv, cplx(nan, nan)};
        }
        throw std::domain_error("jet division by zero-value jet with nonzero numerator");
    }

    bool deriv_defined() const { return !std::isnan(deriv.real()) && !std::isnan(deriv.imag()); }
};

/// q-integer [n] as a jet. At a root of unity the derivative slot carries
/// n*(zeta^n + zeta^-n)/(zeta - zeta^-1), the part of d[n]/deps that survives
/// in differences of arguments congruent mod l; that is exactly what the
/// shift-limit operator consumes.
inline Jet q_int(long long n, const QParam& q) {
    Jet j;
    j.value = q.q_int_value(n);
    if (q.at_root()) {
        cplx den = q.q_pow(1) - q.q_pow(-1);
        j.deriv = double(n) * (q.q_pow(n) + q.q_pow(-n)) / den;
    }
    return j;
}

/// Square root of a jet, principal branch. A zero-value jet has a half-order
/// expansion sqrt(d*eps) that a first-order jet cannot represent; callers
/// that accept that may pass allow_half_order, and then receive the
/// coefficient of eps^(1/2) in the value slot with a zero derivative.
inline Jet jet_sqrt(const Jet& x, bool allow_half_order = false) {
    if (x.value == cplx(0.0, 0.0)) {
        if (!allow_half_order)
            throw std::domain_error("jet_sqrt of zero-value jet (half-order limit)");
        return {sqrt_principal(x.deriv), cplx(0.0, 0.0)};
    }
    cplx r = sqrt_principal(x.value);
    return {r, x.deriv / (2.0 * r)};
}

/// Square root of the q-integer [n] on the branch continued from the
/// classical region 0 < q < 1, where every [n] with n > 0 is positive: each
/// zero crossing of [n](t) on the way to the angle t contributes a factor
/// -i. Products of these factor roots form a coherent assignment, so the
/// normalized generator matrices stay an exact representation at every
/// angle. Requires an on-circle parameter away from the exact root.
inline cplx continued_sqrt_qint(long long n, const QParam& q) {
    if (n == 0) return cplx(0.0, 0.0);
    if (q.at_root()) throw std::domain_error("continued_sqrt_qint needs an off-root angle");
    long long k = static_cast<long long>(std::floor(2.0 * double(n) * q.angle()));
    static const cplx tab[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    cplx phase = tab[((k % 4) + 4) % 4];
    return phase * std::sqrt(std::abs(q.q_int_value(n).real()));
}

/// Polynomial extrapolation of samples f(eps_i) to eps = 0 (Neville tableau).
inline cplx extrapolate_to_zero(const std::vector<double>& eps, const std::vector<cplx>& f) {
    std::vector<cplx> t = f;
    size_t n = t.size();
    for (size_t j = 1; j < n; ++j)
        for (size_t i = 0; i + j < n; ++i)
            t[i] = (eps[i + j] * t[i] - eps[i] * t[i + 1]) / (eps[i + j] - eps[i]);
    return t[0];
}

/// Limit of (f(a) - f(b))/[l] as q -> zeta, for arguments a, b that differ
/// by multiples of l so that the two values coincide at the root. Acts as a
/// derivative and is additive over index shifts.
inline cplx d_limit(const Jet& f_at_a, const Jet& f_at_b, int l, cplx zeta) {
    double scale = std::max({1.0, std::abs(f_at_a.value), std::abs(f_at_b.value)});
    if (std::abs(f_at_a.value - f_at_b.value) > 1e-8 * scale)
        throw std::domain_error("d_limit: function values do not coincide at the root");
    cplx dl_deriv = 2.0 * double(l) / (zeta - 1.0 / zeta);
    return (f_at_a.deriv - f_at_b.deriv) / dl_deriv;
}

}  // namespace qgz3
