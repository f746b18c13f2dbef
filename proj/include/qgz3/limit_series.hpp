#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>

#include "qgz3/qnum.hpp"

namespace qgz3 {

/// Truncated expansion sum_k c[k] * delta^(k/2) around a primitive l-th root
/// of unity, with delta = [l] as the expansion variable. Mixing coefficients
/// contribute exact monomials delta^(+-1/2), q-integers with argument not
/// divisible by l are units, and [n] with l | n is (n/l)*delta + O(delta^2),
/// so every regularized matrix element lives in this algebra. The `valid`
/// marker tracks how deep the coefficients are trustworthy given that only
/// first-order data of each q-integer is available.
class LimitSeries {
public:
    static constexpr int kMin = -6;
    static constexpr int kMax = 6;
    static constexpr int kInfValid = 99;

    LimitSeries() { c_.fill(cplx(0.0, 0.0)); }

    static LimitSeries scalar(cplx v) {
        LimitSeries s;
        s.c(0) = v;
        s.valid_ = kInfValid;
        return s;
    }

    /// delta^(k/2) as an exact monomial.
    static LimitSeries half_power(int k, cplx coeff = cplx(1.0, 0.0)) {
        LimitSeries s;
        s.c(k) = coeff;
        s.valid_ = kInfValid;
        return s;
    }

    cplx& c(int k) { return c_[size_t(k - kMin)]; }
    cplx c(int k) const { return c_[size_t(k - kMin)]; }
    int valid() const { return valid_; }

    /// First index with a coefficient above noise, capped by validity.
    int lead(double tol = 1e-11) const {
        double scale = 1.0;
        for (int k = kMin; k <= std::min(valid_, kMax); ++k) scale = std::max(scale, std::abs(c(k)));
        for (int k = kMin; k <= std::min(valid_, kMax); ++k)
            if (std::abs(c(k)) > tol * scale) return k;
        return std::min(valid_, kMax) + 1;
    }

    friend LimitSeries operator+(const LimitSeries& a, const LimitSeries& b) {
        LimitSeries r;
        r.valid_ = std::min(a.valid_, b.valid_);
        for (int k = kMin; k <= kMax; ++k) r.c(k) = a.c(k) + b.c(k);
        return r;
    }

    friend LimitSeries operator-(const LimitSeries& a, const LimitSeries& b) {
        LimitSeries r;
        r.valid_ = std::min(a.valid_, b.valid_);
        for (int k = kMin; k <= kMax; ++k) r.c(k) = a.c(k) - b.c(k);
        return r;
    }

    friend LimitSeries operator-(const LimitSeries& a) {
        LimitSeries r = a;
        for (int k = kMin; k <= kMax; ++k) r.c(k) = -r.c(k);
        return r;
    }

    friend LimitSeries operator*(cplx s, const LimitSeries& a) {
        LimitSeries r = a;
        for (int k = kMin; k <= kMax; ++k) r.c(k) = s * r.c(k);
        return r;
    }

    friend LimitSeries operator*(const LimitSeries& a, const LimitSeries& b) {
        LimitSeries r;
        int la = a.lead(), lb = b.lead();
        r.valid_ = std::min(la + b.valid_, a.valid_ + lb);
        r.valid_ = std::min(r.valid_, kInfValid);
        for (int i = kMin; i <= kMax; ++i) {
            if (a.c(i) == cplx(0.0, 0.0)) continue;
            for (int j = kMin; j <= kMax; ++j) {
                int k = i + j;
                if (k < kMin || k > kMax) continue;
                r.c(k) += a.c(i) * b.c(j);
            }
        }
        return r;
    }

    /// Multiplicative inverse. The lead coefficient must be resolvable.
    LimitSeries inverse() const {
        int L = lead();
        if (L > std::min(valid_, kMax)) throw std::domain_error("LimitSeries::inverse of zero series");
        cplx cl = c(L);
        // S = cl*delta^(L/2)*(1+u) -> S^-1 = cl^-1*delta^(-L/2)*(1-u+u^2-...)
        LimitSeries u = relative_tail(L, cl);
        LimitSeries acc = scalar(cplx(1.0, 0.0));
        LimitSeries pow = scalar(cplx(1.0, 0.0));
        for (int j = 1; j <= kMax - kMin; ++j) {
            pow = pow * u;
            acc = (j % 2 == 1) ? acc - pow : acc + pow;
        }
        LimitSeries r = half_power(-L, cplx(1.0, 0.0) / cl) * acc;
        r.valid_ = std::min(valid_ - 2 * L, kInfValid);
        return r;
    }

    /// Sign of the series value approached along the canonical path (where
    /// delta has the real sign s_delta): the sign of c_L * s_delta^(L/2).
    /// Only meaningful for radicand series, which have real coefficients and
    /// even lead.
    cplx germ_phase(int s_delta) const {
        int L = lead();
        if (L > std::min(valid_, kMax)) throw std::domain_error("LimitSeries::germ_phase of zero series");
        if (L % 2 != 0) throw std::domain_error("LimitSeries::germ_phase of odd-lead series");
        cplx g = c(L);
        if ((s_delta < 0) && ((L / 2) % 2 != 0)) g = -g;
        return sqrt_principal_snapped(g / std::abs(g));
    }

    /// Square root whose branch matches the principal square root of the
    /// radicand along the canonical approach path, on which delta = [l] is
    /// real of sign s_delta. The formal symbol delta^(1/2) is read as the
    /// principal sqrt of that real delta.
    LimitSeries sqrt(int s_delta) const {
        int L = lead();
        if (L > std::min(valid_, kMax)) throw std::domain_error("LimitSeries::sqrt of zero series");
        if (L % 2 != 0) throw std::domain_error("LimitSeries::sqrt of odd-lead series (quarter-order)");
        cplx cl = c(L);
        // principal sqrt of the real limit value, divided by the meaning of
        // the delta^(L/2) monomial under the same convention
        cplx g = cl;
        if ((s_delta < 0) && ((L / 2) % 2 != 0)) g = -g;
        cplx B = sqrt_principal_snapped(g);
        if (s_delta < 0) {
            // p(delta)^(L/2) with p(delta) = i: divide by i^(L/2)
            int e = ((L / 2) % 4 + 4) % 4;
            static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
            B /= ipow[e];
        }
        LimitSeries u = relative_tail(L, cl);
        // sqrt(1+u) = 1 + u/2 - u^2/8 + u^3/16 - 5u^4/128 + ...
        LimitSeries acc = scalar(cplx(1.0, 0.0));
        LimitSeries pow = scalar(cplx(1.0, 0.0));
        double coeff = 1.0;
        for (int j = 1; j <= kMax - kMin; ++j) {
            pow = pow * u;
            coeff *= (1.5 / double(j)) - 1.0;  // binomial(1/2, j) recurrence
            acc = acc + coeff * pow;
        }
        LimitSeries r = half_power(L / 2, B) * acc;
        r.valid_ = std::min(L / 2 + (valid_ - L), kInfValid);
        return r;
    }

    /// Copy with validity capped at v.
    LimitSeries capped(int v) const {
        LimitSeries r = *this;
        r.valid_ = std::min(r.valid_, v);
        return r;
    }

    /// True when no divergent half-power survives and the constant term is
    /// inside the trusted window.
    bool finite(double tol = 1e-9) const {
        if (valid_ < 0) return false;
        for (int k = kMin; k < 0; ++k)
            if (std::abs(c(k)) > tol) return false;
        return true;
    }

    /// The value at the root: the delta^0 coefficient.
    cplx limit(double tol = 1e-9) const {
        if (!finite(tol)) throw std::domain_error("LimitSeries::limit of divergent or unresolved series");
        return c(0);
    }

private:
    // (S / (cl*delta^(L/2))) - 1, the relative tail u with lead > 0.
    LimitSeries relative_tail(int L, cplx cl) const {
        LimitSeries u;
        u.valid_ = std::min(valid_ - L, kInfValid);
        for (int k = kMin; k <= kMax; ++k) {
            int src = k + L;
            if (src < kMin || src > kMax) continue;
            u.c(k) = c(src) / cl;
        }
        u.c(0) -= cplx(1.0, 0.0);
        return u;
    }

    std::array<cplx, size_t(kMax - kMin + 1)> c_{};
    int valid_ = kInfValid;
};

/// Evaluation context at a fixed primitive root: caches zeta, the sign of
/// [l] on the approach path, and mints q-integer series and their
/// branch-continued square roots.
///
/// Branches: all square roots are continued from the classical region
/// (0 < q < 1, every radicand positive) along the circle to the root angle.
/// For a single q-integer this gives sqrt([n]) = (-i)^k * |[n]|^(1/2) with
/// k = floor(2*n*t) zero crossings, and products of factor roots continue
/// coherently, so the whole coefficient family stays an exact
/// representation at every angle on the way.
struct RootContext {
    int l = 0;
    int m = 1;
    QParam root;    // exact root parameter
    cplx zeta;
    cplx d_l;       // d[l]/deps, eps the radial coordinate
    int s_delta;    // sign of [l] just below the root angle

    explicit RootContext(int l_, int m_ = 1)
        : l(l_), m(m_), root(QParam::root(l_, m_)) {
        zeta = root.q();
        d_l = 2.0 * double(l) / (zeta - 1.0 / zeta);
        s_delta = (std::sin(2.0 * kPi * double(m) / double(l)) > 0.0) ? -1 : 1;
    }

    /// [n] as a series in delta = [l]. Exact zero for n = 0; +-delta exactly
    /// for n = +-l; (n/l)*delta + O(delta^2) for other multiples; otherwise
    /// a unit with the first-order slope in the delta slot.
    LimitSeries q_int_series(long long n) const {
        LimitSeries s;
        if (n == 0) return s;  // identically zero, valid everywhere
        if (n == l || n == -l) {
            s.c(2) = cplx(n > 0 ? 1.0 : -1.0, 0.0);
            return s;
        }
        if (n % l == 0) {
            s.c(2) = cplx(double(n) / double(l), 0.0);
            return s.capped(3);
        }
        cplx v = root.q_int_value(n);
        cplx dtrue = (double(n) * (root.q_pow(n) + root.q_pow(-n)) - v * (zeta + 1.0 / zeta)) /
                     (zeta - 1.0 / zeta);
        s.c(0) = v;
        s.c(2) = dtrue / d_l;
        return s.capped(3);
    }

    /// Number of zero crossings of [n](t) on (0, m/l), counted just below
    /// the root angle: floor(2nm/l), shifted by one when the endpoint itself
    /// is a zero (l | n).
    int crossings(long long n) const {
        long long num = 2 * n * m;
        long long k = num / l;
        if (num % l == 0) k -= 1;
        return static_cast<int>(k);
    }

    static cplx minus_i_pow(int k) {
        static const cplx tab[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
        return tab[((k % 4) + 4) % 4];
    }

    /// Branch-continued sqrt of a single q-integer at an on-circle angle
    /// near the root: (-i)^crossings * |[n](t)|^(1/2). Requires n > 0.
    cplx csqrt_value(long long n, const QParam& q) const {
        return continued_sqrt_qint(n, q);
    }

    /// Branch-continued sqrt of [n] as a series around the root. The series
    /// sqrt carries the principal branch of the value just below the root
    /// angle; realign it to the continued branch.
    LimitSeries csqrt_series(long long n) const {
        double sign_below =
            (n % l == 0) ? double(s_delta) : root.q_int_value(n).real();
        cplx principal_phase = (sign_below > 0.0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        cplx adjust = minus_i_pow(crossings(n)) / principal_phase;
        return adjust * q_int_series(n).sqrt(s_delta);
    }
};

}  // namespace qgz3
