#pragma once

#include <vector>

#include "qgz3/parallel.hpp"
#include "qgz3/qnum.hpp"

namespace qgz3 {

/// Row-major dense complex matrix. Representations here stay small (a few
/// hundred states), so dense products are the simplest reliable arbiter for
/// relation residuals, powers and commutators.
class Dense {
public:
    Dense() = default;
    explicit Dense(int n) : n_(n), a_(size_t(n) * size_t(n)) {}

    int size() const { return n_; }
    cplx& at(int r, int c) { return a_[size_t(r) * n_ + c]; }
    const cplx& at(int r, int c) const { return a_[size_t(r) * n_ + c]; }

    static Dense identity(int n) {
        Dense m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    friend Dense operator*(const Dense& x, const Dense& y) {
        Dense r(x.n_);
        parallel_for(x.n_, [&](int i) {
            for (int k = 0; k < x.n_; ++k) {
                cplx v = x.at(i, k);
                if (v == cplx(0.0, 0.0)) continue;
                const cplx* yr = &y.a_[size_t(k) * y.n_];
                cplx* rr = &r.a_[size_t(i) * r.n_];
                for (int j = 0; j < x.n_; ++j) rr[j] += v * yr[j];
            }
        });
        return r;
    }

    friend Dense operator+(Dense x, const Dense& y) {
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Dense operator-(Dense x, const Dense& y) {
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend Dense operator*(cplx s, Dense x) {
        for (auto& v : x.a_) v *= s;
        return x;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    Dense pow(int k) const {
        Dense r = identity(n_);
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

inline Dense comm(const Dense& a, const Dense& b) { return a * b - b * a; }

}  // namespace qgz3
