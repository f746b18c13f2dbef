#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgz3/dense.hpp"
#include "qgz3/gzbasis.hpp"
#include "qgz3/parallel.hpp"
#include "qgz3/qnum.hpp"

namespace qgz3 {

enum class Gen { H1, H2, E1, F1, E2, F2, Casimir };

inline const char* gen_name(Gen g) {
    switch (g) {
        case Gen::H1: return "h1";
        case Gen::H2: return "h2";
        case Gen::E1: return "e1";
        case Gen::F1: return "f1";
        case Gen::E2: return "e2";
        case Gen::F2: return "f2";
        case Gen::Casimir: return "casimir";
    }
    return "?";
}

/// Generator (or Casimir) matrix over an ordered basis. Entries are keyed
/// (row, column) = (target, source); exact zeros are never stored.
struct SparseOperator {
    Gen gen = Gen::H1;
    RepLabel label;
    int dim = 0;
    std::map<std::pair<int, int>, cplx> entries;

    void add(int row, int col, cplx v) {
        if (v == cplx(0.0, 0.0)) return;
        entries[{row, col}] += v;
    }

    // stores even exact zeros; used for the Cartan diagonals
    void set(int row, int col, cplx v) { entries[{row, col}] = v; }

    cplx at(int row, int col) const {
        auto it = entries.find({row, col});
        return it == entries.end() ? cplx(0.0, 0.0) : it->second;
    }

    Dense to_dense() const {
        Dense m(dim);
        for (const auto& [rc, v] : entries) m.at(rc.first, rc.second) = v;
        return m;
    }
};

/// Ordered basis of a representation with pattern -> index lookups.
class BasisIndex {
public:
    explicit BasisIndex(const RepLabel& label)
        : label_(label), patterns_(enumerate_basis(label)) {
        for (size_t i = 0; i < patterns_.size(); ++i)
            index_[key(patterns_[i])] = static_cast<int>(i);
    }

    const RepLabel& label() const { return label_; }
    const std::vector<GZPattern>& patterns() const { return patterns_; }
    int size() const { return static_cast<int>(patterns_.size()); }

    int index_of(const GZPattern& p) const {
        auto it = index_.find(key(p));
        return it == index_.end() ? -1 : it->second;
    }
    int index_of(int p12, int p22, int p11) const {
        auto it = index_.find(std::tuple<int, int, int>{p12, p22, p11});
        return it == index_.end() ? -1 : it->second;
    }

private:
    static std::tuple<int, int, int> key(const GZPattern& p) { return {p.p12, p.p22, p.p11}; }

    RepLabel label_;
    std::vector<GZPattern> patterns_;
    std::map<std::tuple<int, int, int>, int> index_;
};

enum class PWhich { P1, P2, P3 };
enum class Slot { S12, S22 };  // which second-row index the move touches

/// The q-integer products entering the p12/p22 moves, evaluated on the
/// pattern's own indices.
inline Jet coefficient_P(PWhich which, Slot slot, const GZPattern& p, const QParam& q) {
    const RepLabel& L = p.label;
    auto qi = [&](long long n) { return q_int(n, q); };
    if (slot == Slot::S12) {
        switch (which) {
            case PWhich::P1:
                return qi(L.p13 - p.p12 + 1) * qi(p.p12 - L.p23 - 1) * qi(p.p12 - L.p33 - 1);
            case PWhich::P2: return qi(p.p12 - p.p11);
            case PWhich::P3: return qi(p.p12 - p.p22) * qi(p.p12 - p.p22 - 1);
        }
    } else {
        switch (which) {
            case PWhich::P1:
                return qi(L.p13 - p.p22 + 1) * qi(L.p23 - p.p22 + 1) * qi(p.p22 - L.p33 - 1);
            case PWhich::P2: return qi(p.p11 - p.p22);
            case PWhich::P3: return qi(p.p12 - p.p22) * qi(p.p12 - p.p22 + 1);
        }
    }
    return Jet{};
}

/// Cartan eigenvalues on a pattern.
inline int h1_eigenvalue(const GZPattern& p) { return 2 * p.p11 - (p.p12 + p.p22) - 1; }
inline int h2_eigenvalue(const GZPattern& p) {
    const RepLabel& L = p.label;
    return 2 * (p.p12 + p.p22) - p.p11 - (L.p13 + L.p23 + L.p33) - 1;
}

/// Factor lists of a generator matrix element: the coefficient is
/// (product of sqrt[arg] over num) / (product of sqrt[arg] over den).
struct CoeffSpec {
    std::array<long long, 4> num{0, 0, 0, 0};
    int num_count = 0;
    std::array<long long, 2> den{0, 0};
    int den_count = 0;

    void push_num(long long a) { num[size_t(num_count++)] = a; }
    void push_den(long long a) { den[size_t(den_count++)] = a; }

    bool vanishes() const {
        for (int i = 0; i < num_count; ++i)
            if (num[size_t(i)] == 0) return true;
        return false;
    }
};

inline CoeffSpec slot_spec(Slot slot, const GZPattern& p) {
    const RepLabel& L = p.label;
    CoeffSpec s;
    if (slot == Slot::S12) {
        s.push_num(L.p13 - p.p12 + 1);
        s.push_num(p.p12 - L.p23 - 1);
        s.push_num(p.p12 - L.p33 - 1);
        s.push_num(p.p12 - p.p11);
        s.push_den(p.p12 - p.p22);
        s.push_den(p.p12 - p.p22 - 1);
    } else {
        s.push_num(L.p13 - p.p22 + 1);
        s.push_num(L.p23 - p.p22 + 1);
        s.push_num(p.p22 - L.p33 - 1);
        s.push_num(p.p11 - p.p22);
        s.push_den(p.p12 - p.p22);
        s.push_den(p.p12 - p.p22 + 1);
    }
    return s;
}

inline CoeffSpec gz1_spec(bool lowering, const GZPattern& p) {
    CoeffSpec s;
    if (lowering) {
        s.push_num(p.p12 - p.p11 + 1);
        s.push_num(p.p11 - p.p22 - 1);
    } else {
        s.push_num(p.p12 - p.p11);
        s.push_num(p.p11 - p.p22);
    }
    return s;
}

/// Coefficient value with branch-continued factor square roots. Squares to
/// the plain P1*P2/P3 product; the continued branches keep every defining
/// relation exact at any angle on the circle.
inline cplx coeff_value(const CoeffSpec& s, const QParam& q) {
    if (s.vanishes()) return cplx(0.0, 0.0);
    cplx r(1.0, 0.0);
    for (int i = 0; i < s.num_count; ++i) r *= continued_sqrt_qint(s.num[size_t(i)], q);
    for (int i = 0; i < s.den_count; ++i) r /= continued_sqrt_qint(s.den[size_t(i)], q);
    return r;
}

inline cplx slot_coefficient(Slot slot, const GZPattern& p, const QParam& q) {
    return coeff_value(slot_spec(slot, p), q);
}

namespace detail {

// Emits the p11-move coefficient if the target stays inside the pattern
// cone; the inequalities failing is always matched by a vanishing factor.
inline void column_e1(const BasisIndex& basis, const QParam& q, int s, SparseOperator& op) {
    const GZPattern& p = basis.patterns()[size_t(s)];
    if (p.p11 + 1 > p.p12) return;  // [p12-p11] = 0
    int t = basis.index_of(p.p12, p.p22, p.p11 + 1);
    op.add(t, s, coeff_value(gz1_spec(false, p), q));
}

inline void column_f1(const BasisIndex& basis, const QParam& q, int s, SparseOperator& op) {
    const GZPattern& p = basis.patterns()[size_t(s)];
    if (p.p11 - 1 <= p.p22) return;  // [p11-p22-1] = 0
    int t = basis.index_of(p.p12, p.p22, p.p11 - 1);
    op.add(t, s, coeff_value(gz1_spec(true, p), q));
}

inline void column_f2(const BasisIndex& basis, const QParam& q, int s, SparseOperator& op) {
    const GZPattern& p = basis.patterns()[size_t(s)];
    GZPattern t1(p.label, p.p12 - 1, p.p22, p.p11);  // lower p12
    if (t1.valid()) op.add(basis.index_of(t1), s, slot_coefficient(Slot::S12, p, q));
    GZPattern t2(p.label, p.p12, p.p22 - 1, p.p11);  // lower p22
    if (t2.valid()) op.add(basis.index_of(t2), s, slot_coefficient(Slot::S22, p, q));
}

inline void column_e2(const BasisIndex& basis, const QParam& q, int s, SparseOperator& op) {
    const GZPattern& p = basis.patterns()[size_t(s)];
    // coefficient arguments live on the target pattern
    GZPattern t1(p.label, p.p12 + 1, p.p22, p.p11);  // raise p12
    if (t1.valid()) op.add(basis.index_of(t1), s, slot_coefficient(Slot::S12, t1, q));
    GZPattern t2(p.label, p.p12, p.p22 + 1, p.p11);  // raise p22
    if (t2.valid()) op.add(basis.index_of(t2), s, slot_coefficient(Slot::S22, t2, q));
}

}  // namespace detail

/// Generator matrix at generic (or near-root) q in the unmixed basis.
inline SparseOperator build_operator(Gen gen, const BasisIndex& basis, const QParam& q) {
    if (q.at_root())
        throw std::invalid_argument("build_operator requires generic q; root builds are regularized");
    SparseOperator op;
    op.gen = gen;
    op.label = basis.label();
    op.dim = basis.size();
    std::vector<SparseOperator> cols(size_t(basis.size()));
    parallel_for(basis.size(), [&](int s) {
        SparseOperator& c = cols[size_t(s)];
        c.dim = basis.size();
        switch (gen) {
            case Gen::H1: c.set(s, s, cplx(double(h1_eigenvalue(basis.patterns()[size_t(s)])), 0.0)); break;
            case Gen::H2: c.set(s, s, cplx(double(h2_eigenvalue(basis.patterns()[size_t(s)])), 0.0)); break;
            case Gen::E1: detail::column_e1(basis, q, s, c); break;
            case Gen::F1: detail::column_f1(basis, q, s, c); break;
            case Gen::E2: detail::column_e2(basis, q, s, c); break;
            case Gen::F2: detail::column_f2(basis, q, s, c); break;
            default: throw std::invalid_argument("build_operator: not a generator");
        }
    });
    for (auto& c : cols)
        for (const auto& [rc, v] : c.entries) op.add(rc.first, rc.second, v);
    return op;
}

inline SparseOperator build_operator(Gen gen, const RepLabel& label, const QParam& q) {
    BasisIndex basis(label);
    return build_operator(gen, basis, q);
}

/// Quadratic Casimir of the (e1, f1) subalgebra:
/// C = (q - q^-1)^2 f1 e1 + q^(h1+1) + q^(-h1-1).
inline SparseOperator casimir_from(const SparseOperator& e1, const SparseOperator& f1,
                                   const std::vector<int>& h1_eigs, const QParam& q) {
    int n = e1.dim;
    Dense prod = f1.to_dense() * e1.to_dense();
    cplx w = q.q() - q.q_pow(-1);
    SparseOperator c;
    c.gen = Gen::Casimir;
    c.label = e1.label;
    c.dim = n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx v = w * w * prod.at(i, j);
            if (i == j) v += q.q_pow(h1_eigs[size_t(i)] + 1) + q.q_pow(-h1_eigs[size_t(i)] - 1);
            if (std::abs(v) > 1e-14) c.add(i, j, v);
        }
    }
    return c;
}

inline SparseOperator casimir_sl2(const RepLabel& label, const QParam& q) {
    BasisIndex basis(label);
    SparseOperator e1 = build_operator(Gen::E1, basis, q);
    SparseOperator f1 = build_operator(Gen::F1, basis, q);
    std::vector<int> eigs;
    eigs.reserve(size_t(basis.size()));
    for (const auto& p : basis.patterns()) eigs.push_back(h1_eigenvalue(p));
    return casimir_from(e1, f1, eigs, q);
}

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual < tolerance; }
};

struct VerifyReport {
    std::vector<Check> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.residual);
        return m;
    }
};

namespace detail {

inline Dense serre(const Dense& x, const Dense& y, cplx qplus) {
    return x * x * y - qplus * (x * y * x) + y * x * x;
}

inline Dense qint_diag(const std::vector<int>& eigs, const QParam& q) {
    Dense d(static_cast<int>(eigs.size()));
    for (size_t i = 0; i < eigs.size(); ++i) d.at(int(i), int(i)) = q.q_int_value(eigs[i]);
    return d;
}

/// Residuals of the defining relations for a set of six generator matrices.
inline void relation_checks(const Dense& h1, const Dense& h2, const Dense& e1, const Dense& f1,
                            const Dense& e2, const Dense& f2, const std::vector<int>& h1e,
                            const std::vector<int>& h2e, const QParam& q, double tol,
                            VerifyReport& report) {
    const int a[2][2] = {{2, -1}, {-1, 2}};
    const Dense* hs[2] = {&h1, &h2};
    const Dense* es[2] = {&e1, &e2};
    const Dense* fs[2] = {&f1, &f2};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::string sij = std::to_string(i + 1) + std::to_string(j + 1);
            report.checks.push_back(
                {"comm_h" + sij + "_e", (comm(*hs[i], *es[j]) - cplx(double(a[i][j])) * *es[j]).max_abs(), tol});
            report.checks.push_back(
                {"comm_h" + sij + "_f", (comm(*hs[i], *fs[j]) + cplx(double(a[i][j])) * *fs[j]).max_abs(), tol});
        }
    }
    Dense qh1 = qint_diag(h1e, q), qh2 = qint_diag(h2e, q);
    report.checks.push_back({"comm_e1_f1_h1", (comm(e1, f1) - qh1).max_abs(), tol});
    report.checks.push_back({"comm_e2_f2_h2", (comm(e2, f2) - qh2).max_abs(), tol});
    report.checks.push_back({"comm_e1_f2", comm(e1, f2).max_abs(), tol});
    report.checks.push_back({"comm_e2_f1", comm(e2, f1).max_abs(), tol});
    cplx qplus = q.q() + q.q_pow(-1);
    report.checks.push_back({"serre_e1_e2", serre(e1, e2, qplus).max_abs(), tol});
    report.checks.push_back({"serre_e2_e1", serre(e2, e1, qplus).max_abs(), tol});
    report.checks.push_back({"serre_f1_f2", serre(f1, f2, qplus).max_abs(), tol});
    report.checks.push_back({"serre_f2_f1", serre(f2, f1, qplus).max_abs(), tol});
}

}  // namespace detail

/// Residual report for all defining relations at generic q.
inline VerifyReport verify_generic(const RepLabel& label, const QParam& q, double tol = 1e-9) {
    BasisIndex basis(label);
    Dense h1 = build_operator(Gen::H1, basis, q).to_dense();
    Dense h2 = build_operator(Gen::H2, basis, q).to_dense();
    Dense e1 = build_operator(Gen::E1, basis, q).to_dense();
    Dense f1 = build_operator(Gen::F1, basis, q).to_dense();
    Dense e2 = build_operator(Gen::E2, basis, q).to_dense();
    Dense f2 = build_operator(Gen::F2, basis, q).to_dense();
    std::vector<int> h1e, h2e;
    for (const auto& p : basis.patterns()) {
        h1e.push_back(h1_eigenvalue(p));
        h2e.push_back(h2_eigenvalue(p));
    }
    VerifyReport report;
    detail::relation_checks(h1, h2, e1, f1, e2, f2, h1e, h2e, q, tol, report);
    return report;
}

}  // namespace qgz3
