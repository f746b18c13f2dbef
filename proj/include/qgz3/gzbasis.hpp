#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qgz3 {

/// Highest-weight label (p13, p23, p33) of a representation, optionally tied
/// to an odd root order l. Indices are defined up to a common shift; only
/// differences enter matrix elements, and p33 = 0 is the normal form.
struct RepLabel {
    int p13 = 0;
    int p23 = 0;
    int p33 = 0;
    int l = 0;  // 0 when no root order is attached

    RepLabel() = default;
    RepLabel(int a13, int a23, int a33, int root_order = 0)
        : p13(a13), p23(a23), p33(a33), l(root_order) {
        if (!(p13 > p23 && p23 > p33))
            throw std::invalid_argument("RepLabel requires p13 > p23 > p33");
        if (l != 0) {
            if (l <= 2 || l % 2 == 0) throw std::invalid_argument("root order l must be odd and > 2");
            if (p13 - p23 > l || p23 - p33 > l)
                throw std::invalid_argument("RepLabel with l requires p13-p23 <= l and p23-p33 <= l");
        }
    }

    int lambda1() const { return p13 - p23 - 1; }
    int lambda2() const { return p23 - p33 - 1; }

    RepLabel normalized() const { return RepLabel(p13 - p33, p23 - p33, 0, l); }
    RepLabel with_l(int root_order) const { return RepLabel(p13, p23, p33, root_order); }

    friend bool operator==(const RepLabel& a, const RepLabel& b) {
        return a.p13 == b.p13 && a.p23 == b.p23 && a.p33 == b.p33 && a.l == b.l;
    }

    std::string str() const {
        return "(" + std::to_string(p13) + "," + std::to_string(p23) + "," + std::to_string(p33) + ")";
    }
};

/// One Gelfand-Zetlin pattern inside a labeled representation.
struct GZPattern {
    RepLabel label;
    int p12 = 0;
    int p22 = 0;
    int p11 = 0;

    GZPattern() = default;
    GZPattern(const RepLabel& lab, int a12, int a22, int a11)
        : label(lab), p12(a12), p22(a22), p11(a11) {}

    /// The interlacing inequalities defining a valid pattern.
    bool valid() const {
        return label.p13 >= p12 && p12 > label.p23 && label.p23 >= p22 && p22 > label.p33 &&
               p12 >= p11 && p11 > p22;
    }

    friend bool operator==(const GZPattern& a, const GZPattern& b) {
        return a.p12 == b.p12 && a.p22 == b.p22 && a.p11 == b.p11;
    }
    friend bool operator<(const GZPattern& a, const GZPattern& b) {
        return std::tie(a.p12, a.p22, a.p11) < std::tie(b.p12, b.p22, b.p11);
    }

    std::string str() const {
        return "(" + std::to_string(p12) + "," + std::to_string(p22) + "," + std::to_string(p11) + ")";
    }
};

/// A basis vector: a pattern plus the flag marking it as one of the mixed
/// (primed) states of the root-of-unity regularization.
struct BasisState {
    GZPattern pattern;
    bool primed = false;
};

inline long long dimension(const RepLabel& label) {
    long long a = label.p13 - label.p23, b = label.p23 - label.p33, c = label.p13 - label.p33;
    return a * b * c / 2;
}

/// All valid patterns, ascending lexicographically by (p12, p22, p11).
inline std::vector<GZPattern> enumerate_basis(const RepLabel& label) {
    std::vector<GZPattern> out;
    out.reserve(size_t(dimension(label)));
    for (int p12 = label.p23 + 1; p12 <= label.p13; ++p12)
        for (int p22 = label.p33 + 1; p22 <= label.p23; ++p22)
            for (int p11 = p22 + 1; p11 <= p12; ++p11)
                out.emplace_back(label, p12, p22, p11);
    return out;
}

/// Pyramid coordinates of a pattern: x and y are the eigenvalues of the
/// orthogonal Cartan directions (up to fixed shifts), z the layer depth.
struct Coordinates {
    int x, y, z;
};

inline Coordinates coordinates(const GZPattern& p) {
    const RepLabel& L = p.label;
    return {2 * p.p11 - (p.p12 + p.p22) - 1,
            3 * (p.p12 + p.p22) - 2 * (L.p13 + L.p23 + L.p33) - 1,
            std::min(L.p13 - p.p12, L.p23 - L.p33 - 1)};
}

/// The involution (p12, p22, p11) -> (p22+l, p12-l, p11).
inline GZPattern s1_transform(const GZPattern& p, int l) {
    return GZPattern(p.label, p.p22 + l, p.p12 - l, p.p11);
}

/// True when the pattern and its s1 image are both valid, i.e. when the
/// state lies in the teepee region of redefinition.
inline bool in_teepee(const GZPattern& p, int l) {
    return p.valid() && s1_transform(p, l).valid();
}

/// Source label of the embedding into V(p13, p23, p33), defined only when
/// p33 + l > p23 > p13 - l.
inline std::optional<RepLabel> s2_source_label(const RepLabel& label, int l) {
    if (label.p33 + l > label.p23 && label.p23 > label.p13 - l)
        return RepLabel(label.p33 + l, label.p23, label.p13 - l);
    return std::nullopt;
}

}  // namespace qgz3
