#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qgz3/rootlimit.hpp"

namespace qgz3 {

enum class Classification { ClassicalLike, Irreducible, SplitsInTwo };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::ClassicalLike: return "classical-like";
        case Classification::Irreducible: return "irreducible";
        case Classification::SplitsInTwo: return "splits-in-two";
    }
    return "?";
}

/// Nothing new happens while the label fits under the root order; on the
/// edge values of p23 the regularized module stays irreducible; otherwise it
/// splits into the embedded image and its complement.
inline Classification classify(const RepLabel& label, int l) {
    if (label.p13 - label.p33 <= l) return Classification::ClassicalLike;
    if (label.p23 == label.p13 - l || label.p23 == label.p33 + l)
        return Classification::Irreducible;
    return Classification::SplitsInTwo;
}

/// Indices of the embedded copy of the source module inside the basis: the
/// identity map on patterns from the source label.
inline std::vector<int> subrep_image(const MixedBasis& mb) {
    auto source = s2_source_label(mb.label, mb.l);
    if (!source) throw std::logic_error("subrep_image: no embedded source label");
    std::vector<int> out;
    for (const GZPattern& p : enumerate_basis(*source)) {
        GZPattern inside(mb.label, p.p12, p.p22, p.p11);
        if (!inside.valid()) throw std::logic_error("embedded pattern invalid in the target label");
        int idx = mb.gz.index_of(inside);
        if (idx < 0) throw std::logic_error("embedded pattern missing from the basis");
        if (mb.primed[size_t(idx)]) throw std::logic_error("embedded pattern is a redefined state");
        out.push_back(idx);
    }
    return out;
}

/// Number of generator matrix entries connecting the index set to its
/// complement; the split is genuine iff this is zero for all six generators.
inline int coupling_entries(const RegularizedRep& rep, const std::vector<int>& subset) {
    std::set<int> in(subset.begin(), subset.end());
    int count = 0;
    for (Gen g : {Gen::H1, Gen::H2, Gen::E1, Gen::F1, Gen::E2, Gen::F2})
        for (const auto& [rc, v] : rep.op(g).entries)
            if (in.count(rc.first) != in.count(rc.second)) ++count;
    return count;
}

/// Operator restricted to the given index subset (reindexed by its order).
inline SparseOperator restrict_operator(const SparseOperator& op, const std::vector<int>& keep) {
    std::map<int, int> pos;
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    SparseOperator out;
    out.gen = op.gen;
    out.label = op.label;
    out.dim = static_cast<int>(keep.size());
    for (const auto& [rc, v] : op.entries) {
        auto r = pos.find(rc.first), c = pos.find(rc.second);
        if (r != pos.end() && c != pos.end()) out.set(r->second, c->second, v);
    }
    return out;
}

/// One slice of the pyramid at a fixed value of the second horizontal
/// coordinate: the h1-weight multiset must match the character of a tensor
/// product of two sl(2) modules whose spins follow from the label.
struct SliceCheck {
    int y = 0;
    double j1 = 0.0, j2 = 0.0;
    bool spins_valid = false;   // both spins half-integral and nonnegative
    bool match = false;         // weight multisets agree
    std::vector<int> family_dims;     // sl(2) string lengths on the slice
    std::vector<int> paired_widths;   // widths of mixed pairs crossing it (root side)
};

inline SliceCheck sl2_slice_check(const RepLabel& label, int y, const MixedBasis* mb = nullptr) {
    SliceCheck out;
    out.y = y;
    std::multiset<int> weights;
    for (const GZPattern& p : enumerate_basis(label)) {
        Coordinates c = coordinates(p);
        if (c.y != y) continue;
        weights.insert(c.x);
        if (p.p11 == p.p22 + 1) out.family_dims.push_back(p.p12 - p.p22);
    }
    if (weights.empty()) return out;

    int y_top = label.p13 + label.p23 - 2 * label.p33 - 1;
    int y_bot = -2 * label.p13 + label.p23 + label.p33 + 5;
    int y_thr = label.p13 - 2 * label.p23 + label.p33 + 2;
    long long twice_j1, six_j2;
    if (y >= y_thr) {
        twice_j1 = label.p13 - label.p23 - 1;
        six_j2 = y_top - y;
    } else {
        twice_j1 = label.p23 - label.p33 - 1;
        six_j2 = y - y_bot;
    }
    out.spins_valid = (six_j2 % 3 == 0) && six_j2 >= 0 && twice_j1 >= 0;
    out.j1 = double(twice_j1) / 2.0;
    out.j2 = double(six_j2) / 6.0;
    if (!out.spins_valid) return out;

    long long twice_j2 = six_j2 / 3;
    std::multiset<int> tensor;
    for (long long a = -twice_j1; a <= twice_j1; a += 2)
        for (long long b = -twice_j2; b <= twice_j2; b += 2) tensor.insert(static_cast<int>(a + b));
    out.match = (tensor == weights);

    if (mb) {
        for (const auto& [iA, iB] : mb->pairs) {
            const GZPattern& pa = mb->gz.patterns()[size_t(iA)];
            if (coordinates(pa).y == y) out.paired_widths.push_back(pa.p12 - pa.p22);
        }
    }
    return out;
}

inline std::vector<int> occurring_y_values(const RepLabel& label) {
    std::set<int> ys;
    for (const GZPattern& p : enumerate_basis(label)) ys.insert(coordinates(p).y);
    return std::vector<int>(ys.begin(), ys.end());
}

/// Findings for labels with p13 - p33 = l + 1, where weight multiplicities
/// drop to one.
struct FlatReport {
    bool applicable = false;
    bool rep_itself_flat = false;     // p23 on either extreme value
    int teepee_line_points = 0;       // must equal l, all with p12=p13, p22=p33+1
    bool teepee_is_single_line = false;
    long long quotient_dim = 0;
    bool quotient_matches_selection = false;  // p12 = p13 or p22 = p33+1
    bool multiplicities_at_most_one = false;
    long long d0 = 0, d1 = 0, hexagon_dim = 0;
    bool hexagon_dim_matches = false;
    bool relabeling_bijective = false;
    int states_on_p12_edge = 0;   // quotient states with p12 = p13
    int states_on_p22_edge = 0;   // remaining quotient states with p22 = p33+1
};

inline FlatReport flat_analysis(const RepLabel& label, int l) {
    if (label.p13 - label.p33 != l + 1)
        throw std::invalid_argument("flat_analysis requires p13 - p33 = l + 1");
    FlatReport out;
    out.applicable = true;
    out.rep_itself_flat = (label.p23 == label.p13 - 1) || (label.p23 == label.p13 - l);

    MixedBasis mb = build_mixed_basis(label, l);
    // the teepee collapses to a single width-l line
    bool line_ok = mb.pairs.empty();
    for (int i = 0; i < mb.size(); ++i) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        if (!in_teepee(p, l)) continue;
        ++out.teepee_line_points;
        if (!(p.p12 == label.p13 && p.p22 == label.p33 + 1)) line_ok = false;
    }
    out.teepee_is_single_line = line_ok && out.teepee_line_points == l;

    // quotient = everything outside the embedded image (empty when the
    // module itself is irreducible)
    std::set<int> image;
    if (classify(label, l) == Classification::SplitsInTwo)
        for (int i : subrep_image(mb)) image.insert(i);
    std::vector<int> quotient;
    for (int i = 0; i < mb.size(); ++i)
        if (!image.count(i)) quotient.push_back(i);
    out.quotient_dim = static_cast<long long>(quotient.size());

    bool selection_ok = true;
    std::set<std::pair<int, int>> xy;
    bool mult_ok = true;
    for (int i : quotient) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        bool edge12 = (p.p12 == label.p13);
        bool edge22 = (p.p22 == label.p33 + 1);
        if (!edge12 && !edge22) selection_ok = false;
        if (edge12) ++out.states_on_p12_edge;
        else if (edge22) ++out.states_on_p22_edge;
        Coordinates c = coordinates(p);
        if (!xy.insert({c.x, c.y}).second) mult_ok = false;
    }
    // and nothing in the image satisfies the selection
    for (int i : image) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        if (p.p12 == label.p13 || p.p22 == label.p33 + 1) selection_ok = false;
    }
    out.quotient_matches_selection = selection_ok;
    out.multiplicities_at_most_one = mult_ok;

    // cross construction over the relabeled triple
    int b13 = label.p23 + l, b23 = label.p13 - l, b33 = label.p13 - l - 1;
    RepLabel barred(b13, b23, b33);
    out.d0 = dimension(barred);
    long long s = b13 - b23 - l;
    out.d1 = s * (s + 1) / 2;
    out.hexagon_dim = out.d0 - 3 * out.d1;
    out.hexagon_dim_matches = (out.hexagon_dim == out.quotient_dim);

    // the relabeling maps the quotient bijectively onto the hexagonal part
    std::set<std::tuple<int, int, int>> seen;
    bool bij = true;
    for (int i : quotient) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        int q12, q22, q11 = p.p11;
        if (p.p22 == label.p13 - l) {
            q12 = p.p12;
            q22 = p.p22;
        } else {  // p12 == p13
            q12 = p.p22 + l;
            q22 = p.p12 - l;
        }
        GZPattern img(barred, q12, q22, q11);
        if (!img.valid()) { bij = false; continue; }
        bool hexagonal = (b13 >= q12 && q12 > b23) && (q12 >= q11 && q11 > q12 - l) &&
                         (b23 + l >= q11 && q11 > b23);
        if (!hexagonal) bij = false;
        if (!seen.insert({q12, q22, q11}).second) bij = false;
    }
    out.relabeling_bijective = bij && static_cast<long long>(seen.size()) == out.hexagon_dim;
    return out;
}

/// Which side of the max(p12-p33, p13-p22+1) threshold reproduces the
/// embedded image. The operational image is the ground truth; the report
/// records the direction that actually matches.
struct MaxCharReport {
    int image_max = 0;      // largest value over the image
    int quotient_min = 0;   // smallest value over the complement
    bool image_is_low_side = false;   // image = { max(...) <= l }
    bool image_is_high_side = false;  // image = { max(...) >= l }
    bool unique_direction = false;
};

inline MaxCharReport max_characterization_check(const MixedBasis& mb) {
    MaxCharReport out;
    std::set<int> image;
    for (int i : subrep_image(mb)) image.insert(i);
    int img_max = INT_MIN, img_min = INT_MAX, quo_max = INT_MIN, quo_min = INT_MAX;
    for (int i = 0; i < mb.size(); ++i) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        int v = std::max(p.p12 - mb.label.p33, mb.label.p13 - p.p22 + 1);
        if (image.count(i)) {
            img_max = std::max(img_max, v);
            img_min = std::min(img_min, v);
        } else {
            quo_max = std::max(quo_max, v);
            quo_min = std::min(quo_min, v);
        }
    }
    out.image_max = img_max;
    out.quotient_min = quo_min;
    out.image_is_low_side = (img_max <= mb.l && quo_min > mb.l);
    out.image_is_high_side = (img_min >= mb.l && quo_max < mb.l);
    out.unique_direction = out.image_is_low_side != out.image_is_high_side;
    return out;
}

/// The full decomposition findings for one label.
struct StructureReport {
    RepLabel label;
    int l = 0;  // 0 for a generic-parameter report
    int m = 1;
    long long dim = 0;
    bool integrable = true;
    Classification cls = Classification::ClassicalLike;
    int teepee = 0, pair_count = 0, self_paired = 0;
    long long subrep_dim = 0, quotient_dim = 0;
    int coupling = 0;  // generator entries between image and complement
    std::vector<SliceCheck> slices;
    bool slices_all_match = true;
    std::vector<CasimirBlock> casimir_blocks;
    double casimir_scalar_residual = 0.0;
    bool casimir_pass = true;
    std::optional<FlatReport> flat;
    std::optional<MaxCharReport> max_char;
    std::vector<cplx> pair_gauge;
};

inline StructureReport analyze(const RepLabel& label, int l = 0, int m = 1) {
    StructureReport out;
    out.label = label;
    out.l = l;
    out.m = m;
    out.dim = dimension(label);
    if (l == 0) {
        for (int y : occurring_y_values(label)) {
            out.slices.push_back(sl2_slice_check(label, y));
            out.slices_all_match = out.slices_all_match && out.slices.back().match;
        }
        out.quotient_dim = out.dim;
        return out;
    }

    RepLabel lab = label.with_l(l);
    RegularizedRep rep = build_regularized(lab, l, m);
    const MixedBasis& mb = rep.basis;
    out.teepee = mb.teepee_count;
    out.pair_count = static_cast<int>(mb.pairs.size());
    out.self_paired = static_cast<int>(mb.self_paired.size());
    out.integrable = mb.pairs.empty();
    out.cls = classify(lab, l);
    out.pair_gauge = rep.pair_gauge;

    if (out.cls == Classification::SplitsInTwo) {
        std::vector<int> image = subrep_image(mb);
        out.subrep_dim = static_cast<long long>(image.size());
        out.quotient_dim = out.dim - out.subrep_dim;
        out.coupling = coupling_entries(rep, image);
        out.max_char = max_characterization_check(mb);
    } else {
        out.quotient_dim = out.dim;
    }

    for (int y : occurring_y_values(lab)) {
        out.slices.push_back(sl2_slice_check(lab, y, &mb));
        out.slices_all_match = out.slices_all_match && out.slices.back().match;
    }

    CasimirReport cr = casimir_structure(rep);
    out.casimir_blocks = cr.blocks;
    out.casimir_scalar_residual = cr.scalar_residual;
    out.casimir_pass = cr.pass();

    if (lab.p13 - lab.p33 == l + 1) out.flat = flat_analysis(lab, l);
    return out;
}

}  // namespace qgz3
