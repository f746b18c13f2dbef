// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "qgz3/qgz3.hpp"

using namespace qgz3;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

// 1. dimension formula equals brute-force enumeration
void criterion_dimension() {
    bool ok = true;
    int labels = 0;
    for (int d1 = 1; d1 <= 7; ++d1)
        for (int d2 = 1; d2 <= 7; ++d2) {
            RepLabel L(d1 + d2, d2, 0);
            ++labels;
            long long brute = 0;
            for (int p12 = L.p23 + 1; p12 <= L.p13; ++p12)
                for (int p22 = L.p33 + 1; p22 <= L.p23; ++p22)
                    for (int p11 = p22 + 1; p11 <= p12; ++p11) ++brute;
            if (brute != dimension(L)) ok = false;
            if (static_cast<long long>(enumerate_basis(L).size()) != dimension(L)) ok = false;
        }
    report(1, ok, "dimension formula = brute-force count on " + std::to_string(labels) +
                      " labels (exact)");
}

// 2. generic relation residuals < 1e-9
void criterion_generic_relations() {
    QParam q = QParam::generic();
    double worst = 0.0;
    bool ok = true;
    for (const RepLabel& L : {RepLabel(5, 2, 0), RepLabel(6, 3, 0), RepLabel(8, 4, 0)}) {
        VerifyReport r = verify_generic(L, q, 1e-9);
        worst = std::max(worst, r.max_residual());
        ok = ok && r.pass();
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "generic relations on (5,2,0),(6,3,0),(8,4,0): max residual %.2e < 1e-9",
                  worst);
    report(2, ok, buf);
}

// 3. root relations + nilpotency < 1e-8
void criterion_root_relations(const RegularizedRep& r520, const RegularizedRep& r840) {
    double worst = 0.0;
    bool ok = true;
    for (const RegularizedRep* rep : {&r520, &r840}) {
        VerifyReport r = verify_root(*rep, 1e-8);
        worst = std::max(worst, r.max_residual());
        ok = ok && r.pass();
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "root relations and nilpotency on (5,2,0) l=3, (8,4,0) l=5: max residual %.2e < 1e-8",
                  worst);
    report(3, ok, buf);
}

// 4. closed-form regularization = numeric limit, entrywise to 1e-6
void criterion_oracle(const RegularizedRep& r520, const RegularizedRep& r840) {
    double worst = 0.0;
    bool ok = true;
    for (const RegularizedRep* rep : {&r520, &r840}) {
        VerifyReport r = verify_oracle(*rep, {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5}, 1e-6);
        worst = std::max(worst, r.max_residual());
        ok = ok && r.pass();
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "all six generators match the extrapolated mixed limit: max difference %.2e < 1e-6",
                  worst);
    report(4, ok, buf);
}

// 5. casimir: two Jordan blocks with diagonal -1 and coupling magnitude 3
void criterion_casimir(const RegularizedRep& r520) {
    CasimirReport cr = casimir_structure(r520, 1e-8);
    bool ok = cr.blocks.size() == 2;
    for (const auto& b : cr.blocks) {
        ok = ok && b.jordan;
        ok = ok && std::abs(b.diagonal - cplx(-1.0, 0.0)) < 1e-8;
        ok = ok && std::abs(std::abs(b.off_diagonal) - 3.0) < 1e-8;
    }
    ok = ok && cr.scalar_residual < 1e-10 && cr.pass();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "(5,2,0) l=3: %zu Jordan blocks, diagonal -1, coupling magnitude 3; rest scalar to %.1e",
                  cr.blocks.size(), cr.scalar_residual);
    report(5, ok, buf);
}

// 6. teepee census
void criterion_census(const RegularizedRep& r520, const RegularizedRep& r840) {
    const MixedBasis& a = r520.basis;
    const MixedBasis& b = r840.basis;
    bool ok = a.teepee_count == 10 && a.pairs.size() == 2 && a.self_paired.size() == 6 &&
              b.teepee_count == 37 && b.pairs.size() == 11 && b.self_paired.size() == 15;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "teepee census (5,2,0) l=3: %d/%zu/%zu; (8,4,0) l=5: %d/%zu/%zu (want 10/2/6, 37/11/15)",
                  a.teepee_count, a.pairs.size(), a.self_paired.size(), b.teepee_count,
                  b.pairs.size(), b.self_paired.size());
    report(6, ok, buf);
}

// 7. embedded summand sizes and exact decoupling
void criterion_subrep() {
    bool ok = true;
    std::string detail = "subrep/quotient:";
    for (auto [lab, l, sub, quo] :
         {std::tuple{RepLabel(4, 2, 0), 3, 1LL, 7LL}, std::tuple{RepLabel(6, 3, 0), 5, 8LL, 19LL},
          std::tuple{RepLabel(8, 4, 0), 5, 1LL, 63LL}}) {
        RegularizedRep rep = build_regularized(lab, l);
        auto image = subrep_image(rep.basis);
        long long got_sub = static_cast<long long>(image.size());
        long long got_quo = dimension(lab) - got_sub;
        int coupling = coupling_entries(rep, image);
        ok = ok && got_sub == sub && got_quo == quo && coupling == 0;
        detail += " " + lab.str() + " " + std::to_string(got_sub) + "+" + std::to_string(got_quo) +
                  " coupling " + std::to_string(coupling) + ";";
    }
    report(7, ok, detail + " (structural zeros)");
}

// 8. flat case: edge selection and the relabeled cross construction
void criterion_flat() {
    FlatReport fr = flat_analysis(RepLabel(4, 2, 0), 3);
    bool ok = fr.quotient_dim == 7 && fr.quotient_matches_selection &&
              fr.states_on_p12_edge == 5 && fr.states_on_p22_edge == 2 && fr.d0 == 10 &&
              fr.d1 == 1 && fr.hexagon_dim == 7 && fr.hexagon_dim_matches &&
              fr.relabeling_bijective && fr.teepee_is_single_line;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "(4,2,0) l=3 quotient: 7 states on the two edges (5+2); d0-3*d1 = %lld-3*%lld = %lld",
                  fr.d0, fr.d1, fr.hexagon_dim);
    report(8, ok, buf);
}

// 9. slice characters match the two-spin tensor product, generic and root
void criterion_slices() {
    bool ok = true;
    int slices = 0;
    for (auto [lab, l] : {std::pair{RepLabel(4, 2, 0), 3}, std::pair{RepLabel(6, 3, 0), 5}}) {
        MixedBasis mb = build_mixed_basis(lab, l);
        for (int y : occurring_y_values(lab)) {
            SliceCheck generic = sl2_slice_check(lab, y);
            SliceCheck root = sl2_slice_check(lab.with_l(l), y, &mb);
            ok = ok && generic.match && root.match && generic.spins_valid;
            ++slices;
        }
    }
    report(9, ok, "character multiset equality on all " + std::to_string(slices) +
                      " slices of (4,2,0) and (6,3,0), generic and root (exact)");
}

// 10. boundary audit across all labels with both weights below l
void criterion_boundary() {
    bool ok = true;
    int labels = 0, crossing = 0;
    for (int l : {3, 5}) {
        for (int a = 0; a < l; ++a) {
            for (int b = 0; b < l; ++b) {
                RepLabel L(a + b + 2, b + 1, 0, l);
                RegularizedRep rep = build_regularized(L, l);
                BoundaryReport br = boundary_audit(rep);
                ok = ok && br.pass();
                ++labels;
                crossing += br.crossing_entries;
            }
        }
    }
    report(10, ok, "zero non-finite entries over " + std::to_string(labels) +
                       " labels (l in {3,5}); " + std::to_string(crossing) +
                       " boundary-crossing entries audited");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_dimension();
    criterion_generic_relations();
    RegularizedRep r520 = build_regularized(RepLabel(5, 2, 0), 3);
    RegularizedRep r840 = build_regularized(RepLabel(8, 4, 0), 5);
    criterion_root_relations(r520, r840);
    criterion_oracle(r520, r840);
    criterion_casimir(r520);
    criterion_census(r520, r840);
    criterion_subrep();
    criterion_flat();
    criterion_slices();
    criterion_boundary();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
