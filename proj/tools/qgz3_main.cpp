// Command-line front end: build representations, run verification suites,
// produce structure reports, and export machine-readable data including the
// pyramid/teepee plot coordinates.
//
// Exit codes: 0 success (all requested checks pass), 1 verification failure,
// 2 invalid arguments, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgz3/qgz3.hpp"

namespace {

using namespace qgz3;

struct RunConfig {
    std::vector<int> rep;
    int l = 0;
    int m = 1;
    std::string mode = "auto";  // auto | generic | root
    double angle = QParam::default_generic_angle();
    std::vector<double> eps = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    std::string out_path;
    std::string format = "json";  // json | csv (csv only for plotdata)

    bool root_mode() const { return l != 0; }
};

RepLabel make_label(const RunConfig& cfg) {
    if (cfg.rep.size() != 3) throw std::invalid_argument("--rep expects three integers p13,p23,p33");
    return RepLabel(cfg.rep[0], cfg.rep[1], cfg.rep[2], cfg.l);
}

void validate(RunConfig& cfg) {
    if (cfg.mode == "root" && cfg.l == 0)
        throw std::invalid_argument("--mode root requires --l");
    if (cfg.mode == "generic" && cfg.l != 0)
        throw std::invalid_argument("--mode generic conflicts with --l");
    if (cfg.mode == "auto") cfg.mode = cfg.l != 0 ? "root" : "generic";
    make_label(cfg);  // throws on bad label or bad l
    if (cfg.l != 0) QParam::root(cfg.l, cfg.m);
}

/// Atomic file write: temp file in place, then rename.
void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        if (!payload.empty() && payload.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::string tmp = cfg.out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::ios_base::failure("cannot open " + tmp);
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!f) throw std::ios_base::failure("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), cfg.out_path.c_str()) != 0)
        throw std::ios_base::failure("cannot rename into " + cfg.out_path);
}

struct BuiltOperators {
    std::vector<BasisState> states;
    std::vector<SparseOperator> ops;
    const char* mode;
};

BuiltOperators build_all(const RunConfig& cfg) {
    RepLabel label = make_label(cfg);
    BuiltOperators out;
    if (cfg.root_mode()) {
        RegularizedRep rep = build_regularized(label, cfg.l, cfg.m);
        out.states = rep.basis.states();
        out.ops = {rep.h1, rep.h2, rep.e1, rep.f1, rep.e2, rep.f2, casimir_regularized(rep)};
        out.mode = "root";
    } else {
        QParam q = QParam::generic(cfg.angle);
        BasisIndex basis(label);
        for (Gen g : {Gen::H1, Gen::H2, Gen::E1, Gen::F1, Gen::E2, Gen::F2})
            out.ops.push_back(build_operator(g, basis, q));
        out.ops.push_back(casimir_sl2(label, q));
        for (const auto& p : basis.patterns()) out.states.push_back({p, false});
        out.mode = "generic";
    }
    return out;
}

std::string operators_payload(const RunConfig& cfg) {
    BuiltOperators built = build_all(cfg);
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("build");
    w.key("mode").value(built.mode);
    w.key("operators").begin_array();
    for (const auto& op : built.ops) write_operator(w, op, built.states, built.mode, cfg.l, cfg.m);
    w.end_array();
    w.end_object();
    return w.take();
}

VerifyReport run_verification(const RunConfig& cfg, std::vector<std::string>* notes) {
    RepLabel label = make_label(cfg);
    if (!cfg.root_mode()) return verify_generic(label, QParam::generic(cfg.angle));
    RegularizedRep rep = build_regularized(label, cfg.l, cfg.m);
    VerifyReport report = verify_root(rep);
    VerifyReport oracle = verify_oracle(rep, cfg.eps);
    report.checks.insert(report.checks.end(), oracle.checks.begin(), oracle.checks.end());
    CasimirReport cas = casimir_structure(rep);
    report.checks.insert(report.checks.end(), cas.checks.checks.begin(), cas.checks.checks.end());
    BoundaryReport br = boundary_audit(rep);
    report.checks.push_back({"boundary_non_finite", double(br.non_finite_entries), 0.5});
    report.checks.push_back({"boundary_factor_failures", double(br.factor_failures), 0.5});
    if (notes) *notes = rep.notes;
    return report;
}

std::string verify_payload(const RunConfig& cfg, bool* pass) {
    std::vector<std::string> notes;
    VerifyReport report = run_verification(cfg, &notes);
    *pass = report.pass();
    JsonWriter w;
    write_verify(w, report, make_label(cfg), cfg.root_mode() ? "root" : "generic", cfg.l, cfg.m, notes);
    return w.take();
}

std::string structure_payload(const RunConfig& cfg) {
    StructureReport r = analyze(make_label(cfg), cfg.l, cfg.m);
    JsonWriter w;
    write_structure(w, r);
    return w.take();
}

std::string plotdata_payload(const RunConfig& cfg) {
    RepLabel label = make_label(cfg);
    auto rows = plot_rows(label, cfg.l);
    if (cfg.format == "csv") return plotdata_csv(rows);
    JsonWriter w;
    write_plotdata(w, label, cfg.l, rows);
    return w.take();
}

std::string export_payload(const RunConfig& cfg, bool* pass) {
    RepLabel label = make_label(cfg);
    BuiltOperators built = build_all(cfg);
    std::vector<std::string> notes;
    VerifyReport report = run_verification(cfg, &notes);
    *pass = report.pass();
    StructureReport structure = analyze(label, cfg.l, cfg.m);
    auto rows = plot_rows(label, cfg.l);

    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("export");
    w.key("mode").value(built.mode);
    w.key("operators").begin_array();
    for (const auto& op : built.ops) write_operator(w, op, built.states, built.mode, cfg.l, cfg.m);
    w.end_array();
    w.key("verify");
    write_verify(w, report, label, built.mode, cfg.l, cfg.m, notes);
    w.key("structure");
    write_structure(w, structure);
    w.key("plotdata");
    write_plotdata(w, label, cfg.l, rows);
    w.end_object();
    return w.take();
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_format = false) {
    cmd->add_option("--rep", cfg.rep, "representation label p13,p23,p33")
        ->required()
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--l", cfg.l, "odd root order (> 2); enables root mode");
    cmd->add_option("--m", cfg.m, "root selector, coprime to l")->capture_default_str();
    cmd->add_option("--mode", cfg.mode, "generic | root (default: from --l)")
        ->check(CLI::IsMember({"auto", "generic", "root"}));
    cmd->add_option("--angle", cfg.angle, "generic q phase in turns");
    cmd->add_option("--eps", cfg.eps, "limit-oracle schedule, strictly decreasing")->delimiter(',');
    cmd->add_option("--out", cfg.out_path, "output file (default: stdout)");
    if (with_format)
        cmd->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"restricted quantum sl(3) representations in the Gelfand-Zetlin basis"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* c_build = app.add_subcommand("build", "construct and serialize the generator matrices");
    CLI::App* c_verify = app.add_subcommand("verify", "relation, nilpotency and limit-oracle checks");
    CLI::App* c_analyze = app.add_subcommand("analyze", "structure report");
    CLI::App* c_export = app.add_subcommand("export", "full bundle: operators, checks, structure, plot data");
    CLI::App* c_plot = app.add_subcommand("plotdata", "per-state pyramid coordinates and classes");
    for (CLI::App* c : {c_build, c_verify, c_analyze, c_export}) add_common(c, cfg);
    add_common(c_plot, cfg, /*with_format=*/true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        validate(cfg);
        bool pass = true;
        std::string payload;
        if (c_build->parsed()) payload = operators_payload(cfg);
        else if (c_verify->parsed()) payload = verify_payload(cfg, &pass);
        else if (c_analyze->parsed()) payload = structure_payload(cfg);
        else if (c_export->parsed()) payload = export_payload(cfg, &pass);
        else if (c_plot->parsed()) payload = plotdata_payload(cfg);
        emit(cfg, payload);
        return pass ? 0 : 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
