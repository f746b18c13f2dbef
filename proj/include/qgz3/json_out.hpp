#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "qgz3/structure.hpp"

namespace qgz3 {

inline constexpr const char* kSchemaVersion = "qgz3/1";

/// Minimal deterministic JSON emitter: fixed key order, floating-point
/// numbers with 17 significant digits, complex numbers as [re, im] pairs.
/// Byte-stable across runs for identical inputs.
class JsonWriter {
public:
    std::string take() { return std::move(out_); }

    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const char* name) {
        comma();
        out_ += '"';
        out_ += name;
        out_ += "\":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(const std::string& s) {
        comma();
        out_ += '"';
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out_ += '\\';
            out_ += ch;
        }
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& value(bool b) {
        comma();
        out_ += b ? "true" : "false";
        return *this;
    }
    JsonWriter& value(long long v) {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(double v) {
        comma();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(cplx z) {
        begin_array();
        value(z.real());
        value(z.imag());
        return end_array();
    }
    JsonWriter& null() {
        comma();
        out_ += "null";
        return *this;
    }

private:
    JsonWriter& open(char ch) {
        comma();
        out_ += ch;
        first_.push_back(true);
        return *this;
    }
    JsonWriter& close(char ch) {
        out_ += ch;
        first_.pop_back();
        return *this;
    }
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }

    std::string out_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

namespace jsondetail {

inline void label_fields(JsonWriter& w, const RepLabel& label) {
    w.key("p13").value(label.p13);
    w.key("p23").value(label.p23);
    w.key("p33").value(label.p33);
}

inline void basis_array(JsonWriter& w, const std::vector<BasisState>& states) {
    w.begin_array();
    for (const auto& s : states) {
        w.begin_array();
        w.value(s.pattern.p12).value(s.pattern.p22).value(s.pattern.p11).value(s.primed);
        w.end_array();
    }
    w.end_array();
}

inline void checks_array(JsonWriter& w, const VerifyReport& report) {
    w.begin_array();
    for (const auto& c : report.checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("residual").value(c.residual);
        w.key("tolerance").value(c.tolerance);
        w.key("pass").value(c.pass());
        w.end_object();
    }
    w.end_array();
}

}  // namespace jsondetail

/// One generator (or Casimir) matrix with its basis, sorted entries and
/// [re, im] coefficients.
inline void write_operator(JsonWriter& w, const SparseOperator& op,
                           const std::vector<BasisState>& states, const char* mode, int l, int m) {
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("operator");
    w.key("generator").value(gen_name(op.gen));
    w.key("mode").value(mode);
    jsondetail::label_fields(w, op.label);
    w.key("l").value(l);
    w.key("m").value(m);
    w.key("dim").value(op.dim);
    w.key("basis");
    jsondetail::basis_array(w, states);
    w.key("entries").begin_array();
    for (const auto& [rc, v] : op.entries) {
        w.begin_array();
        w.value(rc.first).value(rc.second).value(v);
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

inline void write_verify(JsonWriter& w, const VerifyReport& report, const RepLabel& label,
                         const char* mode, int l, int m, const std::vector<std::string>& notes) {
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("verify");
    w.key("mode").value(mode);
    jsondetail::label_fields(w, label);
    w.key("l").value(l);
    w.key("m").value(m);
    w.key("checks");
    jsondetail::checks_array(w, report);
    w.key("notes").begin_array();
    for (const auto& n : notes) w.value(n);
    w.end_array();
    w.key("pass").value(report.pass());
    w.end_object();
}

inline void write_structure(JsonWriter& w, const StructureReport& r) {
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("structure");
    jsondetail::label_fields(w, r.label);
    w.key("l").value(r.l);
    w.key("m").value(r.m);
    w.key("dimension").value(r.dim);
    if (r.l != 0) {
        w.key("integrable").value(r.integrable);
        w.key("classification").value(classification_name(r.cls));
        w.key("teepee").begin_object();
        w.key("states").value(r.teepee);
        w.key("pairs").value(r.pair_count);
        w.key("self_paired").value(r.self_paired);
        w.end_object();
        w.key("subrep_dimension").value(r.subrep_dim);
        w.key("quotient_dimension").value(r.quotient_dim);
        w.key("coupling_entries").value(r.coupling);
    }
    w.key("slices").begin_array();
    for (const auto& s : r.slices) {
        w.begin_object();
        w.key("y").value(s.y);
        w.key("j1").value(s.j1);
        w.key("j2").value(s.j2);
        w.key("spins_valid").value(s.spins_valid);
        w.key("match").value(s.match);
        w.key("family_dims").begin_array();
        for (int d : s.family_dims) w.value(d);
        w.end_array();
        w.key("paired_widths").begin_array();
        for (int d : s.paired_widths) w.value(d);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("slices_all_match").value(r.slices_all_match);
    if (r.l != 0) {
        w.key("casimir").begin_object();
        w.key("pass").value(r.casimir_pass);
        w.key("scalar_residual").value(r.casimir_scalar_residual);
        w.key("blocks").begin_array();
        for (const auto& b : r.casimir_blocks) {
            w.begin_object();
            w.key("wide").value(b.wide_index);
            w.key("narrow").value(b.narrow_index);
            w.key("p11").value(b.p11);
            w.key("width").value(b.width);
            w.key("diagonal").value(b.diagonal);
            w.key("off_diagonal").value(b.off_diagonal);
            w.key("coupling_from_wide").value(b.coupling_from_wide);
            w.key("phase").value(b.phase);
            w.key("jordan").value(b.jordan);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        w.key("pair_gauge").begin_array();
        for (const cplx& p : r.pair_gauge) w.value(p);
        w.end_array();
        w.key("flat");
        if (r.flat) {
            const FlatReport& f = *r.flat;
            w.begin_object();
            w.key("rep_itself_flat").value(f.rep_itself_flat);
            w.key("teepee_is_single_line").value(f.teepee_is_single_line);
            w.key("teepee_line_points").value(f.teepee_line_points);
            w.key("quotient_dimension").value(f.quotient_dim);
            w.key("quotient_matches_selection").value(f.quotient_matches_selection);
            w.key("states_on_p12_edge").value(f.states_on_p12_edge);
            w.key("states_on_p22_edge").value(f.states_on_p22_edge);
            w.key("multiplicities_at_most_one").value(f.multiplicities_at_most_one);
            w.key("d0").value(f.d0);
            w.key("d1").value(f.d1);
            w.key("hexagon_dimension").value(f.hexagon_dim);
            w.key("hexagon_dimension_matches").value(f.hexagon_dim_matches);
            w.key("relabeling_bijective").value(f.relabeling_bijective);
            w.end_object();
        } else {
            w.null();
        }
        w.key("max_characterization");
        if (r.max_char) {
            const MaxCharReport& m = *r.max_char;
            w.begin_object();
            w.key("image_max").value(m.image_max);
            w.key("quotient_min").value(m.quotient_min);
            w.key("image_is_low_side").value(m.image_is_low_side);
            w.key("image_is_high_side").value(m.image_is_high_side);
            w.key("unique_direction").value(m.unique_direction);
            w.end_object();
        } else {
            w.null();
        }
    }
    w.end_object();
}

/// Per-state plot rows reproducing the pyramid/teepee geometry as data.
struct PlotRow {
    int x, y, z;
    std::string cls;
};

inline std::vector<PlotRow> plot_rows(const RepLabel& label, int l) {
    std::vector<PlotRow> rows;
    if (l == 0) {
        for (const GZPattern& p : enumerate_basis(label)) {
            Coordinates c = coordinates(p);
            rows.push_back({c.x, c.y, c.z, "regular"});
        }
        return rows;
    }
    MixedBasis mb = build_mixed_basis(label, l);
    std::set<int> image;
    if (classify(mb.label, l) == Classification::SplitsInTwo)
        for (int i : subrep_image(mb)) image.insert(i);
    for (int i = 0; i < mb.size(); ++i) {
        const GZPattern& p = mb.gz.patterns()[size_t(i)];
        Coordinates c = coordinates(p);
        std::string cls = "regular";
        if (mb.primed[size_t(i)])
            cls = "primed";
        else if (in_teepee(p, l) && p.p12 - p.p22 == l)
            cls = "teepee-selfpaired";
        else if (image.count(i))
            cls = "subrep-image";
        rows.push_back({c.x, c.y, c.z, cls});
    }
    return rows;
}

inline void write_plotdata(JsonWriter& w, const RepLabel& label, int l,
                           const std::vector<PlotRow>& rows) {
    w.begin_object();
    w.key("schema").value(kSchemaVersion);
    w.key("kind").value("plotdata");
    jsondetail::label_fields(w, label);
    w.key("l").value(l);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
        w.begin_array();
        w.value(r.x).value(r.y).value(r.z).value(r.cls);
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

inline std::string plotdata_csv(const std::vector<PlotRow>& rows) {
    std::string out = "x,y,z,class\n";
    for (const auto& r : rows) {
        out += std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.z) + "," +
               r.cls + "\n";
    }
    return out;
}

}  // namespace qgz3
