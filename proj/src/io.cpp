#include "hyperlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperlab {

const char* kReportSchema = "hyperlab-report/1";
const char* kToolVersion = "0.1.0";

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::complex<double> entry_to_complex(const json& e, Field f) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        std::complex<double> z(e[0].get<double>(), e[1].get<double>());
        if (f == Field::R && z.imag() != 0.0)
            throw ConfigError("real matrix entry has an imaginary part");
        return z;
    }
    throw ConfigError("matrix entry must be a number or an [re, im] pair");
}

Eigen::MatrixXcd entries_to_matrix(const json& rows, Field f) {
    if (!rows.is_array() || rows.empty()) throw ConfigError("matrix entries must be a 2-d array");
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            throw ConfigError("matrix entries must be square");
        for (int j = 0; j < n; ++j) a(i, j) = entry_to_complex(rows[i][j], f);
    }
    return a;
}

json matrix_to_entries(const Mat& A) {
    json rows = json::array();
    for (int i = 0; i < A.n(); ++i) {
        json r = json::array();
        for (int j = 0; j < A.n(); ++j) {
            if (A.field == Field::R)
                r.push_back(A.a(i, j).real());
            else
                r.push_back(json::array({A.a(i, j).real(), A.a(i, j).imag()}));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

Field field_from_json(const json& j) {
    const std::string f = j.get<std::string>();
    if (f == "R") return Field::R;
    if (f == "C") return Field::C;
    throw ConfigError("field must be \"R\" or \"C\"");
}

Surd surd_entry(const json& e) {
    if (e.is_string()) return parse_surd_token(e.get<std::string>());
    if (e.is_number_integer()) return Surd(e.get<long>());
    if (e.is_number()) return Surd(Rat(e.get<double>()));
    throw ConfigError("exact entry must be a number or a surd string");
}

Mode mode_from_json(const json& j) {
    const std::string m = j.value("mode", "exact");
    if (m == "exact") return Mode::Exact;
    if (m == "float") return Mode::Float;
    throw ConfigError("mode must be \"exact\" or \"float\"");
}

}  // namespace

json mat_to_json(const Mat& A) {
    return json{{"field", field_name(A.field)}, {"n", A.n()}, {"entries", matrix_to_entries(A)}};
}

Mat mat_from_json(const json& j) {
    const Field f = field_from_json(j.at("field"));
    return Mat(f, entries_to_matrix(j.at("entries"), f));
}

json window_to_json(const Window& w) {
    json axes = json::array();
    for (auto& [lo, hi] : w.ax) axes.push_back({lo, hi});
    return json{{"axes", std::move(axes)}};
}

Window window_from_json(const json& j) {
    const json& axes = j.is_array() ? j : j.at("axes");
    std::vector<std::array<double, 2>> ax;
    for (const auto& a : axes) {
        if (!a.is_array() || a.size() != 2) throw ConfigError("window axis must be [lo, hi]");
        ax.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return Window(std::move(ax));
}

json cwindow_to_json(const CWindow& w) {
    if (w.kind == CWindow::Box) return json{{"kind", "box"}, {"axes", window_to_json(w.box)["axes"]}};
    return json{{"kind", "polydisc"}, {"radii", w.radii}};
}

CWindow cwindow_from_json(const json& j) {
    if (j.is_array()) return CWindow::from_box(window_from_json(j));
    const std::string kind = j.value("kind", "box");
    if (kind == "box") return CWindow::from_box(window_from_json(j));
    if (kind == "polydisc") return CWindow::polydisc(j.at("radii").get<std::vector<double>>());
    throw ConfigError("complex window kind must be \"box\" or \"polydisc\"");
}

json partition_to_json(const Partition& eta) {
    return json{{"field", field_name(eta.field)}, {"t", eta.t}, {"b", eta.b}};
}

Partition partition_from_json(const json& j) {
    Partition eta;
    eta.field = field_from_json(j.at("field"));
    eta.t = j.value("t", std::vector<int>{});
    eta.b = j.value("b", std::vector<int>{});
    eta.validate();
    return eta;
}

json normal_form_to_json(const NormalForm& nf) {
    json be = json::array();
    for (const auto& row : nf.block_eigs) {
        json r = json::array();
        for (auto z : row) r.push_back(json::array({z.real(), z.imag()}));
        be.push_back(std::move(r));
    }
    return json{{"eta", partition_to_json(nf.eta)},
                {"P", mat_to_json(nf.P)},
                {"P_inverse", mat_to_json(nf.P_inverse)},
                {"residual", nf.residual},
                {"block_eigs", std::move(be)}};
}

json report_to_json(const CoverageReport& r) {
    return json{{"coverage", r.coverage},
                {"epsilon", r.epsilon},
                {"budget", r.budget},
                {"schedule", r.schedule},
                {"trend", r.trend},
                {"verdict", verdict_name(r.verdict)},
                {"thresholds",
                 {{"dense", r.thresholds.dense},
                  {"sparse", r.thresholds.sparse},
                  {"plateau", r.thresholds.plateau}}}};
}

json sample_to_json(const PointSample& s, size_t max_points) {
    const size_t count = std::min(s.size(), max_points);
    json meta = json::array(), pts = json::array();
    for (size_t i = 0; i < count; ++i) {
        meta.push_back(s.meta_row(i));
        json row = json::array();
        for (int c = 0; c < s.rdim; ++c) row.push_back(s.pt(i)[c]);
        pts.push_back(std::move(row));
    }
    json out{{"field", field_name(s.field)}, {"rdim", s.rdim},
             {"size", s.size()},            {"meta_names", s.meta_names},
             {"meta", std::move(meta)},     {"points", std::move(pts)},
             {"params", s.params}};
    if (s.aux_dim > 0) {
        json aux = json::array();
        for (size_t i = 0; i < count; ++i) {
            json row = json::array();
            for (int c = 0; c < s.aux_dim; ++c) row.push_back(s.aux_pt(i)[c]);
            aux.push_back(std::move(row));
        }
        out["aux_dim"] = s.aux_dim;
        out["aux"] = std::move(aux);
    }
    if (s.has_exact()) {
        json ex = json::array();
        for (size_t i = 0; i < count; ++i) {
            json row = json::array();
            for (const auto& e : s.exact[i]) row.push_back(e.str());
            ex.push_back(std::move(row));
        }
        out["exact"] = std::move(ex);
    }
    if (count < s.size()) out["truncated_to"] = count;
    return out;
}

std::string sample_to_csv(const PointSample& s) {
    std::ostringstream o;
    for (int i = 0; i < s.meta_cols; ++i) {
        if (i) o << ',';
        o << s.meta_names[i];
    }
    for (int i = 0; i < s.rdim; ++i) {
        if (i || s.meta_cols) o << ',';
        o << 'x' << i + 1;
    }
    for (int i = 0; i < s.aux_dim; ++i) o << ",m" << i + 1;
    o << '\n';
    for (size_t r = 0; r < s.size(); ++r) {
        for (int i = 0; i < s.meta_cols; ++i) {
            if (i) o << ',';
            o << s.metadata[r * s.meta_cols + i];
        }
        for (int i = 0; i < s.rdim; ++i) {
            if (i || s.meta_cols) o << ',';
            o << fmt_double(s.pt(r)[i]);
        }
        for (int i = 0; i < s.aux_dim; ++i) o << ',' << fmt_double(s.aux_pt(r)[i]);
        o << '\n';
    }
    return o.str();
}

PointSample sample_from_descriptor(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "A_alpha") {
        auto primes = j.at("alpha_primes").get<std::vector<long>>();
        IrrationalBasis a = make_alpha(static_cast<int>(primes.size()), primes);
        return sample_A_alpha(a, j.at("S").get<long long>(), window_from_json(j.at("window")),
                              mode_from_json(j));
    }
    if (kind == "A_alpha_beta") {
        auto ap = j.at("alpha_primes").get<std::vector<long>>();
        auto bp = j.at("beta_primes").get<std::vector<long>>();
        IrrationalBasis a = make_alpha(static_cast<int>(ap.size()), ap);
        IrrationalBasis b = make_alpha(static_cast<int>(bp.size()), bp);
        PointSample s = sample_A_alpha_beta(a, b, j.at("S").get<long long>(),
                                            cwindow_from_json(j.at("window")), mode_from_json(j));
        if (j.value("apply_phi", false)) return phi_sample(s);
        return s;
    }
    if (kind == "A2") {
        RadialGrid rg{j.value("radial_step", 0.05), j.value("radial_count", 20)};
        return sample_A2(j.at("th1").get<double>(), j.at("th2").get<double>(), rg,
                         j.at("S").get<long long>(), window_from_json(j.at("window")));
    }
    if (kind == "B") {
        RadialGrid rg{j.value("radial_step", 0.05), j.value("radial_count", 20)};
        AngleGrid ag{j.value("angle_denom", 64), j.value("planted", 16)};
        return sample_B(rg, ag);
    }
    if (kind == "Z_module") {
        SMat gens;
        for (const auto& row : j.at("generators")) {
            SVec g;
            for (const auto& e : row) g.push_back(surd_entry(e));
            gens.push_back(std::move(g));
        }
        return sample_Z_module(gens, j.at("bound").get<long>(),
                               window_from_json(j.at("window")));
    }
    if (kind == "G_theta") {
        GTheta g = make_G_theta(j.at("p").get<long>(), j.at("q").get<long>(),
                                surd_entry(j.at("theta")));
        return g_theta_orbit(g, j.at("K").get<long long>(), window_from_json(j.at("window")));
    }
    throw ConfigError("unknown point-set kind: " + kind);
}

MatrixSemigroup semigroup_from_json(const json& j) {
    const Field f = field_from_json(j.at("field"));
    std::vector<Mat> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back(g.is_object() ? mat_from_json(g) : Mat(f, entries_to_matrix(g, f)));
    std::vector<QMat> exact;
    if (j.contains("exact_generators")) {
        for (const auto& g : j.at("exact_generators")) {
            QMat m;
            for (const auto& row : g) {
                QVec r;
                for (const auto& e : row) {
                    if (e.is_string())
                        r.push_back(rat_from_string(e.get<std::string>()));
                    else if (e.is_number_integer())
                        r.push_back(Rat(e.get<long>()));
                    else
                        r.push_back(Rat(e.get<double>()));
                }
                m.push_back(std::move(r));
            }
            exact.push_back(std::move(m));
        }
    }
    if (j.value("abelian", true))
        return exact.empty() ? make_semigroup(std::move(gens))
                             : make_semigroup(std::move(gens), std::move(exact));
    MatrixSemigroup G;
    G.field = f;
    G.n = gens.empty() ? 0 : gens[0].n();
    if (gens.empty()) throw ConfigError("semigroup needs at least one generator");
    for (const auto& g : gens)
        if (g.n() != G.n) throw DimensionMismatch("semigroup generator sizes differ");
    G.abelian = false;
    G.generators = std::move(gens);
    G.exact = std::move(exact);
    return G;
}

json semigroup_to_json(const MatrixSemigroup& G) {
    json gens = json::array();
    for (const auto& g : G.generators) gens.push_back(matrix_to_entries(g));
    json out{{"field", field_name(G.field)}, {"abelian", G.abelian}, {"generators", std::move(gens)}};
    if (G.has_exact()) {
        json ex = json::array();
        for (const auto& m : G.exact) {
            json rows = json::array();
            for (const auto& row : m) {
                json r = json::array();
                for (const auto& e : row) r.push_back(rat_to_string(e));
                rows.push_back(std::move(r));
            }
            ex.push_back(std::move(rows));
        }
        out["exact_generators"] = std::move(ex);
    }
    return out;
}

json report_envelope(json config, json result) {
    return json{{"schema", kReportSchema},
                {"tool", {{"name", "hyperlab"}, {"version", kToolVersion}}},
                {"config", std::move(config)},
                {"result", std::move(result)}};
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open for writing: " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f.flush()) throw ConfigError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("cannot move into place: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read: " + path);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

}  // namespace hyperlab
