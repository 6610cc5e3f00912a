#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperlab/io.hpp"

namespace py = pybind11;
using namespace hyperlab;

namespace {

Mode mode_arg(const std::string& m) {
    if (m == "exact") return Mode::Exact;
    if (m == "float") return Mode::Float;
    throw ConfigError("mode must be 'exact' or 'float'");
}

Field field_arg(const std::string& f) {
    if (f == "R" || f == "r") return Field::R;
    if (f == "C" || f == "c") return Field::C;
    throw ConfigError("field must be 'R' or 'C'");
}

Window window_arg(const std::vector<std::array<double, 2>>& axes) {
    return Window(std::vector<std::array<double, 2>>(axes));
}

Eigen::MatrixXd sample_points(const PointSample& s) {
    Eigen::MatrixXd out(static_cast<long>(s.size()), s.rdim);
    for (size_t i = 0; i < s.size(); ++i) out.row(static_cast<long>(i)) = s.pt(i);
    return out;
}

Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> sample_meta(const PointSample& s) {
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> out(static_cast<long>(s.size()),
                                                                 s.meta_cols);
    for (size_t i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.meta_cols; ++j) out(static_cast<long>(i), j) = s.meta_row(i)[j];
    return out;
}

MatrixSemigroup semigroup_arg(const std::vector<Eigen::MatrixXcd>& gens, const std::string& field) {
    const Field f = field_arg(field);
    std::vector<Mat> mats;
    for (const auto& g : gens) {
        if (f == Field::R) {
            if (g.imag().cwiseAbs().maxCoeff() != 0.0)
                throw ConfigError("real generators must have zero imaginary part");
            mats.push_back(Mat::real(g.real()));
        } else {
            mats.push_back(Mat::complex(g));
        }
    }
    return make_semigroup(mats);
}

py::dict report_dict(const CoverageReport& r) {
    py::dict d;
    d["coverage"] = r.coverage;
    d["epsilon"] = r.epsilon;
    d["budget"] = r.budget;
    d["schedule"] = r.schedule;
    d["trend"] = r.trend;
    d["verdict"] = std::string(verdict_name(r.verdict));
    return d;
}

py::dict probe_dict(const ProbeResult& pr) {
    py::dict d;
    d["verdict"] = std::string(verdict_name(pr.verdict));
    d["report"] = report_dict(pr.report);
    d["candidate"] = Eigen::VectorXcd(pr.candidate);
    d["details"] = pr.details.dump();
    return d;
}

QMat qmat_arg(const std::vector<std::vector<std::string>>& rows) {
    QMat m;
    for (const auto& r : rows) {
        QVec row;
        for (const auto& e : r) row.push_back(rat_from_string(e));
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_hyperlab, m) {
    m.doc() = "orbit laboratory for finite-dimensional linear dynamics";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<MathError>(m, "MathError");

    py::class_<Window>(m, "Window")
        .def(py::init(&window_arg), py::arg("axes"))
        .def_static("cube", &Window::cube, py::arg("dim"), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("dim", [](const Window& w) { return w.dim(); })
        .def("contains",
             [](const Window& w, const Eigen::VectorXd& p) { return w.contains(p); });

    py::class_<PointSample>(m, "PointSample")
        .def_property_readonly("field",
                               [](const PointSample& s) { return std::string(field_name(s.field)); })
        .def_property_readonly("meta_names", [](const PointSample& s) { return s.meta_names; })
        .def_property_readonly("params", [](const PointSample& s) { return s.params.dump(); })
        .def("__len__", [](const PointSample& s) { return s.size(); })
        .def("points", &sample_points, "points as a (count, rdim) array")
        .def("meta", &sample_meta, "integer provenance rows, one per point")
        .def("to_csv", [](const PointSample& s) { return sample_to_csv(s); });

    py::class_<Subspace>(m, "Subspace")
        .def_property_readonly("n", [](const Subspace& M) { return M.n; })
        .def_property_readonly("r", [](const Subspace& M) { return M.r; })
        .def_property_readonly("Q", [](const Subspace& M) { return M.Q; })
        .def("coords",
             [](const Subspace& M, const Eigen::VectorXd& p) { return M.coords(p); });

    py::class_<IrrationalBasis>(m, "IrrationalBasis")
        .def_property_readonly("n", [](const IrrationalBasis& b) { return b.n; })
        .def_property_readonly("primes", [](const IrrationalBasis& b) { return b.primes; })
        .def("alpha", [](const IrrationalBasis& b) { return b.alpha(); });

    m.def("make_alpha", &make_alpha, py::arg("n"), py::arg("primes"));
    m.def("make_mu", &make_mu, py::arg("alpha"), py::arg("beta"));
    m.def(
        "sample_lattice_remainders",
        [](const IrrationalBasis& b, long long S, const Window& w, const std::string& mode) {
            return sample_A_alpha(b, S, w, mode_arg(mode));
        },
        py::arg("basis"), py::arg("S"), py::arg("window"), py::arg("mode") = "exact");
    m.def(
        "coverage",
        [](const PointSample& s, const Window& w, double eps) {
            GridCover g = coverage(s, w, eps);
            py::dict d;
            d["coverage"] = g.coverage();
            d["hits"] = g.hits();
            d["cells"] = g.total_cells();
            return d;
        },
        py::arg("sample"), py::arg("window"), py::arg("eps"));

    m.def(
        "subspace_from_basis",
        [](const std::vector<Eigen::VectorXd>& rows) { return subspace_from_basis(rows); },
        py::arg("vectors"));
    m.def(
        "subspace_trace",
        [](const PointSample& s, const Subspace& M, double tol, const std::string& mode) {
            return subspace_trace(s, M, tol, mode_arg(mode));
        },
        py::arg("sample"), py::arg("subspace"), py::arg("tol") = 1e-9, py::arg("mode") = "exact");
    m.def("membership_distance", &membership_distance, py::arg("point"), py::arg("subspace"));

    py::class_<MatrixSemigroup>(m, "MatrixSemigroup")
        .def_property_readonly("n", [](const MatrixSemigroup& G) { return G.n; })
        .def_property_readonly("field",
                               [](const MatrixSemigroup& G) { return std::string(field_name(G.field)); })
        .def_property_readonly("abelian", [](const MatrixSemigroup& G) { return G.abelian; });

    m.def("make_semigroup", &semigroup_arg, py::arg("generators"), py::arg("field") = "C");
    m.def(
        "orbit",
        [](const MatrixSemigroup& G, const Eigen::VectorXcd& v, long long K, const Window& w,
           const std::string& mode) { return orbit(G, v, K, w, mode_arg(mode)); },
        py::arg("semigroup"), py::arg("v"), py::arg("K"), py::arg("window"),
        py::arg("mode") = "float");
    m.def(
        "normal_form",
        [](const std::vector<Eigen::MatrixXcd>& gens, const std::string& field) {
            MatrixSemigroup G = semigroup_arg(gens, field);
            NormalForm nf = normal_form(G.generators, G.field);
            py::dict d;
            d["P"] = nf.P.a;
            d["residual"] = nf.residual;
            d["eta_t"] = nf.eta.t;
            d["eta_b"] = nf.eta.b;
            std::vector<Eigen::MatrixXcd> conj;
            for (const auto& c : nf.conjugated) conj.push_back(c.a);
            d["conjugated"] = conj;
            return d;
        },
        py::arg("generators"), py::arg("field") = "C");
    m.def(
        "hypercyclicity_probe",
        [](const MatrixSemigroup& G, const Window& w, double eps,
           const std::vector<long long>& budgets) {
            return probe_dict(hypercyclicity_probe(G, w, eps, budgets));
        },
        py::arg("semigroup"), py::arg("window"), py::arg("eps"), py::arg("budgets"));
    m.def("canonical_invariant_subspace", &canonical_invariant_subspace, py::arg("semigroup"));
    m.def(
        "subspace_hypercyclicity_probe",
        [](const MatrixSemigroup& G, const Subspace& M, const Window& mw, double eps,
           const std::vector<long long>& budgets) {
            return probe_dict(subspace_hypercyclicity_probe(G, M, mw, eps, budgets));
        },
        py::arg("semigroup"), py::arg("subspace"), py::arg("m_window"), py::arg("eps"),
        py::arg("budgets"));

    py::class_<GTheta>(m, "GTheta")
        .def_property_readonly("p", [](const GTheta& g) { return g.p; })
        .def_property_readonly("q", [](const GTheta& g) { return g.q; });
    m.def(
        "make_G_theta",
        [](long p, long q, const std::string& theta) {
            return make_G_theta(p, q, parse_surd_token(theta));
        },
        py::arg("p"), py::arg("q"), py::arg("theta"));
    m.def("g_theta_orbit", &g_theta_orbit, py::arg("g"), py::arg("K"), py::arg("window"));
    m.def(
        "line_trace_G_theta",
        [](const GTheta& g, long long bound, double reach) {
            GThetaLineTrace t = line_trace_G_theta(g, bound, reach);
            std::vector<double> vals;
            for (const auto& r : t.values) vals.push_back(r.get_d());
            py::dict d;
            d["values"] = vals;
            d["sin_guard"] = t.sin_guard;
            return d;
        },
        py::arg("g"), py::arg("bound"), py::arg("reach"));

    py::class_<Javaheri>(m, "Javaheri")
        .def_property_readonly("n", [](const Javaheri& j) { return j.n; })
        .def_property_readonly("spectral_condition_evidence",
                               [](const Javaheri& j) { return j.spectral_condition_evidence; });
    m.def(
        "make_triangular_pair",
        [](const std::vector<std::vector<std::string>>& A,
           const std::vector<std::vector<std::string>>& B) {
            return make_javaheri(qmat_arg(A), qmat_arg(B));
        },
        py::arg("A"), py::arg("B"));
    m.def(
        "triangular_pair_orbit",
        [](const Javaheri& J, const std::vector<std::string>& v, int max_len) {
            QVec q;
            for (const auto& e : v) q.push_back(rat_from_string(e));
            return javaheri_orbit(J, q, max_len);
        },
        py::arg("pair"), py::arg("v"), py::arg("max_len"));

    m.attr("__version__") = kToolVersion;
}
