#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlab/errors.hpp"
#include "hyperlab/surd.hpp"

namespace hyperlab {

using json = nlohmann::json;

enum class Field { R, C };

inline const char* field_name(Field f) { return f == Field::R ? "R" : "C"; }

// Axis-aligned box; closed for point-membership tests, half-open for grid
// binning (see grid.hpp).
struct Window {
    std::vector<std::array<double, 2>> ax;  // per-axis [lo, hi], lo < hi

    Window() = default;
    explicit Window(std::vector<std::array<double, 2>> a) : ax(std::move(a)) { validate(); }
    static Window cube(int d, double lo, double hi) {
        Window w;
        w.ax.assign(d, {lo, hi});
        w.validate();
        return w;
    }
    void validate() const {
        if (ax.empty()) throw ConfigError("window has no axes");
        for (auto& [lo, hi] : ax)
            if (!(lo < hi)) throw ConfigError("window axis needs lo < hi");
    }
    int dim() const { return static_cast<int>(ax.size()); }
    bool contains(const Eigen::VectorXd& x) const {
        if (x.size() != dim()) throw DimensionMismatch("window contains");
        for (int i = 0; i < dim(); ++i)
            if (x[i] < ax[i][0] || x[i] > ax[i][1]) return false;
        return true;
    }
    double diameter() const {
        double s = 0;
        for (auto& [lo, hi] : ax) s += (hi - lo) * (hi - lo);
        return std::sqrt(s);
    }
    // Largest possible euclidean norm of an in-window point.
    double reach() const {
        double s = 0;
        for (auto& [lo, hi] : ax) s += std::max(lo * lo, hi * hi);
        return std::sqrt(s);
    }
    // Smallest possible euclidean norm of an in-window point (0 if the box
    // contains the origin).
    double floor_norm() const {
        double s = 0;
        for (auto& [lo, hi] : ax) {
            if (lo > 0) s += lo * lo;
            else if (hi < 0) s += hi * hi;
        }
        return std::sqrt(s);
    }
    double min_axis_length() const {
        double m = ax[0][1] - ax[0][0];
        for (auto& [lo, hi] : ax) m = std::min(m, hi - lo);
        return m;
    }
    bool operator==(const Window& o) const { return ax == o.ax; }
};

// Window over complex coordinates: either a box in the interleaved real
// coordinates (re1, im1, re2, im2, ...) or a polydisc |z_i| <= r_i.
struct CWindow {
    enum Kind { Box, Polydisc } kind = Box;
    Window box;                  // valid when kind == Box (dimension 2n)
    std::vector<double> radii;   // valid when kind == Polydisc

    static CWindow from_box(Window w) { return CWindow{Box, std::move(w), {}}; }
    static CWindow polydisc(std::vector<double> r) {
        for (double v : r)
            if (!(v > 0)) throw ConfigError("polydisc radius must be positive");
        return CWindow{Polydisc, Window{}, std::move(r)};
    }
    int logical_dim() const {
        return kind == Box ? box.dim() / 2 : static_cast<int>(radii.size());
    }
};

// A finite point list with per-point integer generator metadata sufficient
// to reproduce every point bit-exactly, plus the sampler parameters.
// Complex samples are stored in interleaved real coordinates
// (x1, y1, ..., xn, yn), which makes the complex-to-real embedding a pure
// re-tagging.  Coordinates and metadata live in flat buffers so that
// multi-million-point samples stay compact.
struct PointSample {
    Field field = Field::R;
    int rdim = 0;       // stored (realified) dimension
    int meta_cols = 0;
    std::vector<std::string> meta_names;
    std::vector<double> data;          // size * rdim
    std::vector<long long> metadata;   // size * meta_cols
    std::vector<SVec> exact;           // optional exact coordinates
    std::vector<double> aux_data;      // optional extra coordinates
    int aux_dim = 0;                   // (e.g. subspace coordinates)
    json params;                       // sampler descriptor

    size_t size() const { return rdim ? data.size() / rdim : 0; }
    bool has_exact() const { return !exact.empty(); }

    Eigen::Map<const Eigen::VectorXd> pt(size_t i) const {
        return {data.data() + i * rdim, rdim};
    }
    Eigen::Map<const Eigen::VectorXd> aux_pt(size_t i) const {
        return {aux_data.data() + i * aux_dim, aux_dim};
    }
    std::vector<long long> meta_row(size_t i) const {
        auto b = metadata.begin() + static_cast<long>(i) * meta_cols;
        return {b, b + meta_cols};
    }

    void push(const std::vector<long long>& m, const Eigen::VectorXd& p) {
        if (static_cast<int>(m.size()) != meta_cols || p.size() != rdim)
            throw DimensionMismatch("sample push");
        metadata.insert(metadata.end(), m.begin(), m.end());
        data.insert(data.end(), p.data(), p.data() + p.size());
    }
    void push(const std::vector<long long>& m, const Eigen::VectorXd& p, SVec e) {
        push(m, p);
        exact.push_back(std::move(e));
    }
    void push_aux(const Eigen::VectorXd& c) {
        if (c.size() != aux_dim) throw DimensionMismatch("sample aux push");
        aux_data.insert(aux_data.end(), c.data(), c.data() + c.size());
    }
    void append(const PointSample& o) {
        if (o.rdim != rdim || o.field != field || o.meta_cols != meta_cols)
            throw DimensionMismatch("sample append");
        metadata.insert(metadata.end(), o.metadata.begin(), o.metadata.end());
        data.insert(data.end(), o.data.begin(), o.data.end());
        exact.insert(exact.end(), o.exact.begin(), o.exact.end());
        aux_data.insert(aux_data.end(), o.aux_data.begin(), o.aux_data.end());
    }
};

// Square matrix over R or C.  Entries are held as complex doubles in both
// cases (imaginary parts identically zero over R), so field-generic code has
// a single path.
struct Mat {
    Field field = Field::R;
    Eigen::MatrixXcd a;

    Mat() = default;
    Mat(Field f, Eigen::MatrixXcd m) : field(f), a(std::move(m)) {
        if (a.rows() != a.cols()) throw DimensionMismatch("matrix must be square");
    }
    static Mat real(const Eigen::MatrixXd& m) { return Mat(Field::R, m.cast<std::complex<double>>()); }
    static Mat complex(const Eigen::MatrixXcd& m) { return Mat(Field::C, m); }
    static Mat identity(Field f, int n) { return Mat(f, Eigen::MatrixXcd::Identity(n, n)); }
    int n() const { return static_cast<int>(a.rows()); }
    Eigen::MatrixXd re() const { return a.real(); }
};

// Interleaved realification of a complex vector; over R just the real parts.
inline Eigen::VectorXd realify(Field f, const Eigen::VectorXcd& v) {
    if (f == Field::R) return v.real();
    Eigen::VectorXd out(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[2 * i] = v[i].real();
        out[2 * i + 1] = v[i].imag();
    }
    return out;
}

inline Eigen::VectorXcd unrealify(Field f, const Eigen::VectorXd& v) {
    if (f == Field::R) return v.cast<std::complex<double>>();
    if (v.size() % 2 != 0) throw DimensionMismatch("unrealify needs even dimension");
    Eigen::VectorXcd out(v.size() / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out[i] = std::complex<double>(v[2 * i], v[2 * i + 1]);
    return out;
}

// Tolerance policy for float-mode geometric predicates.
inline double default_tol(double max_magnitude) { return 1e-9 * (1.0 + max_magnitude); }

}  // namespace hyperlab
