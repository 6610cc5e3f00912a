#include "hyperlab/linalg.hpp"

namespace hyperlab {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, int& rank, double rel_tol) {
    const double scale = std::max(1.0, cols.cwiseAbs().maxCoeff());
    Eigen::MatrixXd kept(cols.rows(), cols.cols());
    int r = 0;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        Eigen::VectorXd v = cols.col(j);
        for (int pass = 0; pass < 2; ++pass)  // MGS plus one re-orthogonalization
            for (int k = 0; k < r; ++k) v -= kept.col(k).dot(v) * kept.col(k);
        double nv = v.norm();
        if (nv > rel_tol * scale * std::sqrt(static_cast<double>(cols.rows()))) {
            kept.col(r++) = v / nv;
        }
    }
    rank = r;
    return kept.leftCols(r);
}

Subspace subspace_from_basis(const std::vector<Eigen::VectorXd>& vectors) {
    if (vectors.empty()) throw ConfigError("subspace needs at least one vector");
    const Eigen::Index n = vectors[0].size();
    Eigen::MatrixXd cols(n, static_cast<Eigen::Index>(vectors.size()));
    bool all_zero = true;
    for (size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n) throw DimensionMismatch("subspace basis");
        cols.col(static_cast<Eigen::Index>(j)) = vectors[j];
        if (vectors[j].norm() > 0) all_zero = false;
    }
    if (all_zero) throw AllZeroInput();
    Subspace M;
    M.n = static_cast<int>(n);
    M.Q = orthonormalize(cols, M.r);
    return M;
}

Subspace subspace_from_exact_basis(const SMat& rows) {
    if (rows.empty()) throw ConfigError("subspace needs at least one vector");
    size_t n = rows[0].size();
    bool all_zero = true;
    std::vector<Eigen::VectorXd> fl;
    for (const auto& row : rows) {
        if (row.size() != n) throw DimensionMismatch("subspace basis");
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        for (size_t i = 0; i < n; ++i) {
            v[static_cast<Eigen::Index>(i)] = row[i].to_double();
            if (!row[i].is_zero()) all_zero = false;
        }
        fl.push_back(std::move(v));
    }
    if (all_zero) throw AllZeroInput();
    Subspace M = subspace_from_basis(fl);
    M.exact_basis = rows;
    M.exact_equations = span_defining_equations(rows);
    if (static_cast<int>(M.exact_equations->size()) != M.n - M.r)
        throw NumericalBreakdown("float rank disagrees with exact rank");
    return M;
}

Subspace complex_line(const Eigen::VectorXcd& v) {
    if (v.norm() == 0) throw AllZeroInput();
    // span over R of phi(v) and phi(iv)
    std::vector<Eigen::VectorXd> basis = {
        complex_to_real_embedding(v),
        complex_to_real_embedding((std::complex<double>(0, 1) * v).eval()),
    };
    return subspace_from_basis(basis);
}

Eigen::VectorXd project(const Eigen::VectorXd& point, const Subspace& M) {
    if (point.size() != M.n) throw DimensionMismatch("project");
    return M.Q * (M.Q.transpose() * point);
}

double membership_distance(const Eigen::VectorXd& point, const Subspace& M) {
    return (point - project(point, M)).norm();
}

bool member_exact(const SVec& point, const Subspace& M) {
    if (!M.exact_equations) throw ConfigError("subspace carries no exact equations");
    if (point.size() != static_cast<size_t>(M.n)) throw DimensionMismatch("member_exact");
    for (const auto& eq : *M.exact_equations) {
        Surd dot;
        for (size_t i = 0; i < point.size(); ++i) dot += eq[i] * point[i];
        if (!dot.is_zero()) return false;
    }
    return true;
}

Eigen::VectorXd complex_to_real_embedding(const Eigen::VectorXcd& z) {
    return realify(Field::C, z);
}

double commutator_norm(const Mat& A, const Mat& B) {
    if (A.n() != B.n()) throw DimensionMismatch("commutator");
    return (A.a * B.a - B.a * A.a).cwiseAbs().maxCoeff();
}

bool commutes(const Mat& A, const Mat& B, double tol) {
    return commutator_norm(A, B) <= tol;
}

}  // namespace hyperlab
