#pragma once

#include <optional>

#include "hyperlab/types.hpp"

namespace hyperlab {

// Linear subspace of R^n (complex subspaces are handled through their
// realified span).  Q holds an orthonormal basis; when the subspace was
// built from exact coordinates the defining linear equations (rows w with
// w.x = 0 on the subspace) are kept for exact membership filtering.
struct Subspace {
    int n = 0;  // ambient dimension
    int r = 0;  // subspace dimension
    Eigen::MatrixXd Q;  // n x r, orthonormal columns
    std::optional<SMat> exact_basis;      // r rows of length n
    std::optional<SMat> exact_equations;  // n - r rows of length n

    bool has_exact() const { return exact_equations.has_value(); }
    Eigen::VectorXd coords(const Eigen::VectorXd& p) const { return Q.transpose() * p; }
};

// Modified Gram-Schmidt with one re-orthogonalization pass; returns the
// orthonormal columns and sets rank.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, int& rank, double rel_tol = 1e-12);

Subspace subspace_from_basis(const std::vector<Eigen::VectorXd>& vectors);
Subspace subspace_from_exact_basis(const SMat& rows);
// Realified span of the complex line C*v (a 2-dimensional real subspace).
Subspace complex_line(const Eigen::VectorXcd& v);

Eigen::VectorXd project(const Eigen::VectorXd& point, const Subspace& M);
double membership_distance(const Eigen::VectorXd& point, const Subspace& M);
// Exact membership for points with exact coordinates.
bool member_exact(const SVec& point, const Subspace& M);

// The embedding (x1+iy1, ..., xn+iyn) -> (x1, y1, ..., xn, yn).
Eigen::VectorXd complex_to_real_embedding(const Eigen::VectorXcd& z);

bool commutes(const Mat& A, const Mat& B, double tol);
// max-norm of AB - BA
double commutator_norm(const Mat& A, const Mat& B);

}  // namespace hyperlab
