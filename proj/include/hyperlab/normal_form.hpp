#pragma once

#include "hyperlab/partition.hpp"

namespace hyperlab {

// Result of the common-eigenvector search for a commuting family.  Over R
// the family may have no real eigenvector; an invariant plane is returned
// instead (is_plane set, plane holds two orthonormal real columns).
struct CommonEig {
    bool is_plane = false;
    Eigen::VectorXcd v;          // unit common eigenvector (imag 0 over R)
    Eigen::MatrixXd plane;       // n x 2 when is_plane
    std::vector<std::complex<double>> eigs;  // one per family member
};

CommonEig common_eigenvector(const std::vector<Mat>& family, Field field);

struct NormalForm {
    Mat P;
    Mat P_inverse;
    Partition eta;
    std::vector<Mat> conjugated;  // P^-1 A_i P
    double residual = 0;          // max membership violation over generators
    // per block, per generator: the constant diagonal eigenvalue (T blocks)
    // or the a+ib of the constant diagonal cell (B blocks)
    std::vector<std::vector<std::complex<double>>> block_eigs;
};

// Simultaneous conjugation of a commuting family into the block-diagonal
// form made of single-eigenvalue lower-triangular blocks and, over R,
// rotation-scaling blocks.  Deterministic for a fixed generator order.
NormalForm normal_form(const std::vector<Mat>& generators, Field field);

// Clustering tolerance used to decide when eigenvalues coincide.
inline double eig_cluster_tol(double scale) { return 1e-7 * (1.0 + scale); }

}  // namespace hyperlab
