#pragma once

#include "hyperlab/types.hpp"

namespace hyperlab {

// Block partition of the ambient dimension: sizes of the single-eigenvalue
// lower-triangular blocks (t) and, over R, of the rotation-scaling blocks
// (b, each occupying 2*m coordinates).
struct Partition {
    Field field = Field::R;
    std::vector<int> t;  // n_1, ..., n_r
    std::vector<int> b;  // m_1, ..., m_s (empty over C)

    int n() const {
        int s = 0;
        for (int v : t) s += v;
        for (int v : b) s += 2 * v;
        return s;
    }
    int r() const { return static_cast<int>(t.size()); }
    int s() const { return static_cast<int>(b.size()); }
    void validate() const;
    bool operator==(const Partition& o) const {
        return field == o.field && t == o.t && b == o.b;
    }
};

struct BlockSpec {
    enum Kind { T, B } kind;
    int size;    // matrix size: n_i for T, 2*m_j for B
    int offset;  // first coordinate of the block
};

std::vector<BlockSpec> blocks_of(const Partition& eta);

// Concatenation of per-block [1, 0, ..., 0] vectors.
Eigen::VectorXcd u_eta(const Partition& eta);

// true iff A is block diagonal along eta, each T block lower triangular with
// constant diagonal and each B block built from 2x2 cells [[a,-b],[b,a]]
// in block lower-triangular position with constant diagonal cell.
// Returns (member, residual = max violation).
std::pair<bool, double> check_K_eta_membership(const Mat& A, const Partition& eta, double tol);

// Nearest matrix with the eta pattern (off-pattern entries zeroed, diagonals
// averaged, cells symmetrized); the membership residual is the max-norm
// distance to it.
Mat pattern_projection(const Mat& A, const Partition& eta);

}  // namespace hyperlab
