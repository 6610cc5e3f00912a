#include "hyperlab/partition.hpp"

namespace hyperlab {

void Partition::validate() const {
    if (t.empty() && b.empty()) throw ConfigError("empty partition");
    for (int v : t)
        if (v < 1) throw ConfigError("partition parts must be >= 1");
    for (int v : b)
        if (v < 1) throw ConfigError("partition parts must be >= 1");
    if (field == Field::C && !b.empty())
        throw ConfigError("complex partitions have no rotation-scaling parts");
    if (field == Field::R && r() + 2 * s() > n())
        throw ConfigError("partition violates r + 2s <= n");
}

std::vector<BlockSpec> blocks_of(const Partition& eta) {
    std::vector<BlockSpec> out;
    int off = 0;
    for (int v : eta.t) {
        out.push_back({BlockSpec::T, v, off});
        off += v;
    }
    for (int v : eta.b) {
        out.push_back({BlockSpec::B, 2 * v, off});
        off += 2 * v;
    }
    return out;
}

Eigen::VectorXcd u_eta(const Partition& eta) {
    eta.validate();
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(eta.n());
    for (const auto& blk : blocks_of(eta)) u[blk.offset] = 1.0;
    return u;
}

Mat pattern_projection(const Mat& A, const Partition& eta) {
    eta.validate();
    if (A.n() != eta.n()) throw DimensionMismatch("pattern projection");
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(A.n(), A.n());
    for (const auto& blk : blocks_of(eta)) {
        int o = blk.offset, m = blk.size;
        if (blk.kind == BlockSpec::T) {
            std::complex<double> mean = 0;
            for (int i = 0; i < m; ++i) mean += A.a(o + i, o + i);
            mean /= static_cast<double>(m);
            for (int i = 0; i < m; ++i) {
                P(o + i, o + i) = mean;
                for (int j = 0; j < i; ++j) P(o + i, o + j) = A.a(o + i, o + j);
            }
        } else {
            int cells = m / 2;
            // average the diagonal cells into one (a, b) pair
            double da = 0, db = 0;
            for (int c = 0; c < cells; ++c) {
                da += 0.5 * (A.a(o + 2 * c, o + 2 * c).real() + A.a(o + 2 * c + 1, o + 2 * c + 1).real());
                db += 0.5 * (A.a(o + 2 * c + 1, o + 2 * c).real() - A.a(o + 2 * c, o + 2 * c + 1).real());
            }
            da /= cells;
            db /= cells;
            for (int ci = 0; ci < cells; ++ci) {
                for (int cj = 0; cj <= ci; ++cj) {
                    double a, b;
                    if (ci == cj) {
                        a = da;
                        b = db;
                    } else {
                        // symmetrize the strictly lower cell to the S shape
                        a = 0.5 * (A.a(o + 2 * ci, o + 2 * cj).real() + A.a(o + 2 * ci + 1, o + 2 * cj + 1).real());
                        b = 0.5 * (A.a(o + 2 * ci + 1, o + 2 * cj).real() - A.a(o + 2 * ci, o + 2 * cj + 1).real());
                    }
                    P(o + 2 * ci, o + 2 * cj) = a;
                    P(o + 2 * ci, o + 2 * cj + 1) = -b;
                    P(o + 2 * ci + 1, o + 2 * cj) = b;
                    P(o + 2 * ci + 1, o + 2 * cj + 1) = a;
                }
            }
        }
    }
    return Mat(A.field, P);
}

std::pair<bool, double> check_K_eta_membership(const Mat& A, const Partition& eta, double tol) {
    Mat proj = pattern_projection(A, eta);
    double residual = (A.a - proj.a).cwiseAbs().maxCoeff();
    if (eta.field == Field::R && A.a.imag().cwiseAbs().maxCoeff() > tol)
        return {false, std::max(residual, A.a.imag().cwiseAbs().maxCoeff())};
    return {residual <= tol, residual};
}

}  // namespace hyperlab
