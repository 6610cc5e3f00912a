#include "hyperlab/normal_form.hpp"

#include <Eigen/Eigenvalues>
#include "hyperlab/linalg.hpp"
#include <Eigen/SVD>
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace hyperlab {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

double family_scale(const std::vector<Mat>& gens) {
    double s = 0;
    for (const auto& g : gens) s = std::max(s, g.a.cwiseAbs().maxCoeff());
    return s;
}

void require_commuting(const std::vector<Mat>& gens) {
    double tol = 10 * default_tol(family_scale(gens));
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (commutator_norm(gens[i], gens[j]) > tol)
                throw NotCommuting("generators " + std::to_string(i) + " and " +
                                   std::to_string(j) + " do not commute");
}

CMat orthonormalize_c(const CMat& cols, int& rank, double rel_tol = 1e-12) {
    const double scale = std::max(1.0, cols.cwiseAbs().maxCoeff());
    CMat kept(cols.rows(), cols.cols());
    int r = 0;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        CVec v = cols.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < r; ++k) v -= kept.col(k).dot(v) * kept.col(k);
        double nv = v.norm();
        if (nv > rel_tol * scale * std::sqrt(static_cast<double>(cols.rows())))
            kept.col(r++) = v / nv;
    }
    rank = r;
    return kept.leftCols(r);
}

// Eigenvalue clusters by union-find at the relative clustering tolerance.
std::vector<std::vector<int>> cluster_eigs(const CVec& eigs) {
    int d = static_cast<int>(eigs.size());
    double scale = 0;
    for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(eigs[i]));
    double tol = eig_cluster_tol(scale);
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(eigs[i] - eigs[j]) <= tol) parent[find(i)] = find(j);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < d; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    // deterministic order: by eigenvalue of the first member
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        std::complex<double> x = eigs[a[0]], y = eigs[b[0]];
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

std::complex<double> cluster_mean(const CVec& eigs, const std::vector<int>& cl) {
    std::complex<double> m = 0;
    for (int i : cl) m += eigs[i];
    return m / static_cast<double>(cl.size());
}

// Right null space of M of a known dimension: the right singular vectors of
// the smallest `dim` singular values (no threshold guessing).
CMat kernel_of_dim(const CMat& M, int dim) {
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

RMat kernel_of_dim_real(const RMat& M, int dim) {
    Eigen::JacobiSVD<RMat> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

// Kernel with threshold (dimension unknown): singular values below
// rel_tol * (1 + sigma_max).
CMat kernel_by_tol(const CMat& M, double rel_tol) {
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = rel_tol * (1.0 + (sv.size() ? sv[0] : 0.0));
    int dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] <= cut) ++dim;
    if (dim == 0) return CMat(M.cols(), 0);
    return svd.matrixV().rightCols(dim);
}

RMat kernel_by_tol_real(const RMat& M, double rel_tol) {
    Eigen::JacobiSVD<RMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = rel_tol * (1.0 + (sv.size() ? sv[0] : 0.0));
    int dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] <= cut) ++dim;
    if (dim == 0) return RMat(M.cols(), 0);
    return svd.matrixV().rightCols(dim);
}

CMat matrix_power(CMat M, int e) {
    CMat R = CMat::Identity(M.rows(), M.cols());
    for (int i = 0; i < e; ++i) R = R * M;
    return R;
}

// ---------------------------------------------------------------------------
// joint generalized eigenspace refinement over C
// ---------------------------------------------------------------------------

std::vector<CMat> refine_spaces(const std::vector<Mat>& gens, int n) {
    std::vector<CMat> spaces = {CMat::Identity(n, n)};
    for (const auto& g : gens) {
        std::vector<CMat> next;
        for (const auto& Q : spaces) {
            int d = static_cast<int>(Q.cols());
            if (d == 1) {
                next.push_back(Q);
                continue;
            }
            CMat R = Q.adjoint() * g.a * Q;
            Eigen::ComplexEigenSolver<CMat> es(R, false);
            CVec eigs = es.eigenvalues();
            auto clusters = cluster_eigs(eigs);
            if (clusters.size() == 1) {
                next.push_back(Q);
                continue;
            }
            for (const auto& cl : clusters) {
                std::complex<double> lam = cluster_mean(eigs, cl);
                int mc = static_cast<int>(cl.size());
                CMat E = matrix_power(R - lam * CMat::Identity(d, d), mc);
                CMat K = kernel_of_dim(E, mc);
                int rk = 0;
                CMat sub = orthonormalize_c(Q * K, rk);
                if (rk != mc) throw NumericalBreakdown("eigenspace refinement lost rank");
                next.push_back(sub);
            }
        }
        spaces = std::move(next);
    }
    return spaces;
}

// eigenvalues of each generator restricted to the (invariant) space
std::vector<std::complex<double>> space_eigs(const std::vector<Mat>& gens, const CMat& Q) {
    std::vector<std::complex<double>> out;
    double d = static_cast<double>(Q.cols());
    for (const auto& g : gens) out.push_back((Q.adjoint() * g.a * Q).trace() / d);
    return out;
}

bool tuple_is_real(const std::vector<std::complex<double>>& tup) {
    double scale = 0;
    for (auto& z : tup) scale = std::max(scale, std::abs(z));
    for (auto& z : tup)
        if (std::abs(z.imag()) > eig_cluster_tol(scale)) return false;
    return true;
}

bool tuples_conjugate(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& b) {
    double scale = 0;
    for (auto& z : a) scale = std::max(scale, std::abs(z));
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - std::conj(b[i])) > 10 * eig_cluster_tol(scale)) return false;
    return true;
}

bool tuple_less(const std::vector<std::complex<double>>& a,
                const std::vector<std::complex<double>>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

// ---------------------------------------------------------------------------
// simultaneous triangularization of a single-eigenvalue commuting family
// ---------------------------------------------------------------------------

// Common eigenvector when every member has a single eigenvalue cluster:
// intersect the (approximate) eigenspaces, then pick deterministically the
// normalized projection of the first canonical vector that projects
// nontrivially.
CVec single_cluster_common_vector(const std::vector<CMat>& Rs, int d) {
    CMat E = CMat::Identity(d, d);
    for (const auto& S : Rs) {
        std::complex<double> lam = S.trace() / static_cast<double>(d);
        CMat T = E.adjoint() * S * E - lam * CMat::Identity(E.cols(), E.cols());
        CMat K = kernel_by_tol(T, 1e-7);
        if (K.cols() == 0) throw NumericalBreakdown("no common eigenvector candidate");
        int rk = 0;
        E = orthonormalize_c(E * K, rk);
    }
    for (int j = 0; j < d; ++j) {
        CVec proj = E * (E.adjoint() * CVec::Unit(d, j));
        if (proj.norm() > 1e-8) return proj / proj.norm();
    }
    throw NumericalBreakdown("degenerate eigenspace intersection");
}

Eigen::VectorXd single_cluster_common_vector_real(const std::vector<RMat>& Rs, int d) {
    RMat E = RMat::Identity(d, d);
    for (const auto& S : Rs) {
        double lam = S.trace() / static_cast<double>(d);
        RMat T = E.transpose() * S * E - lam * RMat::Identity(E.cols(), E.cols());
        RMat K = kernel_by_tol_real(T, 1e-7);
        if (K.cols() == 0) throw NumericalBreakdown("no common eigenvector candidate");
        int rk = 0;
        E = orthonormalize(E * K, rk);
    }
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd proj = E * (E.transpose() * Eigen::VectorXd::Unit(d, j));
        if (proj.norm() > 1e-8) return proj / proj.norm();
    }
    throw NumericalBreakdown("degenerate eigenspace intersection");
}

// Unitary completion whose first column is v; remaining columns drawn from
// the canonical basis (keeps already-triangular inputs near the identity).
CMat completion_unitary(const CVec& v) {
    int d = static_cast<int>(v.size());
    CMat cand(d, d + 1);
    cand.col(0) = v;
    cand.rightCols(d) = CMat::Identity(d, d);
    int rk = 0;
    CMat U = orthonormalize_c(cand, rk);
    if (rk != d) throw NumericalBreakdown("unitary completion failed");
    return U;
}

RMat completion_orthogonal(const Eigen::VectorXd& v) {
    int d = static_cast<int>(v.size());
    RMat cand(d, d + 1);
    cand.col(0) = v;
    cand.rightCols(d) = RMat::Identity(d, d);
    int rk = 0;
    RMat U = orthonormalize(cand, rk);
    if (rk != d) throw NumericalBreakdown("orthogonal completion failed");
    return U;
}

// Unitary U with U* R_i U upper triangular for all i (single-eigenvalue
// commuting family), by iterated deflation.
CMat flag_upper(std::vector<CMat> Ss) {
    int d = static_cast<int>(Ss.empty() ? 0 : Ss[0].rows());
    CMat U(d, d);
    CMat W = CMat::Identity(d, d);  // embedding of the current quotient
    for (int k = 0; k < d; ++k) {
        int dc = d - k;
        CVec v;
        if (dc == 1) {
            v = CVec::Ones(1);
        } else {
            v = single_cluster_common_vector(Ss, dc);
        }
        U.col(k) = W * v;
        if (dc > 1) {
            CMat C = completion_unitary(v);
            W = W * C.rightCols(dc - 1);
            for (auto& S : Ss) S = (C.adjoint() * S * C).bottomRightCorner(dc - 1, dc - 1).eval();
        }
    }
    return U;
}

RMat flag_upper_real(std::vector<RMat> Ss) {
    int d = static_cast<int>(Ss.empty() ? 0 : Ss[0].rows());
    RMat U(d, d);
    RMat W = RMat::Identity(d, d);
    for (int k = 0; k < d; ++k) {
        int dc = d - k;
        Eigen::VectorXd v;
        if (dc == 1) {
            v = Eigen::VectorXd::Ones(1);
        } else {
            v = single_cluster_common_vector_real(Ss, dc);
        }
        U.col(k) = W * v;
        if (dc > 1) {
            RMat C = completion_orthogonal(v);
            W = W * C.rightCols(dc - 1);
            for (auto& S : Ss) S = (C.transpose() * S * C).bottomRightCorner(dc - 1, dc - 1).eval();
        }
    }
    return U;
}

template <typename M>
M reverse_columns(const M& A) {
    M out(A.rows(), A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) out.col(j) = A.col(A.cols() - 1 - j);
    return out;
}

struct PendingBlock {
    BlockSpec::Kind kind;
    int size;  // real size occupied in P
    RMat cols_r;
    CMat cols_c;
    std::vector<std::complex<double>> order_key;
};

}  // namespace

CommonEig common_eigenvector(const std::vector<Mat>& family, Field field) {
    if (family.empty()) throw ConfigError("empty family");
    int n = family[0].n();
    for (const auto& g : family)
        if (g.n() != n) throw DimensionMismatch("family dimensions differ");
    require_commuting(family);

    if (field == Field::C) {
        // chain of eigenspace intersections with a deterministic cluster pick
        CMat E = CMat::Identity(n, n);
        std::vector<std::complex<double>> eigs;
        for (const auto& g : family) {
            CMat T = E.adjoint() * g.a * E;
            Eigen::ComplexEigenSolver<CMat> es(T);
            auto clusters = cluster_eigs(es.eigenvalues());
            CMat best;
            std::complex<double> best_lam;
            double best_score = -1;
            int pick_j = 0;
            for (int j = 0; j < n && best_score < 1e-8; ++j) {
                CVec target = CVec::Unit(n, j);
                for (const auto& cl : clusters) {
                    std::complex<double> lam = cluster_mean(es.eigenvalues(), cl);
                    CMat K = kernel_by_tol(T - lam * CMat::Identity(T.rows(), T.cols()), 1e-7);
                    if (K.cols() == 0) continue;
                    int rk = 0;
                    CMat sub = orthonormalize_c(E * K, rk);
                    double score = (sub * (sub.adjoint() * target)).norm();
                    if (score > best_score + 1e-12) {
                        best_score = score;
                        best = sub;
                        best_lam = lam;
                    }
                }
                pick_j = j;
            }
            (void)pick_j;
            if (best_score < 0) throw NumericalBreakdown("no eigenspace survived");
            E = best;
            eigs.push_back(best_lam);
        }
        CommonEig out;
        out.eigs = std::move(eigs);
        for (int j = 0; j < n; ++j) {
            CVec proj = E * (E.adjoint() * CVec::Unit(n, j));
            if (proj.norm() > 1e-8) {
                out.v = proj / proj.norm();
                return out;
            }
        }
        throw NumericalBreakdown("degenerate eigenspace intersection");
    }

    // Over R: prefer real eigenvector chains; fall back to an invariant
    // plane obtained by realifying a complex common eigenvector.
    RMat E = RMat::Identity(n, n);
    std::vector<std::complex<double>> eigs;
    bool need_plane = false;
    for (const auto& g : family) {
        RMat T = E.transpose() * g.re() * E;
        Eigen::ComplexEigenSolver<CMat> es(T.cast<std::complex<double>>());
        auto clusters = cluster_eigs(es.eigenvalues());
        RMat best;
        double best_lam = 0;
        double best_score = -1;
        for (int j = 0; j < n && best_score < 1e-8; ++j) {
            Eigen::VectorXd target = Eigen::VectorXd::Unit(n, j);
            for (const auto& cl : clusters) {
                std::complex<double> lam = cluster_mean(es.eigenvalues(), cl);
                if (std::abs(lam.imag()) > eig_cluster_tol(std::abs(lam))) continue;
                RMat K = kernel_by_tol_real(T - lam.real() * RMat::Identity(T.rows(), T.cols()), 1e-7);
                if (K.cols() == 0) continue;
                int rk = 0;
                RMat sub = orthonormalize(E * K, rk);
                double score = (sub * (sub.transpose() * target)).norm();
                if (score > best_score + 1e-12) {
                    best_score = score;
                    best = sub;
                    best_lam = lam.real();
                }
            }
        }
        if (best_score < 1e-8) {
            need_plane = true;
            break;
        }
        E = best;
        eigs.push_back(best_lam);
    }
    if (!need_plane) {
        CommonEig out;
        out.eigs = std::move(eigs);
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd proj = E * (E.transpose() * Eigen::VectorXd::Unit(n, j));
            if (proj.norm() > 1e-8) {
                out.v = (proj / proj.norm()).cast<std::complex<double>>();
                return out;
            }
        }
        throw NumericalBreakdown("degenerate eigenspace intersection");
    }

    // complex chain restricted to the current real space
    std::vector<Mat> restricted;
    for (const auto& g : family)
        restricted.push_back(Mat(Field::C, (E.transpose() * g.re() * E).cast<std::complex<double>>()));
    CommonEig inner = common_eigenvector(restricted, Field::C);
    CVec z = (E.cast<std::complex<double>>()) * inner.v;
    CommonEig out;
    out.is_plane = true;
    out.eigs = inner.eigs;
    RMat pl(n, 2);
    pl.col(0) = z.imag();
    pl.col(1) = z.real();
    int rk = 0;
    out.plane = orthonormalize(pl, rk);
    if (rk != 2) throw NumericalBreakdown("invariant plane collapsed");
    return out;
}

NormalForm normal_form(const std::vector<Mat>& generators, Field field) {
    if (generators.empty()) throw ConfigError("empty generator list");
    int n = generators[0].n();
    for (const auto& g : generators) {
        if (g.n() != n) throw DimensionMismatch("generator dimensions differ");
        if (field == Field::R && g.a.imag().cwiseAbs().maxCoeff() > 0)
            throw ConfigError("real-field generator has complex entries");
    }
    require_commuting(generators);

    std::vector<CMat> spaces = refine_spaces(generators, n);

    std::vector<PendingBlock> pending;
    if (field == Field::C) {
        for (const auto& Q : spaces) {
            std::vector<CMat> Rs;
            for (const auto& g : generators) Rs.push_back(Q.adjoint() * g.a * Q);
            CMat U = reverse_columns(flag_upper(Rs));
            PendingBlock blk;
            blk.kind = BlockSpec::T;
            blk.size = static_cast<int>(Q.cols());
            blk.cols_c = Q * U;
            blk.order_key = space_eigs(generators, Q);
            pending.push_back(std::move(blk));
        }
    } else {
        std::vector<bool> used(spaces.size(), false);
        std::vector<std::vector<std::complex<double>>> tuples;
        for (const auto& Q : spaces) tuples.push_back(space_eigs(generators, Q));
        for (size_t i = 0; i < spaces.size(); ++i) {
            if (used[i]) continue;
            if (tuple_is_real(tuples[i])) {
                used[i] = true;
                // conjugation-stable space: extract the real points
                const CMat& Q = spaces[i];
                int d = static_cast<int>(Q.cols());
                RMat reim(n, 2 * d);
                reim.leftCols(d) = Q.real();
                reim.rightCols(d) = Q.imag();
                int rk = 0;
                RMat Qr = orthonormalize(reim, rk);
                if (rk != d) throw NumericalBreakdown("realification rank mismatch");
                std::vector<RMat> Rs;
                for (const auto& g : generators) Rs.push_back(Qr.transpose() * g.re() * Qr);
                RMat U = reverse_columns(flag_upper_real(Rs));
                PendingBlock blk;
                blk.kind = BlockSpec::T;
                blk.size = d;
                blk.cols_r = Qr * U;
                blk.order_key = tuples[i];
                pending.push_back(std::move(blk));
                continue;
            }
            // find the conjugate partner
            size_t partner = spaces.size();
            for (size_t j = i + 1; j < spaces.size(); ++j)
                if (!used[j] && spaces[j].cols() == spaces[i].cols() &&
                    tuples_conjugate(tuples[i], tuples[j])) {
                    partner = j;
                    break;
                }
            if (partner == spaces.size())
                throw NumericalBreakdown("unpaired complex eigenvalue tuple");
            used[i] = used[partner] = true;
            // pick the representative whose first non-real eigenvalue has
            // positive imaginary part
            size_t rep = i;
            for (size_t k = 0; k < tuples[i].size(); ++k) {
                double scale = std::abs(tuples[i][k]);
                if (std::abs(tuples[i][k].imag()) > eig_cluster_tol(scale)) {
                    if (tuples[i][k].imag() < 0) rep = partner;
                    break;
                }
            }
            const CMat& Q = spaces[rep];
            int m = static_cast<int>(Q.cols());
            std::vector<CMat> Rs;
            for (const auto& g : generators) Rs.push_back(Q.adjoint() * g.a * Q);
            CMat U = reverse_columns(flag_upper(Rs));
            CMat Z = Q * U;
            // realify column pairs (Im z, Re z); per-column phase rotation
            // orthogonalizes the pair
            RMat cols(n, 2 * m);
            for (int j = 0; j < m; ++j) {
                CVec z = Z.col(j);
                Eigen::VectorXd x = z.real(), y = z.imag();
                double phi = 0.5 * std::atan2(2.0 * x.dot(y), y.squaredNorm() - x.squaredNorm());
                CVec zr = std::polar(1.0, phi) * z;
                zr /= zr.norm();
                cols.col(2 * j) = zr.imag();
                cols.col(2 * j + 1) = zr.real();
            }
            PendingBlock blk;
            blk.kind = BlockSpec::B;
            blk.size = 2 * m;
            blk.cols_r = cols;
            blk.order_key = space_eigs(generators, Q);
            pending.push_back(std::move(blk));
        }
    }

    std::stable_sort(pending.begin(), pending.end(), [](const PendingBlock& a, const PendingBlock& b) {
        if (a.kind != b.kind) return a.kind == BlockSpec::T;
        if (a.size != b.size) return a.size > b.size;
        return tuple_less(a.order_key, b.order_key);
    });

    NormalForm nf;
    nf.eta.field = field;
    CMat P = CMat::Zero(n, n);
    int off = 0;
    for (const auto& blk : pending) {
        if (blk.kind == BlockSpec::T)
            nf.eta.t.push_back(blk.size);
        else
            nf.eta.b.push_back(blk.size / 2);
        if (field == Field::C)
            P.middleCols(off, blk.size) = blk.cols_c;
        else
            P.middleCols(off, blk.size) = blk.cols_r.cast<std::complex<double>>();
        off += blk.size;
    }
    nf.eta.validate();
    if (off != n) throw NumericalBreakdown("block sizes do not sum to the dimension");

    Eigen::JacobiSVD<CMat> svd(P);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double smax = svd.singularValues()(0);
    if (smin <= 0 || smax / smin > 1e12)
        throw NumericalBreakdown("conjugation matrix is ill-conditioned");

    CMat Pinv = P.partialPivLu().solve(CMat::Identity(n, n));
    nf.P = Mat(field, P);
    nf.P_inverse = Mat(field, Pinv);

    double residual = 0;
    for (const auto& g : generators) {
        CMat conj = Pinv * g.a * P;
        if (field == Field::R) conj = conj.real().cast<std::complex<double>>();
        Mat cg(field, conj);
        auto [ok, res] = check_K_eta_membership(cg, nf.eta, 1e-8);
        (void)ok;
        residual = std::max(residual, res);
        nf.conjugated.push_back(std::move(cg));
    }
    nf.residual = residual;

    auto blocks = blocks_of(nf.eta);
    nf.block_eigs.assign(blocks.size(), {});
    for (size_t b = 0; b < blocks.size(); ++b) {
        for (const auto& cg : nf.conjugated) {
            const auto& blk = blocks[b];
            if (blk.kind == BlockSpec::T) {
                std::complex<double> mean = 0;
                for (int i = 0; i < blk.size; ++i) mean += cg.a(blk.offset + i, blk.offset + i);
                nf.block_eigs[b].push_back(mean / static_cast<double>(blk.size));
            } else {
                double a = 0.5 * (cg.a(blk.offset, blk.offset).real() +
                                  cg.a(blk.offset + 1, blk.offset + 1).real());
                double bb = 0.5 * (cg.a(blk.offset + 1, blk.offset).real() -
                                   cg.a(blk.offset, blk.offset + 1).real());
                nf.block_eigs[b].push_back({a, bb});
            }
        }
    }
    return nf;
}

}  // namespace hyperlab
