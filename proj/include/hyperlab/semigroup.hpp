#pragma once

#include <optional>

#include "hyperlab/constructions.hpp"
#include "hyperlab/grid.hpp"
#include "hyperlab/normal_form.hpp"

namespace hyperlab {

// Finitely generated multiplicative semigroup of n x n matrices over R or C.
// `exact` optionally carries rational generator entries, aligned with
// `generators`, for exact orbit coordinates.
struct MatrixSemigroup {
    Field field = Field::R;
    int n = 0;
    bool abelian = false;
    std::vector<Mat> generators;
    std::vector<QMat> exact;

    bool has_exact() const { return !exact.empty(); }
    int rdim() const { return field == Field::C ? 2 * n : n; }
};

// Shape/commutation-checked construction; throws NotCommuting unless every
// generator pair commutes within tolerance.
MatrixSemigroup make_semigroup(std::vector<Mat> generators);
MatrixSemigroup make_semigroup(std::vector<Mat> generators, std::vector<QMat> exact);

// Realification acting on interleaved (x1, y1, ...) coordinates; the
// identity on real input.
Eigen::MatrixXd realify_mat(const Mat& A);

// Distinct points A_g^{k_g} ... A_1^{k_1} v with 0 <= k_i <= K inside the
// window (realified coordinates), metadata = the exponent tuple of the
// lexicographically first word reaching the point.  Branches whose norm
// bounds cannot reach the window are cut; norms past 1e300 raise Overflow.
// Exact coordinates are carried when the semigroup has rational generators
// and exact mode is requested.
PointSample orbit(const MatrixSemigroup& G, const Eigen::VectorXcd& v, long long K,
                  const Window& window, Mode mode = Mode::Float);

struct ProbeResult {
    Verdict verdict = Verdict::Inconclusive;
    CoverageReport report;
    NormalForm nf;
    Eigen::VectorXcd candidate;  // ambient coordinates of the probed vector
    json details;
};

// Grades orbit-coverage of the structurally chosen candidate over a budget
// schedule.  When the generators decouple into coordinate components the
// coverage is computed exactly as a product over components, which reaches
// budgets far beyond flat enumeration.
ProbeResult hypercyclicity_probe(const MatrixSemigroup& G, const Window& window, double eps,
                                 const std::vector<long long>& budgets,
                                 const Thresholds& thr = {});

// The invariant subspace distinguished by the block structure: the trailing
// flag line of the leading lower-triangular block (a complex line over C),
// or the trailing plane of the leading rotation-scaling block when no
// triangular block exists.  Throws NoNontrivialCanonical for the plane-only
// two-dimensional real case, where that plane is the whole space.
Subspace canonical_invariant_subspace(const MatrixSemigroup& G);

// Same grading for coverage of the orbit trace inside M, measured in M's
// intrinsic coordinates.
ProbeResult subspace_hypercyclicity_probe(const MatrixSemigroup& G, const Subspace& M,
                                          const Window& m_window, double eps,
                                          const std::vector<long long>& budgets,
                                          const Thresholds& thr = {});

// First candidate in M whose trace coverage at the given budget clears the
// dense threshold: the structural candidate projected into M, then a small
// grid of M-coordinate combinations.  nullopt when none qualifies.
std::optional<Eigen::VectorXcd> witness_in_subspace(const MatrixSemigroup& G, const Subspace& M,
                                                    const Window& m_window, double eps,
                                                    long long budget,
                                                    const Thresholds& thr = {});

// Multiplicative semigroup of the eigenvalues attached to one normal-form
// block: the orbit of 1 under the per-generator block eigenvalues (their
// moduli when `moduli` is set, giving a subset of the positive reals).
PointSample spectrum(const MatrixSemigroup& G, int block, long long K, const Window& window,
                     bool moduli = false);

// Scalar semigroup {p^k q^-m e^(i pi s theta)} with coprime p, q >= 2 and
// certified-irrational theta.
struct GTheta {
    long p = 2;
    long q = 3;
    Surd theta;

    MatrixSemigroup sg() const;
};
GTheta make_G_theta(long p, long q, const Surd& theta);

// Enumeration with exact rational magnitudes p^k / q^m for pruning, float
// phases; metadata (k, m, s).
PointSample g_theta_orbit(const GTheta& g, long long K, const Window& window);

struct GThetaLineTrace {
    std::vector<Rat> values;  // the positive rationals p^k / q^m within reach
    double sin_guard = 1.0;   // min over 1 <= s <= bound of |sin(pi s theta)|
};
// Intersection with the real axis: phases vanish only at s = 0 because theta
// is irrational; sin_guard quantifies the clearance at every other s.
GThetaLineTrace line_trace_G_theta(const GTheta& g, long long bound, double reach);

// Non-commuting pair construction: words in {A, B, (1/a11) I, (1/b11) I}
// with lower-triangular rational A, B.
struct Javaheri {
    int n = 0;
    QMat A, B;
    // some diagonal index expands under A and contracts under B
    bool spectral_condition_evidence = false;

    MatrixSemigroup sg() const;  // abelian flag reflects an actual check
};
Javaheri make_javaheri(const QMat& A, const QMat& B);

// Breadth-first closure of words of length <= max_len applied to v, with
// exact rational states deduplicated exactly; metadata is the generator word
// padded with -1.  States beyond norm_cap are cut; more than max_states
// distinct states raises Overflow.
PointSample javaheri_orbit(const Javaheri& J, const QVec& v, int max_len,
                           double norm_cap = 1e6, long long max_states = 2000000);

}  // namespace hyperlab
