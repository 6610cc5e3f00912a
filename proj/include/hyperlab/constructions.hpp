#pragma once

#include "hyperlab/linalg.hpp"
#include "hyperlab/types.hpp"

namespace hyperlab {

enum class Mode { Float, Exact };

// Witness tuple of negative irrationals alpha_i = -sqrt(p_i) for distinct
// squarefree p_i >= 2; 1, alpha_1, ..., alpha_n are then linearly
// independent over Q by the field-degree argument, so independence is
// certified by construction.
struct IrrationalBasis {
    int n = 0;
    std::vector<long> primes;  // distinct squarefree integers >= 2

    std::vector<double> alpha() const {
        std::vector<double> a;
        for (long p : primes) a.push_back(-std::sqrt(static_cast<double>(p)));
        return a;
    }
    std::vector<Surd> alpha_exact() const {
        std::vector<Surd> a;
        for (long p : primes) a.push_back(-Surd::root(p));
        return a;
    }
};

IrrationalBasis make_alpha(int n, const std::vector<long>& squarefree);
// Interleaving [alpha_1, beta_1; alpha_2, beta_2; ...] used by the
// complex-to-real reduction.
IrrationalBasis make_mu(const IrrationalBasis& alpha, const IrrationalBasis& beta);

// All points [s_1, ..., s_n] + s * alpha with 0 <= s <= S and the integer
// parts s_i >= 0 ranging over every value that can land in the window.
PointSample sample_A_alpha(const IrrationalBasis& alpha, long long S, const Window& window,
                           Mode mode = Mode::Exact);

// Complex variant: [m_1 + i m_1' , ...] + s * (alpha + i beta), stored in
// interleaved real coordinates.
PointSample sample_A_alpha_beta(const IrrationalBasis& alpha, const IrrationalBasis& beta,
                                long long S, const CWindow& window, Mode mode = Mode::Exact);

// The embedding phi on a complex sample: a pure re-tagging of the stored
// interleaved coordinates.
PointSample phi_sample(const PointSample& complex_sample);

struct RadialGrid {
    double step = 0.05;
    int count = 20;
    double value(int j) const { return step * (j + 1); }  // strictly positive
};

// Points [r_1 e^{2 i pi n_1 th1}, r_2 e^{2 i pi n_2 th2}] over the radial
// grid with 0 <= n_1, n_2 <= S, filtered by a box window in the interleaved
// real coordinates of C^2.
PointSample sample_A2(double th1, double th2, const RadialGrid& rg, long long S,
                      const Window& window);

struct RayDescription {
    enum Kind { Empty, Found, NoneUpToBound } kind = Empty;
    long n1 = 0, n2 = 0, k = 0;
    long matches = 0;  // number of exponent triples within tolerance
    Eigen::Vector4d v = Eigen::Vector4d::Zero();  // ray direction, interleaved
};

// Structural intersection of the two-angle set with the complex line through
// [a1, a2]: recovers the unique exponent triple when the phase of a2/a1
// decomposes as n2*th2 - n1*th1 + k within the search bound.
RayDescription line_trace_A2(double th1, double th2, std::complex<double> a1,
                             std::complex<double> a2, long bound, double tol = 1e-6);

struct AngleGrid {
    int denom = 64;    // rational angles j/denom in [0, 1/2)
    int planted = 16;  // irrational angles offset by 1/sqrt(2) into [1/2, 1)
};

// Planar set r e^{2 i pi theta} with theta in [0,1/2) rational grid plus
// certified-irrational angles in [1/2, 1); rational angles of the second
// half-interval are excluded by definition.
PointSample sample_B(const RadialGrid& rg, const AngleGrid& ag);

// All integer combinations sum k_i u_i with |k_i| <= bound, window-filtered.
// Generators are exact (surd entries allowed).  With more generators than
// ambient dimensions the sample is still produced but flagged.
PointSample sample_Z_module(const SMat& generators, long bound, const Window& window,
                            bool* warn_more_gens_than_dim = nullptr);

// Subset of the sample within membership tolerance of M; points carry both
// ambient and M-intrinsic coordinates.  When both the sample and M have
// exact data the filter is exact.
PointSample subspace_trace(const PointSample& sample, const Subspace& M, double tol,
                           Mode mode = Mode::Exact);

}  // namespace hyperlab
