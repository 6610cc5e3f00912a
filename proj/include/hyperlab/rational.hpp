#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major

inline Rat rat_pow(const Rat& x, long e) {
    if (e < 0) {
        if (x == 0) throw MathError("rat_pow: zero to negative power");
        return 1 / rat_pow(x, -e);
    }
    Rat r(1), b(x);
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline bool is_squarefree(long v) {
    if (v < 1) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % (d * d) == 0) return false;
    return true;
}

inline QVec qmat_mul(const QMat& A, const QVec& x) {
    QVec y(A.size(), Rat(0));
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != x.size()) throw DimensionMismatch("qmat_mul");
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    }
    return y;
}

// Rank by exact Gaussian elimination; used as an independent oracle for the
// float subspace dimension.
inline int qmat_rank(QMat A) {
    if (A.empty()) return 0;
    size_t rows = A.size(), cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i != r && A[i][c] != 0) {
                Rat f = A[i][c] / A[r][c];
                for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            }
        }
        ++r;
    }
    return static_cast<int>(r);
}

// Solve A x = b exactly; A square nonsingular.
inline QVec qmat_solve(QMat A, QVec b) {
    size_t n = A.size();
    for (size_t i = 0; i < n; ++i)
        if (A[i].size() != n || b.size() != n) throw DimensionMismatch("qmat_solve");
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) throw MathError("qmat_solve: singular matrix");
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (size_t i = 0; i < n; ++i) {
            if (i != c && A[i][c] != 0) {
                Rat f = A[i][c] / A[c][c];
                for (size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
                b[i] -= f * b[c];
            }
        }
    }
    QVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw ConfigError("cannot parse rational: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

}  // namespace hyperlab
