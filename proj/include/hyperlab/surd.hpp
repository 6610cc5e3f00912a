#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// Element of the field Q(sqrt(d1), ..., sqrt(dk)): a finite sum of terms
// q * sqrt(d) with rational q and squarefree radicand d >= 1 (d = 1 is the
// rational part).  Addition and multiplication are exact; the zero test is
// trivial because square roots of distinct squarefree integers are linearly
// independent over Q.
class Surd {
public:
    Surd() = default;
    Surd(long v) { if (v != 0) t_[1] = Rat(v); }
    Surd(const Rat& q) { if (q != 0) t_[1] = q; }
    static Surd root(long d);                 // sqrt(d); NotSquarefree if not
    static Surd term(const Rat& q, long d);   // q * sqrt(d)

    bool is_zero() const { return t_.empty(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 1); }
    Rat rational_part() const;

    Surd operator-() const;
    Surd operator+(const Surd& o) const;
    Surd operator-(const Surd& o) const;
    Surd operator*(const Surd& o) const;
    Surd operator/(const Surd& o) const;      // exact field division
    Surd& operator+=(const Surd& o) { *this = *this + o; return *this; }
    Surd& operator-=(const Surd& o) { *this = *this - o; return *this; }
    Surd& operator*=(const Surd& o) { *this = *this * o; return *this; }

    bool operator==(const Surd& o) const { return t_ == o.t_; }
    bool operator!=(const Surd& o) const { return !(*this == o); }
    // total order on representations (term maps, lexicographic); used only
    // for canonical sorting of point lists, not for numeric comparison
    bool repr_less(const Surd& o) const;

    int sign() const;                          // exact sign of the real value
    bool less_than(const Surd& o) const { return (*this - o).sign() < 0; }
    double to_double() const;

    std::string str() const;
    const std::map<long, Rat>& terms() const { return t_; }

private:
    std::map<long, Rat> t_;
    void put(long d, const Rat& q);
};

using SVec = std::vector<Surd>;
using SMat = std::vector<SVec>;  // row-major

SVec smat_mul(const SMat& A, const SVec& x);
int smat_rank(SMat A);
// Rows w with w . x = 0 for every x in the row space of `rows`
// (left null space of the transposed stacking, i.e. defining equations of
// the span of `rows` viewed as vectors).
SMat span_defining_equations(const SMat& rows);

Surd parse_surd_token(const std::string& tok);  // "3", "-1/2", "√2", "sqrt(2)", "1+√2"

}  // namespace hyperlab
