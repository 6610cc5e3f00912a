#include "hyperlab/surd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperlab {

void Surd::put(long d, const Rat& q) {
    if (q == 0) return;
    auto it = t_.find(d);
    if (it == t_.end()) {
        t_[d] = q;
    } else {
        it->second += q;
        if (it->second == 0) t_.erase(it);
    }
}

Surd Surd::root(long d) {
    if (!is_squarefree(d)) throw NotSquarefree("sqrt(" + std::to_string(d) + "): not squarefree");
    Surd s;
    s.t_[d] = Rat(1);
    return s;
}

Surd Surd::term(const Rat& q, long d) {
    if (!is_squarefree(d)) throw NotSquarefree("sqrt(" + std::to_string(d) + "): not squarefree");
    Surd s;
    if (q != 0) s.t_[d] = q;
    return s;
}

Rat Surd::rational_part() const {
    auto it = t_.find(1);
    return it == t_.end() ? Rat(0) : it->second;
}

Surd Surd::operator-() const {
    Surd r(*this);
    for (auto& [d, q] : r.t_) q = -q;
    return r;
}

Surd Surd::operator+(const Surd& o) const {
    Surd r(*this);
    for (const auto& [d, q] : o.t_) r.put(d, q);
    return r;
}

Surd Surd::operator-(const Surd& o) const {
    Surd r(*this);
    for (const auto& [d, q] : o.t_) r.put(d, -q);
    return r;
}

Surd Surd::operator*(const Surd& o) const {
    Surd r;
    for (const auto& [d1, q1] : t_) {
        for (const auto& [d2, q2] : o.t_) {
            long g = std::gcd(d1, d2);
            // sqrt(d1)*sqrt(d2) = g * sqrt((d1/g)*(d2/g)); the reduced
            // radicand is squarefree because d1/g and d2/g are coprime
            r.put((d1 / g) * (d2 / g), q1 * q2 * g);
        }
    }
    return r;
}

namespace {

// Multiplicative closure of a set of squarefree radicands.
std::vector<long> radicand_closure(const std::set<long>& in) {
    std::set<long> cl(in);
    cl.insert(1);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<long> cur(cl.begin(), cl.end());
        for (long a : cur)
            for (long b : cur) {
                long g = std::gcd(a, b);
                long c = (a / g) * (b / g);
                if (!cl.count(c)) {
                    cl.insert(c);
                    grew = true;
                }
            }
    }
    return {cl.begin(), cl.end()};
}

}  // namespace

Surd Surd::operator/(const Surd& o) const {
    if (o.is_zero()) throw MathError("surd division by zero");
    if (o.is_rational()) {
        Surd r(*this);
        for (auto& [d, q] : r.t_) q /= o.rational_part();
        return r;
    }
    // Solve o * x = this in the finite-dimensional Q-algebra spanned by the
    // closure of all radicands involved.
    std::set<long> rads;
    for (const auto& [d, q] : t_) rads.insert(d);
    for (const auto& [d, q] : o.t_) rads.insert(d);
    std::vector<long> basis = radicand_closure(rads);
    std::map<long, size_t> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;

    size_t n = basis.size();
    QMat M(n, QVec(n, Rat(0)));
    for (size_t j = 0; j < n; ++j) {
        Surd col = o * Surd::root(basis[j]);
        for (const auto& [d, q] : col.terms()) M[idx.at(d)][j] = q;
    }
    QVec rhs(n, Rat(0));
    for (const auto& [d, q] : t_) rhs[idx.at(d)] = q;
    QVec x = qmat_solve(M, rhs);  // invertible: multiplication by a nonzero field element
    Surd r;
    for (size_t j = 0; j < n; ++j) r.put(basis[j], x[j]);
    return r;
}

bool Surd::repr_less(const Surd& o) const {
    auto a = t_.begin(), b = o.t_.begin();
    for (; a != t_.end() && b != o.t_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    return t_.size() < o.t_.size();
}

int Surd::sign() const {
    if (t_.empty()) return 0;
    if (is_rational()) return sgn(t_.begin()->second);
    // Nonzero by the linear-independence zero test; interval arithmetic at
    // growing precision must eventually separate the value from zero.
    for (unsigned long prec = 128;; prec *= 2) {
        mpf_class val(0, prec), err(0, prec);
        mpf_class eps(0, prec);
        mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, prec).get_mpf_t(), prec - 4);
        for (const auto& [d, q] : t_) {
            mpf_class s(0, prec);
            mpf_sqrt_ui(s.get_mpf_t(), static_cast<unsigned long>(d));
            mpf_class term = mpf_class(q, prec) * s;
            val += term;
            err += abs(term) * eps + eps;
        }
        if (val > err) return 1;
        if (val < -err) return -1;
        if (prec > 1 << 20) throw NumericalBreakdown("surd sign did not separate");
    }
}

double Surd::to_double() const {
    // plain IEEE evaluation, terms in ascending radicand order; for a single
    // term q*sqrt(d) this is correctly rounded, which keeps float-mode
    // consumers bit-compatible with direct std::sqrt expressions
    double val = 0;
    for (const auto& [d, q] : t_)
        val += d == 1 ? q.get_d() : q.get_d() * std::sqrt(static_cast<double>(d));
    return val;
}

std::string Surd::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, q] : t_) {
        if (!first && q > 0) os << "+";
        first = false;
        if (d == 1) {
            os << q.get_str();
        } else {
            if (q == -1) os << "-";
            else if (q != 1) os << q.get_str() << "*";
            os << "sqrt(" << d << ")";
        }
    }
    return os.str();
}

SVec smat_mul(const SMat& A, const SVec& x) {
    SVec y(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != x.size()) throw DimensionMismatch("smat_mul");
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    }
    return y;
}

int smat_rank(SMat A) {
    if (A.empty()) return 0;
    size_t rows = A.size(), cols = A[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && A[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i != r && !A[i][c].is_zero()) {
                Surd f = A[i][c] / A[r][c];
                for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            }
        }
        ++r;
    }
    return static_cast<int>(r);
}

SMat span_defining_equations(const SMat& rows) {
    if (rows.empty()) return {};
    size_t m = rows.size(), n = rows[0].size();
    SMat A(rows);
    std::vector<long> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && A[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(A[p], A[r]);
        Surd piv = A[r][c];
        for (size_t j = c; j < n; ++j) A[r][j] = A[r][j] / piv;
        for (size_t i = 0; i < m; ++i) {
            if (i != r && !A[i][c].is_zero()) {
                Surd f = A[i][c];
                for (size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
            }
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    // Null space of the row-reduced system: one equation per free column.
    SMat eqs;
    std::vector<bool> is_pivot(n, false);
    for (long c : pivot_col) is_pivot[c] = true;
    for (size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        SVec w(n, Surd(0));
        w[c] = Surd(1);
        for (size_t k = 0; k < pivot_col.size(); ++k)
            w[pivot_col[k]] = -A[k][c];
        eqs.push_back(std::move(w));
    }
    return eqs;
}

namespace {

// One atom: rational, "√N", "sqrt(N)", or rational*surd such as "2√3".
Surd parse_atom(std::string s) {
    auto strip = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    };
    strip(s);
    if (s.empty()) throw ConfigError("empty surd token");
    Rat coef(1);
    size_t pos = std::string::npos;
    const std::string utf_root = "\xE2\x88\x9A";  // U+221A
    if (auto p = s.find(utf_root); p != std::string::npos) pos = p;
    size_t sq = s.find("sqrt(");
    if (sq != std::string::npos && (pos == std::string::npos || sq < pos)) pos = sq;
    if (pos == std::string::npos) return Surd(rat_from_string(s));
    std::string pre = s.substr(0, pos);
    strip(pre);
    if (!pre.empty() && pre.back() == '*') { pre.pop_back(); strip(pre); }
    if (pre == "-") coef = -1;
    else if (!pre.empty()) coef = rat_from_string(pre);
    std::string rad = s.substr(pos);
    long d;
    if (rad.rfind("sqrt(", 0) == 0) {
        size_t close = rad.find(')');
        if (close == std::string::npos) throw ConfigError("unbalanced sqrt(): " + s);
        d = std::stol(rad.substr(5, close - 5));
    } else {
        d = std::stol(rad.substr(utf_root.size()));
    }
    return Surd::term(coef, d);
}

}  // namespace

Surd parse_surd_token(const std::string& tok) {
    // Split a sum like "1+√2-2/3*√3" at top-level +/- signs.
    Surd total;
    std::string cur;
    for (size_t i = 0; i < tok.size(); ++i) {
        char ch = tok[i];
        bool split = (ch == '+' || ch == '-') && i > 0;
        if (split) {
            char prev = tok[i - 1];
            if (prev == '+' || prev == '-' || prev == '*' || prev == '(' || prev == '/') split = false;
        }
        if (split) {
            total += parse_atom(cur);
            cur.clear();
            if (ch == '-') cur.push_back('-');
        } else {
            cur.push_back(ch);
        }
    }
    total += parse_atom(cur);
    return total;
}

}  // namespace hyperlab
