#include "hyperlab/constructions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <set>

namespace hyperlab {

namespace {

json window_json(const Window& w) {
    json a = json::array();
    for (auto& [lo, hi] : w.ax) a.push_back({lo, hi});
    return a;
}

// Integers m with m in [lo + shift, hi + shift], widened by one on each side
// so that borderline values are decided by the membership filter, never by
// the range arithmetic.
struct IRange {
    long long lo, hi;
};

IRange integer_range(double lo, double hi, double shift) {
    return {static_cast<long long>(std::ceil(lo + shift)) - 1,
            static_cast<long long>(std::floor(hi + shift)) + 1};
}

bool odometer_next(std::vector<long long>& cur, const std::vector<long long>& lo,
                   const std::vector<long long>& hi) {
    int i = static_cast<int>(cur.size()) - 1;
    while (i >= 0) {
        if (++cur[i] <= hi[i]) return true;
        cur[i] = lo[i];
        --i;
    }
    return false;
}

void validate_basis(const IrrationalBasis& b, const char* who) {
    if (b.n < 1 || static_cast<int>(b.primes.size()) != b.n)
        throw DimensionMismatch(std::string(who) + ": need one radicand per coordinate");
    std::set<long> seen;
    for (long p : b.primes) {
        if (p < 2 || !is_squarefree(p)) throw NotSquarefree();
        if (!seen.insert(p).second) throw Duplicate();
    }
}

}  // namespace

IrrationalBasis make_alpha(int n, const std::vector<long>& squarefree) {
    IrrationalBasis b{n, squarefree};
    validate_basis(b, "make_alpha");
    return b;
}

IrrationalBasis make_mu(const IrrationalBasis& alpha, const IrrationalBasis& beta) {
    if (alpha.n != beta.n) throw DimensionMismatch("make_mu: mismatched real/imaginary parts");
    IrrationalBasis mu;
    mu.n = 2 * alpha.n;
    for (int i = 0; i < alpha.n; ++i) {
        mu.primes.push_back(alpha.primes[i]);
        mu.primes.push_back(beta.primes[i]);
    }
    validate_basis(mu, "make_mu");
    return mu;
}

PointSample sample_A_alpha(const IrrationalBasis& alpha, long long S, const Window& window,
                           Mode mode) {
    validate_basis(alpha, "sample_A_alpha");
    const int n = alpha.n;
    if (window.dim() != n) throw DimensionMismatch("sample_A_alpha: window dimension");
    if (S < 0) throw ConfigError("sample_A_alpha: budget S must be nonnegative");

    PointSample out;
    out.field = Field::R;
    out.rdim = n;
    out.meta_cols = n + 1;
    out.meta_names = {"s"};
    for (int i = 0; i < n; ++i) out.meta_names.push_back("s" + std::to_string(i + 1));

    const std::vector<double> ad = alpha.alpha();
    std::vector<Surd> ax;
    std::vector<Rat> wlo(n), whi(n);
    if (mode == Mode::Exact) {
        ax = alpha.alpha_exact();
        for (int i = 0; i < n; ++i) {
            wlo[i] = Rat(window.ax[i][0]);
            whi[i] = Rat(window.ax[i][1]);
        }
    }

    std::vector<long long> lo(n), hi(n), cur(n);
    std::vector<long long> m(n + 1);
    Eigen::VectorXd p(n);
    std::vector<Surd> shift_e(n);
    for (long long s = 0; s <= S; ++s) {
        bool empty = false;
        for (int i = 0; i < n; ++i) {
            IRange r = integer_range(window.ax[i][0], window.ax[i][1],
                                     -static_cast<double>(s) * ad[i]);
            lo[i] = std::max(r.lo, 0LL);
            hi[i] = r.hi;
            if (hi[i] < lo[i]) {
                empty = true;
                break;
            }
        }
        if (empty) continue;
        if (mode == Mode::Exact)
            for (int i = 0; i < n; ++i) shift_e[i] = Surd(Rat(static_cast<long>(s))) * ax[i];
        cur = lo;
        do {
            for (int i = 0; i < n; ++i)
                p[i] = static_cast<double>(cur[i]) + static_cast<double>(s) * ad[i];
            m[0] = s;
            for (int i = 0; i < n; ++i) m[i + 1] = cur[i];
            if (mode == Mode::Exact) {
                SVec e(n);
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    e[i] = Surd(static_cast<long>(cur[i])) + shift_e[i];
                    ok = (e[i] - Surd(wlo[i])).sign() >= 0 && (Surd(whi[i]) - e[i]).sign() >= 0;
                }
                if (ok) out.push(m, p, std::move(e));
            } else {
                if (window.contains(p)) out.push(m, p);
            }
        } while (odometer_next(cur, lo, hi));
    }

    out.params = json{{"kind", "A_alpha"},
                      {"primes", alpha.primes},
                      {"S", S},
                      {"window", window_json(window)},
                      {"mode", mode == Mode::Exact ? "exact" : "float"}};
    return out;
}

PointSample sample_A_alpha_beta(const IrrationalBasis& alpha, const IrrationalBasis& beta,
                                long long S, const CWindow& window, Mode mode) {
    validate_basis(alpha, "sample_A_alpha_beta");
    validate_basis(beta, "sample_A_alpha_beta");
    if (alpha.n != beta.n)
        throw DimensionMismatch("sample_A_alpha_beta: mismatched real/imaginary parts");
    const int n = alpha.n;
    const int d = 2 * n;
    if (window.logical_dim() != n)
        throw DimensionMismatch("sample_A_alpha_beta: window dimension");
    if (S < 0) throw ConfigError("sample_A_alpha_beta: budget S must be nonnegative");
    for (long pa : alpha.primes)
        for (long pb : beta.primes)
            if (pa == pb) throw Duplicate("sample_A_alpha_beta: shared radicand");

    PointSample out;
    out.field = Field::C;
    out.rdim = d;
    out.meta_cols = d + 1;
    out.meta_names = {"s"};
    for (int i = 0; i < n; ++i) {
        out.meta_names.push_back("m" + std::to_string(i + 1));
        out.meta_names.push_back("m" + std::to_string(i + 1) + "p");
    }

    // Interleave the real and imaginary witnesses so axis j of the stored
    // coordinates always shifts by s * sqrt(prime[j]).
    std::vector<double> ad(d);
    std::vector<Surd> axv(d);
    std::vector<std::array<double, 2>> bounds(d);
    for (int i = 0; i < n; ++i) {
        ad[2 * i] = -std::sqrt(static_cast<double>(alpha.primes[i]));
        ad[2 * i + 1] = -std::sqrt(static_cast<double>(beta.primes[i]));
        if (window.kind == CWindow::Box) {
            bounds[2 * i] = window.box.ax[2 * i];
            bounds[2 * i + 1] = window.box.ax[2 * i + 1];
        } else {
            bounds[2 * i] = {-window.radii[i], window.radii[i]};
            bounds[2 * i + 1] = {-window.radii[i], window.radii[i]};
        }
    }
    std::vector<Rat> wlo(d), whi(d), rsq(n);
    if (mode == Mode::Exact) {
        for (int i = 0; i < n; ++i) {
            axv[2 * i] = -Surd::root(alpha.primes[i]);
            axv[2 * i + 1] = -Surd::root(beta.primes[i]);
        }
        for (int j = 0; j < d; ++j) {
            wlo[j] = Rat(bounds[j][0]);
            whi[j] = Rat(bounds[j][1]);
        }
        if (window.kind == CWindow::Polydisc)
            for (int i = 0; i < n; ++i) rsq[i] = Rat(window.radii[i]) * Rat(window.radii[i]);
    }

    std::vector<long long> lo(d), hi(d), cur(d);
    std::vector<long long> m(d + 1);
    Eigen::VectorXd p(d);
    std::vector<Surd> shift_e(d);
    for (long long s = 0; s <= S; ++s) {
        bool empty = false;
        for (int j = 0; j < d; ++j) {
            IRange r = integer_range(bounds[j][0], bounds[j][1], -static_cast<double>(s) * ad[j]);
            lo[j] = std::max(r.lo, 0LL);
            hi[j] = r.hi;
            if (hi[j] < lo[j]) {
                empty = true;
                break;
            }
        }
        if (empty) continue;
        if (mode == Mode::Exact)
            for (int j = 0; j < d; ++j) shift_e[j] = Surd(Rat(static_cast<long>(s))) * axv[j];
        cur = lo;
        do {
            for (int j = 0; j < d; ++j)
                p[j] = static_cast<double>(cur[j]) + static_cast<double>(s) * ad[j];
            m[0] = s;
            for (int j = 0; j < d; ++j) m[j + 1] = cur[j];
            if (mode == Mode::Exact) {
                SVec e(d);
                for (int j = 0; j < d; ++j) e[j] = Surd(static_cast<long>(cur[j])) + shift_e[j];
                bool ok = true;
                if (window.kind == CWindow::Box) {
                    for (int j = 0; j < d && ok; ++j)
                        ok = (e[j] - Surd(wlo[j])).sign() >= 0 &&
                             (Surd(whi[j]) - e[j]).sign() >= 0;
                } else {
                    for (int i = 0; i < n && ok; ++i) {
                        Surd nm = e[2 * i] * e[2 * i] + e[2 * i + 1] * e[2 * i + 1];
                        ok = (Surd(rsq[i]) - nm).sign() >= 0;
                    }
                }
                if (ok) out.push(m, p, std::move(e));
            } else {
                bool ok = true;
                if (window.kind == CWindow::Box) {
                    for (int j = 0; j < d && ok; ++j)
                        ok = p[j] >= bounds[j][0] && p[j] <= bounds[j][1];
                } else {
                    for (int i = 0; i < n && ok; ++i)
                        ok = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1] <=
                             window.radii[i] * window.radii[i];
                }
                if (ok) out.push(m, p);
            }
        } while (odometer_next(cur, lo, hi));
    }

    json wj;
    if (window.kind == CWindow::Box)
        wj = json{{"kind", "box"}, {"axes", window_json(window.box)}};
    else
        wj = json{{"kind", "polydisc"}, {"radii", window.radii}};
    out.params = json{{"kind", "A_alpha_beta"},
                      {"alpha_primes", alpha.primes},
                      {"beta_primes", beta.primes},
                      {"S", S},
                      {"window", wj},
                      {"mode", mode == Mode::Exact ? "exact" : "float"}};
    return out;
}

PointSample phi_sample(const PointSample& complex_sample) {
    if (complex_sample.field != Field::C)
        throw ConfigError("phi_sample: input must be a complex sample");
    PointSample out = complex_sample;
    out.field = Field::R;
    out.meta_names.clear();
    out.meta_names.push_back("s");
    for (int i = 1; i < out.meta_cols; ++i) out.meta_names.push_back("s" + std::to_string(i));
    out.params = json{{"kind", "phi"}, {"of", complex_sample.params}};
    return out;
}

PointSample sample_A2(double th1, double th2, const RadialGrid& rg, long long S,
                      const Window& window) {
    if (window.dim() != 4) throw DimensionMismatch("sample_A2: window dimension");
    if (S < 0) throw ConfigError("sample_A2: budget S must be nonnegative");
    if (rg.count < 1 || !(rg.step > 0)) throw ConfigError("sample_A2: bad radial grid");

    PointSample out;
    out.field = Field::C;
    out.rdim = 4;
    out.meta_cols = 4;
    out.meta_names = {"n1", "n2", "j1", "j2"};

    const long long N = S + 1;
    // One pass of trigonometry per coordinate factor; the joint loop then
    // only combines precomputed pairs.
    std::vector<std::array<double, 2>> c1(static_cast<size_t>(rg.count) * N);
    std::vector<std::array<double, 2>> c2(static_cast<size_t>(rg.count) * N);
    for (int j = 0; j < rg.count; ++j) {
        double r = rg.value(j);
        for (long long nn = 0; nn < N; ++nn) {
            double a1 = 2.0 * M_PI * static_cast<double>(nn) * th1;
            double a2 = 2.0 * M_PI * static_cast<double>(nn) * th2;
            c1[static_cast<size_t>(j) * N + nn] = {r * std::cos(a1), r * std::sin(a1)};
            c2[static_cast<size_t>(j) * N + nn] = {r * std::cos(a2), r * std::sin(a2)};
        }
    }

    Eigen::VectorXd p(4);
    std::vector<long long> m(4);
    for (int j1 = 0; j1 < rg.count; ++j1)
        for (long long n1 = 0; n1 < N; ++n1) {
            const auto& z1 = c1[static_cast<size_t>(j1) * N + n1];
            if (z1[0] < window.ax[0][0] || z1[0] > window.ax[0][1] || z1[1] < window.ax[1][0] ||
                z1[1] > window.ax[1][1])
                continue;
            for (int j2 = 0; j2 < rg.count; ++j2)
                for (long long n2 = 0; n2 < N; ++n2) {
                    const auto& z2 = c2[static_cast<size_t>(j2) * N + n2];
                    if (z2[0] < window.ax[2][0] || z2[0] > window.ax[2][1] ||
                        z2[1] < window.ax[3][0] || z2[1] > window.ax[3][1])
                        continue;
                    p[0] = z1[0];
                    p[1] = z1[1];
                    p[2] = z2[0];
                    p[3] = z2[1];
                    m[0] = n1;
                    m[1] = n2;
                    m[2] = j1;
                    m[3] = j2;
                    out.push(m, p);
                }
        }

    out.params = json{{"kind", "A2"},
                      {"th1", th1},
                      {"th2", th2},
                      {"radial_step", rg.step},
                      {"radial_count", rg.count},
                      {"S", S},
                      {"window", window_json(window)}};
    return out;
}

RayDescription line_trace_A2(double th1, double th2, std::complex<double> a1,
                             std::complex<double> a2, long bound, double tol) {
    if (a1 == std::complex<double>(0.0) && a2 == std::complex<double>(0.0))
        throw AllZeroInput("line_trace_A2: zero direction");
    RayDescription rd;
    // Every set point has both coordinates on a circle of positive radius, so
    // a coordinate line meets the set nowhere.
    if (a1 == std::complex<double>(0.0) || a2 == std::complex<double>(0.0)) {
        rd.kind = RayDescription::Empty;
        return rd;
    }
    if (bound < 0) throw ConfigError("line_trace_A2: bound must be nonnegative");

    const double target = std::arg(a2 / a1) / (2.0 * M_PI);
    double best = std::numeric_limits<double>::infinity();
    for (long n1 = 0; n1 <= bound; ++n1)
        for (long n2 = 0; n2 <= bound; ++n2) {
            double frac = static_cast<double>(n2) * th2 - static_cast<double>(n1) * th1;
            double k = std::round(target - frac);
            if (std::abs(k) > static_cast<double>(bound)) continue;
            double dist = std::abs(frac + k - target);
            if (dist > tol) continue;
            ++rd.matches;
            if (dist < best) {
                best = dist;
                rd.n1 = n1;
                rd.n2 = n2;
                rd.k = static_cast<long>(k);
            }
        }
    if (rd.matches == 0) {
        rd.kind = RayDescription::NoneUpToBound;
        return rd;
    }
    rd.kind = RayDescription::Found;
    Eigen::Vector4d v;
    v << a1.real(), a1.imag(), a2.real(), a2.imag();
    rd.v = v / v.norm();
    return rd;
}

PointSample sample_B(const RadialGrid& rg, const AngleGrid& ag) {
    if (ag.denom < 2 || ag.denom % 2 != 0)
        throw ConfigError("sample_B: angle denominator must be even and >= 2");
    if (ag.planted < 0) throw ConfigError("sample_B: planted count must be nonnegative");
    if (rg.count < 1 || !(rg.step > 0)) throw ConfigError("sample_B: bad radial grid");

    PointSample out;
    out.field = Field::R;
    out.rdim = 2;
    out.meta_cols = 3;
    out.meta_names = {"angle_kind", "angle_index", "radius_index"};

    auto emit = [&](long kind, long idx, double theta) {
        double c = std::cos(2.0 * M_PI * theta);
        double sn = std::sin(2.0 * M_PI * theta);
        for (int j = 0; j < rg.count; ++j) {
            double r = rg.value(j);
            Eigen::VectorXd p(2);
            p << r * c, r * sn;
            out.push({kind, idx, j}, p);
        }
    };

    // Rational angles fill [0, 1/2) only; their antipodes in [1/2, 1) are
    // deliberately absent, which is what makes line traces one-sided.
    for (int j = 0; j < ag.denom / 2; ++j)
        emit(0, j, static_cast<double>(j) / static_cast<double>(ag.denom));
    const double irr = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < ag.planted; ++j)
        emit(1, j, 0.5 + std::fmod(static_cast<double>(j + 1) * irr, 0.5));

    out.params = json{{"kind", "B"},
                      {"angle_denom", ag.denom},
                      {"planted", ag.planted},
                      {"radial_step", rg.step},
                      {"radial_count", rg.count}};
    return out;
}

PointSample sample_Z_module(const SMat& generators, long bound, const Window& window,
                            bool* warn_more_gens_than_dim) {
    if (generators.empty()) throw AllZeroInput("sample_Z_module: no generators");
    const int g = static_cast<int>(generators.size());
    const int n = static_cast<int>(generators[0].size());
    bool any_nonzero = false;
    for (const auto& row : generators) {
        if (static_cast<int>(row.size()) != n)
            throw DimensionMismatch("sample_Z_module: ragged generator list");
        for (const auto& e : row) any_nonzero = any_nonzero || !e.is_zero();
    }
    if (!any_nonzero) throw AllZeroInput("sample_Z_module: all generators are zero");
    if (window.dim() != n) throw DimensionMismatch("sample_Z_module: window dimension");
    if (bound < 0) throw ConfigError("sample_Z_module: bound must be nonnegative");
    if (warn_more_gens_than_dim) *warn_more_gens_than_dim = g > n;

    PointSample out;
    out.field = Field::R;
    out.rdim = n;
    out.meta_cols = g;
    for (int i = 0; i < g; ++i) out.meta_names.push_back("k" + std::to_string(i + 1));

    std::vector<Rat> wlo(n), whi(n);
    for (int j = 0; j < n; ++j) {
        wlo[j] = Rat(window.ax[j][0]);
        whi[j] = Rat(window.ax[j][1]);
    }

    std::vector<long long> lo(g, -bound), hi(g, bound), cur(g, -bound);
    Eigen::VectorXd p(n);
    do {
        SVec e(n);
        for (int i = 0; i < g; ++i) {
            if (cur[i] == 0) continue;
            Surd c(static_cast<long>(cur[i]));
            for (int j = 0; j < n; ++j) e[j] += c * generators[i][j];
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            ok = (e[j] - Surd(wlo[j])).sign() >= 0 && (Surd(whi[j]) - e[j]).sign() >= 0;
        if (ok) {
            for (int j = 0; j < n; ++j) p[j] = e[j].to_double();
            out.push(cur, p, std::move(e));
        }
    } while (odometer_next(cur, lo, hi));

    json gj = json::array();
    for (const auto& row : generators) {
        json rj = json::array();
        for (const auto& e : row) rj.push_back(e.str());
        gj.push_back(rj);
    }
    out.params = json{{"kind", "Z_module"},
                      {"generators", gj},
                      {"bound", bound},
                      {"window", window_json(window)},
                      {"more_generators_than_dim", g > n}};
    return out;
}

PointSample subspace_trace(const PointSample& sample, const Subspace& M, double tol, Mode mode) {
    if (M.n != sample.rdim) throw DimensionMismatch("subspace_trace: ambient dimensions");
    const bool exact = mode == Mode::Exact && sample.has_exact() && M.has_exact();

    PointSample out;
    out.field = sample.field;
    out.rdim = sample.rdim;
    out.meta_cols = sample.meta_cols;
    out.meta_names = sample.meta_names;
    out.aux_dim = M.r;
    for (size_t i = 0; i < sample.size(); ++i) {
        Eigen::VectorXd p = sample.pt(i);
        bool in = exact ? member_exact(sample.exact[i], M) : membership_distance(p, M) <= tol;
        if (!in) continue;
        out.push(sample.meta_row(i), p);
        if (sample.has_exact()) out.exact.push_back(sample.exact[i]);
        out.push_aux(M.coords(p));
    }
    out.params = json{{"kind", "subspace_trace"},
                      {"tol", tol},
                      {"exact", exact},
                      {"subspace_dim", M.r},
                      {"base", sample.params}};
    return out;
}

}  // namespace hyperlab
