#include "hyperlab/semigroup.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

namespace hyperlab {

namespace {

constexpr double kOverflowNorm = 1e300;

double family_scale(const std::vector<Mat>& gens) {
    double s = 0;
    for (const auto& g : gens) s = std::max(s, g.a.cwiseAbs().maxCoeff());
    return s;
}

json window_json(const Window& w) {
    json a = json::array();
    for (auto& [lo, hi] : w.ax) a.push_back({lo, hi});
    return a;
}

// --- pruned product enumeration -------------------------------------------
//
// Norm bounds: applying generator j between 0 and K times scales the norm by
// at least min(1, smin_j)^K and at most max(1, smax_j)^K.  A branch whose
// best case still misses [floor, reach] has no point inside the window.

struct EnumBounds {
    std::vector<double> suffix_low;
    std::vector<double> suffix_high;
    std::vector<double> smin;
};

EnumBounds make_bounds(const std::vector<Eigen::MatrixXd>& gens, long long K) {
    const int g = static_cast<int>(gens.size());
    EnumBounds b;
    b.suffix_low.assign(g + 1, 1.0);
    b.suffix_high.assign(g + 1, 1.0);
    b.smin.resize(g);
    for (int i = g - 1; i >= 0; --i) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(gens[i]);
        const auto& sv = svd.singularValues();
        double smax = sv(0);
        double smin = sv(sv.size() - 1);
        b.smin[i] = smin;
        b.suffix_low[i] =
            b.suffix_low[i + 1] * std::pow(std::min(1.0, smin), static_cast<double>(K));
        b.suffix_high[i] =
            b.suffix_high[i + 1] * std::pow(std::max(1.0, smax), static_cast<double>(K));
    }
    return b;
}

void enumerate_products(const std::vector<Eigen::MatrixXd>& gens, const Eigen::VectorXd& v0,
                        long long K, double reach, double floor_norm,
                        const std::function<void(const std::vector<long long>&,
                                                 const Eigen::VectorXd&)>& visit) {
    const int g = static_cast<int>(gens.size());
    const EnumBounds b = make_bounds(gens, K);
    const double hi = reach * (1 + 1e-12) + 1e-12;
    const double lo = floor_norm * (1 - 1e-12) - 1e-12;
    std::vector<long long> k(g, 0);
    std::function<void(int, Eigen::VectorXd)> rec = [&](int i, Eigen::VectorXd w) {
        double nw = w.norm();
        if (nw > kOverflowNorm) throw Overflow();
        if (nw * b.suffix_low[i] > hi) return;
        if (nw * b.suffix_high[i] < lo) return;
        if (i == g) {
            visit(k, w);
            return;
        }
        for (long long kk = 0;; ++kk) {
            k[i] = kk;
            rec(i + 1, w);
            if (kk == K) break;
            w = gens[i] * w;
            double n2 = w.norm();
            if (n2 > kOverflowNorm) throw Overflow();
            // a non-contracting generator only grows the branch further
            if (b.smin[i] >= 1.0 && n2 * b.suffix_low[i + 1] > hi) break;
        }
        k[i] = 0;
    };
    rec(0, v0);
}

// --- coordinate components -------------------------------------------------
//
// Coordinates coupled by a generator entry share a component; generators
// acting non-identically on several components correlate their exponents, so
// those components merge too.  Each remaining component evolves under its own
// generator restrictions independently of the others, and a box window
// factors across them.

struct Component {
    std::vector<int> coords;
    std::vector<Eigen::MatrixXd> gens;  // non-identity restrictions
};

int uf_find(std::vector<int>& p, int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
}

std::vector<Component> decompose(const std::vector<Eigen::MatrixXd>& rg, int rd,
                                 double couple_tol, double ident_tol) {
    std::vector<int> par(rd);
    std::iota(par.begin(), par.end(), 0);
    auto uni = [&](int a, int b) { par[uf_find(par, a)] = uf_find(par, b); };
    for (const auto& R : rg)
        for (int a = 0; a < rd; ++a)
            for (int c = 0; c < rd; ++c)
                if (a != c && std::abs(R(a, c)) > couple_tol) uni(a, c);
    bool merged = true;
    while (merged) {
        merged = false;
        for (const auto& R : rg) {
            int first = -1;
            for (int a = 0; a < rd; ++a) {
                bool nontrivial = std::abs(R(a, a) - 1.0) > ident_tol;
                for (int c = 0; c < rd && !nontrivial; ++c)
                    if (c != a && std::abs(R(a, c)) > couple_tol) nontrivial = true;
                if (!nontrivial) continue;
                int root = uf_find(par, a);
                if (first < 0) {
                    first = root;
                } else if (root != first) {
                    uni(root, first);
                    first = uf_find(par, first);
                    merged = true;
                }
            }
        }
    }
    std::map<int, Component> by_root;
    for (int a = 0; a < rd; ++a) by_root[uf_find(par, a)].coords.push_back(a);
    std::vector<Component> out;
    out.reserve(by_root.size());
    for (auto& [root, c] : by_root) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const Component& x, const Component& y) { return x.coords[0] < y.coords[0]; });
    for (auto& c : out) {
        const int m = static_cast<int>(c.coords.size());
        for (const auto& R : rg) {
            Eigen::MatrixXd sub(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) sub(i, j) = R(c.coords[i], c.coords[j]);
            if ((sub - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > ident_tol)
                c.gens.push_back(std::move(sub));
        }
    }
    return out;
}

Window sub_window(const Window& w, const std::vector<int>& coords) {
    std::vector<std::array<double, 2>> ax;
    ax.reserve(coords.size());
    for (int c : coords) ax.push_back(w.ax[c]);
    return Window(std::move(ax));
}

double ambient_orbit_coverage(const std::vector<Component>& comps, const Eigen::VectorXd& w0,
                              long long K, const Window& window, double eps, json* detail) {
    double cov = 1.0;
    for (const auto& c : comps) {
        Window sw = sub_window(window, c.coords);
        GridCover cover(sw, eps);
        Eigen::VectorXd v0(c.coords.size());
        for (size_t i = 0; i < c.coords.size(); ++i) v0[static_cast<int>(i)] = w0[c.coords[i]];
        enumerate_products(c.gens, v0, K, sw.reach(), sw.floor_norm(),
                           [&](const std::vector<long long>&, const Eigen::VectorXd& w) {
                               cover.mark(w);
                           });
        double cc = cover.coverage();
        if (detail)
            detail->push_back(json{{"coords", c.coords},
                                   {"generators", c.gens.size()},
                                   {"coverage", cc}});
        cov *= cc;
    }
    return cov;
}

// Columns of Q that are signed standard basis vectors make M a coordinate
// subspace; the factored trace path applies then.
struct MSupport {
    bool coordinate = false;
    std::vector<int> axes;
    std::vector<double> sign;
};

MSupport coord_support(const Subspace& M, double tol) {
    MSupport s;
    s.axes.assign(M.r, -1);
    s.sign.assign(M.r, 0.0);
    for (int j = 0; j < M.r; ++j) {
        int nz = -1;
        double sg = 0;
        for (int i = 0; i < M.n; ++i) {
            double v = M.Q(i, j);
            if (std::abs(v) <= tol) continue;
            if (nz >= 0 || std::abs(std::abs(v) - 1.0) > tol) return s;
            nz = i;
            sg = v > 0 ? 1.0 : -1.0;
        }
        if (nz < 0) return s;
        s.axes[j] = nz;
        s.sign[j] = sg;
    }
    s.coordinate = true;
    return s;
}

double m_trace_coverage(int rdim, const std::vector<Eigen::MatrixXd>& rg,
                        const std::vector<Component>& comps, const Eigen::VectorXd& x,
                        const Subspace& M, const Window& m_window, double eps, long long K,
                        std::string* method) {
    const MSupport sup = coord_support(M, 1e-9);
    bool factored = sup.coordinate;
    std::vector<char> in_sup(rdim, 0);
    if (factored) {
        for (int a : sup.axes) in_sup[a] = 1;
        for (int i = 0; i < x.size() && factored; ++i)
            if (!in_sup[i] && std::abs(x[i]) > 1e-9) factored = false;
        if (factored)
            for (const auto& c : comps) {
                bool any = false, all = true;
                for (int a : c.coords) {
                    if (in_sup[a]) any = true;
                    else all = false;
                }
                if (any && !all) {
                    factored = false;
                    break;
                }
            }
    }
    if (factored) {
        if (method) *method = "factored";
        double cov = 1.0;
        for (const auto& c : comps) {
            if (!in_sup[c.coords[0]]) continue;  // starts and stays exactly at zero
            std::vector<int> maxes, pos;
            std::vector<double> sgs;
            for (int j = 0; j < M.r; ++j) {
                auto it = std::find(c.coords.begin(), c.coords.end(), sup.axes[j]);
                if (it == c.coords.end()) continue;
                maxes.push_back(j);
                sgs.push_back(sup.sign[j]);
                pos.push_back(static_cast<int>(it - c.coords.begin()));
            }
            std::vector<std::array<double, 2>> ax;
            for (int j : maxes) ax.push_back(m_window.ax[j]);
            Window sw(std::move(ax));
            GridCover cover(sw, eps);
            Eigen::VectorXd v0(c.coords.size());
            for (size_t i = 0; i < c.coords.size(); ++i) v0[static_cast<int>(i)] = x[c.coords[i]];
            Eigen::VectorXd mm(maxes.size());
            enumerate_products(c.gens, v0, K, sw.reach(), sw.floor_norm(),
                               [&](const std::vector<long long>&, const Eigen::VectorXd& w) {
                                   for (size_t t = 0; t < pos.size(); ++t)
                                       mm[static_cast<int>(t)] = sgs[t] * w[pos[t]];
                                   cover.mark(mm);
                               });
            cov *= cover.coverage();
        }
        return cov;
    }
    if (method) *method = "flat";
    const double reach = m_window.reach();
    const double mtol = 1e-7 * (1 + reach);
    GridCover cover(m_window, eps);
    std::vector<Eigen::MatrixXd> gens;
    for (const auto& R : rg)
        if ((R - Eigen::MatrixXd::Identity(rdim, rdim)).cwiseAbs().maxCoeff() > 1e-12)
            gens.push_back(R);
    enumerate_products(gens, x, K, reach + mtol, 0.0,
                       [&](const std::vector<long long>&, const Eigen::VectorXd& w) {
                           if (membership_distance(w, M) <= mtol) cover.mark(M.coords(w));
                       });
    return cover.coverage();
}

// Structural candidate: the change of basis applied to the block-head vector.
Eigen::VectorXcd structural_candidate(const NormalForm& nf) { return nf.P.a * u_eta(nf.eta); }

void snap_small(Eigen::VectorXd& x, double tol) {
    for (int i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) <= tol) x[i] = 0.0;
}

}  // namespace

MatrixSemigroup make_semigroup(std::vector<Mat> generators) {
    if (generators.empty()) throw ConfigError("semigroup needs at least one generator");
    const Field f = generators[0].field;
    const int n = generators[0].n();
    for (const auto& g : generators) {
        if (g.field != f) throw ConfigError("semigroup generators mix fields");
        if (g.n() != n) throw DimensionMismatch("semigroup generator sizes differ");
    }
    const double tol = 10 * default_tol(family_scale(generators));
    for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (commutator_norm(generators[i], generators[j]) > tol) throw NotCommuting();
    MatrixSemigroup G;
    G.field = f;
    G.n = n;
    G.abelian = true;
    G.generators = std::move(generators);
    return G;
}

MatrixSemigroup make_semigroup(std::vector<Mat> generators, std::vector<QMat> exact) {
    MatrixSemigroup G = make_semigroup(std::move(generators));
    if (exact.size() != G.generators.size())
        throw DimensionMismatch("one exact matrix per generator required");
    const double tol = 1e-12 * (1 + family_scale(G.generators));
    for (size_t i = 0; i < exact.size(); ++i) {
        if (static_cast<int>(exact[i].size()) != G.n)
            throw DimensionMismatch("exact generator size");
        for (int r = 0; r < G.n; ++r) {
            if (static_cast<int>(exact[i][r].size()) != G.n)
                throw DimensionMismatch("exact generator size");
            for (int c = 0; c < G.n; ++c)
                if (std::abs(exact[i][r][c].get_d() - G.generators[i].a(r, c).real()) > tol ||
                    std::abs(G.generators[i].a(r, c).imag()) > tol)
                    throw ConfigError("exact generators disagree with float generators");
        }
    }
    G.exact = std::move(exact);
    return G;
}

Eigen::MatrixXd realify_mat(const Mat& A) {
    if (A.field == Field::R) return A.re();
    const int n = A.n();
    Eigen::MatrixXd R(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::complex<double> z = A.a(i, j);
            R(2 * i, 2 * j) = z.real();
            R(2 * i, 2 * j + 1) = -z.imag();
            R(2 * i + 1, 2 * j) = z.imag();
            R(2 * i + 1, 2 * j + 1) = z.real();
        }
    return R;
}

PointSample orbit(const MatrixSemigroup& G, const Eigen::VectorXcd& v, long long K,
                  const Window& window, Mode mode) {
    if (static_cast<int>(v.size()) != G.n) throw DimensionMismatch("orbit: start vector size");
    if (G.field == Field::R && v.imag().norm() > 0)
        throw ConfigError("orbit: real semigroup requires a real start vector");
    if (window.dim() != G.rdim()) throw DimensionMismatch("orbit: window dimension");
    if (K < 0) throw ConfigError("orbit: exponent cap must be nonnegative");

    const int g = static_cast<int>(G.generators.size());
    const bool exact = mode == Mode::Exact && G.has_exact() && G.field == Field::R;

    PointSample out;
    out.field = G.field;
    out.rdim = G.rdim();
    out.meta_cols = g;
    for (int i = 0; i < g; ++i) out.meta_names.push_back("k" + std::to_string(i + 1));

    std::vector<Eigen::MatrixXd> rg;
    rg.reserve(g);
    for (const auto& A : G.generators) rg.push_back(realify_mat(A));

    std::vector<Rat> wlo(out.rdim), whi(out.rdim);
    for (int i = 0; i < out.rdim; ++i) {
        wlo[i] = Rat(window.ax[i][0]);
        whi[i] = Rat(window.ax[i][1]);
    }
    QVec v0q;
    if (exact)
        for (int i = 0; i < G.n; ++i) v0q.push_back(Rat(v[i].real()));

    const EnumBounds b = make_bounds(rg, K);
    const double hi = window.reach() * (1 + 1e-12) + 1e-12;
    const double lo = window.floor_norm() * (1 - 1e-12) - 1e-12;
    std::unordered_set<std::string> seen;
    std::vector<long long> k(g, 0);

    std::function<void(int, Eigen::VectorXd, QVec)> rec = [&](int i, Eigen::VectorXd w, QVec wq) {
        double nw = w.norm();
        if (nw > kOverflowNorm) throw Overflow();
        if (nw * b.suffix_low[i] > hi) return;
        if (nw * b.suffix_high[i] < lo) return;
        if (i == g) {
            bool ok;
            if (exact) {
                ok = true;
                for (int a = 0; a < out.rdim && ok; ++a) ok = wq[a] >= wlo[a] && wq[a] <= whi[a];
            } else {
                ok = window.contains(w);
            }
            if (!ok) return;
            std::string key(reinterpret_cast<const char*>(w.data()), sizeof(double) * w.size());
            if (!seen.insert(std::move(key)).second) return;
            if (exact) {
                SVec e(out.rdim);
                for (int a = 0; a < out.rdim; ++a) e[a] = Surd(wq[a]);
                out.push(k, w, std::move(e));
            } else {
                out.push(k, w);
            }
            return;
        }
        for (long long kk = 0;; ++kk) {
            k[i] = kk;
            rec(i + 1, w, wq);
            if (kk == K) break;
            w = rg[i] * w;
            if (exact) wq = qmat_mul(G.exact[i], wq);
            double n2 = w.norm();
            if (n2 > kOverflowNorm) throw Overflow();
            if (b.smin[i] >= 1.0 && n2 * b.suffix_low[i + 1] > hi) break;
        }
        k[i] = 0;
    };
    rec(0, realify(G.field, v), v0q);

    out.params = json{{"kind", "orbit"},
                      {"field", field_name(G.field)},
                      {"generators", g},
                      {"K", K},
                      {"window", window_json(window)},
                      {"mode", exact ? "exact" : "float"}};
    return out;
}

ProbeResult hypercyclicity_probe(const MatrixSemigroup& G, const Window& window, double eps,
                                 const std::vector<long long>& budgets, const Thresholds& thr) {
    if (window.dim() != G.rdim()) throw DimensionMismatch("probe: window dimension");
    ProbeResult pr;
    pr.nf = normal_form(G.generators, G.field);
    pr.candidate = structural_candidate(pr.nf);
    Eigen::VectorXd w0 = realify(G.field, pr.candidate);

    std::vector<Eigen::MatrixXd> rg;
    for (const auto& A : G.generators) rg.push_back(realify_mat(A));
    const double scale = family_scale(G.generators);
    const auto comps = decompose(rg, G.rdim(), 1e-12 * (1 + scale), 1e-9 * (1 + scale));

    std::vector<double> trend;
    json comp_detail = json::array();
    for (size_t bi = 0; bi < budgets.size(); ++bi) {
        json* d = bi + 1 == budgets.size() ? &comp_detail : nullptr;
        trend.push_back(ambient_orbit_coverage(comps, w0, budgets[bi], window, eps, d));
    }
    pr.report = report_from_trend(trend, eps, budgets, thr);
    pr.verdict = pr.report.verdict;
    pr.details = json{{"method", comps.size() > 1 ? "factored" : "flat"},
                      {"components", comp_detail}};
    return pr;
}

Subspace canonical_invariant_subspace(const MatrixSemigroup& G) {
    NormalForm nf = normal_form(G.generators, G.field);
    const auto blocks = blocks_of(nf.eta);
    if (G.field == Field::C) {
        const BlockSpec& b = blocks.front();
        return complex_line(nf.P.a.col(b.offset + b.size - 1));
    }
    for (const auto& b : blocks)
        if (b.kind == BlockSpec::T)
            return subspace_from_basis({nf.P.re().col(b.offset + b.size - 1)});
    if (G.n == 2) throw NoNontrivialCanonical();
    const BlockSpec& b = blocks.front();
    return subspace_from_basis(
        {nf.P.re().col(b.offset + b.size - 2), nf.P.re().col(b.offset + b.size - 1)});
}

ProbeResult subspace_hypercyclicity_probe(const MatrixSemigroup& G, const Subspace& M,
                                          const Window& m_window, double eps,
                                          const std::vector<long long>& budgets,
                                          const Thresholds& thr) {
    if (M.n != G.rdim()) throw DimensionMismatch("subspace probe: ambient dimension");
    if (m_window.dim() != M.r) throw DimensionMismatch("subspace probe: window dimension");
    ProbeResult pr;
    pr.nf = normal_form(G.generators, G.field);
    Eigen::VectorXd x = project(realify(G.field, structural_candidate(pr.nf)), M);
    snap_small(x, 1e-9);
    if (x.norm() < 1e-9) {
        x = M.Q.rowwise().sum() / std::sqrt(static_cast<double>(M.r));
        snap_small(x, 1e-9);
    }
    pr.candidate = unrealify(G.field, x);

    std::vector<Eigen::MatrixXd> rg;
    for (const auto& A : G.generators) rg.push_back(realify_mat(A));
    const double scale = family_scale(G.generators);
    const auto comps = decompose(rg, G.rdim(), 1e-12 * (1 + scale), 1e-9 * (1 + scale));

    std::vector<double> trend;
    std::string method;
    for (long long K : budgets)
        trend.push_back(m_trace_coverage(G.rdim(), rg, comps, x, M, m_window, eps, K, &method));
    pr.report = report_from_trend(trend, eps, budgets, thr);
    pr.verdict = pr.report.verdict;
    pr.details = json{{"method", method}, {"subspace_dim", M.r}};
    return pr;
}

std::optional<Eigen::VectorXcd> witness_in_subspace(const MatrixSemigroup& G, const Subspace& M,
                                                    const Window& m_window, double eps,
                                                    long long budget, const Thresholds& thr) {
    if (M.n != G.rdim()) throw DimensionMismatch("witness: ambient dimension");
    if (m_window.dim() != M.r) throw DimensionMismatch("witness: window dimension");
    NormalForm nf = normal_form(G.generators, G.field);

    std::vector<Eigen::MatrixXd> rg;
    for (const auto& A : G.generators) rg.push_back(realify_mat(A));
    const double scale = family_scale(G.generators);
    const auto comps = decompose(rg, G.rdim(), 1e-12 * (1 + scale), 1e-9 * (1 + scale));

    std::vector<Eigen::VectorXd> candidates;
    Eigen::VectorXd x0 = project(realify(G.field, structural_candidate(nf)), M);
    snap_small(x0, 1e-9);
    if (x0.norm() > 1e-9) candidates.push_back(x0);
    std::vector<Eigen::VectorXd> dirs;
    if (M.r <= 4) {
        // all sign patterns over the intrinsic axes
        std::vector<int> c(M.r, -1);
        while (true) {
            Eigen::VectorXd d(M.r);
            bool zero = true;
            for (int i = 0; i < M.r; ++i) {
                d[i] = c[i];
                zero = zero && c[i] == 0;
            }
            if (!zero) dirs.push_back(d);
            int i = M.r - 1;
            while (i >= 0 && c[i] == 1) c[i--] = -1;
            if (i < 0) break;
            ++c[i];
        }
    } else {
        for (int i = 0; i < M.r; ++i)
            for (double sg : {1.0, -1.0}) {
                Eigen::VectorXd d = Eigen::VectorXd::Zero(M.r);
                d[i] = sg;
                dirs.push_back(d);
            }
    }
    for (double sc : {0.5, 1.0, 2.0})
        for (const auto& d : dirs) {
            Eigen::VectorXd x = M.Q * (sc * d);
            snap_small(x, 1e-9);
            candidates.push_back(std::move(x));
        }

    for (const auto& x : candidates) {
        double cov = m_trace_coverage(G.rdim(), rg, comps, x, M, m_window, eps, budget, nullptr);
        if (cov >= thr.dense) return unrealify(G.field, x);
    }
    return std::nullopt;
}

PointSample spectrum(const MatrixSemigroup& G, int block, long long K, const Window& window,
                     bool moduli) {
    NormalForm nf = normal_form(G.generators, G.field);
    const auto blocks = blocks_of(nf.eta);
    if (block < 0 || block >= static_cast<int>(blocks.size()))
        throw ConfigError("spectrum: no such block");
    const auto& eigs = nf.block_eigs[block];

    std::vector<Mat> sg;
    if (moduli) {
        for (auto l : eigs) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::abs(l);
            sg.push_back(Mat(Field::R, m));
        }
    } else {
        bool allreal = true;
        for (auto l : eigs) allreal = allreal && std::abs(l.imag()) <= 1e-12 * (1 + std::abs(l));
        for (auto l : eigs) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = (G.field == Field::R && allreal) ? std::complex<double>(l.real()) : l;
            sg.push_back(Mat(G.field == Field::R && allreal ? Field::R : Field::C, m));
        }
    }
    MatrixSemigroup S = make_semigroup(std::move(sg));
    Eigen::VectorXcd one(1);
    one << 1.0;
    PointSample out = orbit(S, one, K, window, Mode::Float);
    out.params["kind"] = "spectrum";
    out.params["block"] = block;
    out.params["moduli"] = moduli;
    return out;
}

MatrixSemigroup GTheta::sg() const {
    const double th = theta.to_double();
    auto scalar = [](std::complex<double> z) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = z;
        return Mat::complex(m);
    };
    return make_semigroup({scalar(static_cast<double>(p)),
                           scalar(1.0 / static_cast<double>(q)),
                           scalar(std::polar(1.0, M_PI * th))});
}

GTheta make_G_theta(long p, long q, const Surd& theta) {
    if (p < 2 || q < 2) throw ConfigError("G_theta: p and q must be at least 2");
    if (std::gcd(p, q) != 1) throw NotCoprime();
    if (theta.is_rational()) throw RationalTheta();
    GTheta g;
    g.p = p;
    g.q = q;
    g.theta = theta;
    return g;
}

PointSample g_theta_orbit(const GTheta& g, long long K, const Window& window) {
    if (window.dim() != 2) throw DimensionMismatch("g_theta_orbit: window dimension");
    if (K < 0) throw ConfigError("g_theta_orbit: exponent cap must be nonnegative");

    PointSample out;
    out.field = Field::C;
    out.rdim = 2;
    out.meta_cols = 3;
    out.meta_names = {"k", "m", "s"};

    const double th = g.theta.to_double();
    const double reach = window.reach() * (1 + 1e-12) + 1e-12;
    const double fl = window.floor_norm() * (1 - 1e-12) - 1e-12;
    Eigen::VectorXd pt(2);
    for (long long m = 0; m <= K; ++m) {
        const Rat qm = rat_pow(Rat(g.q), m);
        for (long long k = 0; k <= K; ++k) {
            const Rat r = rat_pow(Rat(g.p), k) / qm;
            const double rd = r.get_d();
            if (rd > reach) break;  // grows with k
            if (rd < fl) continue;
            for (long long s = 0; s <= K; ++s) {
                const double ang = (M_PI * static_cast<double>(s)) * th;
                pt[0] = rd * std::cos(ang);
                pt[1] = rd * std::sin(ang);
                if (window.contains(pt)) out.push({k, m, s}, pt);
            }
        }
    }
    out.params = json{{"kind", "G_theta_orbit"},
                      {"p", g.p},
                      {"q", g.q},
                      {"theta", g.theta.str()},
                      {"K", K},
                      {"window", window_json(window)}};
    return out;
}

GThetaLineTrace line_trace_G_theta(const GTheta& g, long long bound, double reach) {
    if (bound < 0) throw ConfigError("line_trace_G_theta: bound must be nonnegative");
    GThetaLineTrace t;
    const Rat rr(reach);
    for (long long m = 0; m <= bound; ++m) {
        const Rat qm = rat_pow(Rat(g.q), m);
        for (long long k = 0; k <= bound; ++k) {
            Rat v = rat_pow(Rat(g.p), k) / qm;
            if (v > rr) break;
            t.values.push_back(std::move(v));
        }
    }
    std::sort(t.values.begin(), t.values.end());
    if (bound == 0) return t;  // sin_guard stays 1: no nonzero phase index
    const double th = g.theta.to_double();
    double mn = std::numeric_limits<double>::infinity();
    for (long long s = 1; s <= bound; ++s)
        mn = std::min(mn, std::abs(std::sin((M_PI * static_cast<double>(s)) * th)));
    t.sin_guard = mn;
    return t;
}

Javaheri make_javaheri(const QMat& A, const QMat& B) {
    const int n = static_cast<int>(A.size());
    if (n == 0 || static_cast<int>(B.size()) != n)
        throw DimensionMismatch("javaheri: matrices must be square of equal size");
    for (const QMat* M : {&A, &B})
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>((*M)[i].size()) != n)
                throw DimensionMismatch("javaheri: ragged matrix");
            for (int j = i + 1; j < n; ++j)
                if ((*M)[i][j] != 0) throw ConfigError("javaheri: matrices must be lower triangular");
            if ((*M)[i][i] == 0) throw ConfigError("javaheri: diagonal entries must be nonzero");
        }
    Javaheri J;
    J.n = n;
    J.A = A;
    J.B = B;
    for (int i = 0; i < n; ++i)
        if (A[i][i] * A[i][i] > 1 && B[i][i] * B[i][i] < 1) J.spectral_condition_evidence = true;
    return J;
}

namespace {

std::vector<QMat> javaheri_exact_generators(const Javaheri& J) {
    const int n = J.n;
    QMat Ap(n, QVec(n, Rat(0))), Bp(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        Ap[i][i] = Rat(1) / J.A[0][0];
        Bp[i][i] = Rat(1) / J.B[0][0];
    }
    return {J.A, J.B, Ap, Bp};
}

Eigen::MatrixXd qmat_to_eigen(const QMat& M) {
    const int n = static_cast<int>(M.size());
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = M[i][j].get_d();
    return out;
}

}  // namespace

MatrixSemigroup Javaheri::sg() const {
    MatrixSemigroup G;
    G.field = Field::R;
    G.n = n;
    std::vector<QMat> ex = javaheri_exact_generators(*this);
    for (const auto& M : ex) G.generators.push_back(Mat::real(qmat_to_eigen(M)));
    G.exact = std::move(ex);
    const double tol = 10 * default_tol(family_scale(G.generators));
    G.abelian = true;
    for (size_t i = 0; i < G.generators.size() && G.abelian; ++i)
        for (size_t j = i + 1; j < G.generators.size() && G.abelian; ++j)
            if (commutator_norm(G.generators[i], G.generators[j]) > tol) G.abelian = false;
    return G;
}

PointSample javaheri_orbit(const Javaheri& J, const QVec& v, int max_len, double norm_cap,
                           long long max_states) {
    if (static_cast<int>(v.size()) != J.n) throw DimensionMismatch("javaheri orbit: start size");
    if (max_len < 0) throw ConfigError("javaheri orbit: word length must be nonnegative");

    const std::vector<QMat> gens = javaheri_exact_generators(J);
    PointSample out;
    out.field = Field::R;
    out.rdim = J.n;
    out.meta_cols = max_len;
    for (int i = 0; i < max_len; ++i) out.meta_names.push_back("w" + std::to_string(i + 1));

    auto fnorm = [](const QVec& x) {
        double s = 0;
        for (const auto& q : x) {
            double d = q.get_d();
            s += d * d;
        }
        return std::sqrt(s);
    };

    std::set<QVec> seen;
    std::queue<std::pair<QVec, std::vector<long long>>> bfs;
    seen.insert(v);
    bfs.push({v, {}});
    Eigen::VectorXd p(J.n);
    while (!bfs.empty()) {
        auto [state, word] = std::move(bfs.front());
        bfs.pop();
        std::vector<long long> meta(max_len, -1);
        for (size_t i = 0; i < word.size(); ++i) meta[i] = word[i];
        for (int i = 0; i < J.n; ++i) p[i] = state[i].get_d();
        SVec e(J.n);
        for (int i = 0; i < J.n; ++i) e[i] = Surd(state[i]);
        out.push(meta, p, std::move(e));
        if (static_cast<int>(word.size()) == max_len) continue;
        for (long long gi = 0; gi < 4; ++gi) {
            QVec nv = qmat_mul(gens[gi], state);
            if (fnorm(nv) > norm_cap) continue;
            if (!seen.insert(nv).second) continue;
            if (static_cast<long long>(seen.size()) > max_states) throw Overflow();
            auto nw = word;
            nw.push_back(gi);
            bfs.push({std::move(nv), std::move(nw)});
        }
    }

    out.params = json{{"kind", "javaheri_orbit"},
                      {"n", J.n},
                      {"max_len", max_len},
                      {"norm_cap", norm_cap}};
    return out;
}

}  // namespace hyperlab
