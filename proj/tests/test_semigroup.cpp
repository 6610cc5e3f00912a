#include <doctest.h>

#include <cmath>
#include <set>

#include "hyperlab/semigroup.hpp"

using namespace hyperlab;

namespace {

Mat rdiag(std::initializer_list<double> d) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<long>(d.size()),
                                              static_cast<long>(d.size()));
    long i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return Mat::real(m);
}

Mat cdiag(std::initializer_list<std::complex<double>> d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(d.size()),
                                                static_cast<long>(d.size()));
    long i = 0;
    for (auto v : d) m(i, i) = v, ++i;
    return Mat::complex(m);
}

// the six-generator diagonal family on C^2 used across the probe tests
MatrixSemigroup c2_family() {
    const std::complex<double> r1 = std::polar(1.0, M_PI * std::sqrt(2.0));
    const std::complex<double> r2 = std::polar(1.0, M_PI * std::sqrt(3.0));
    return make_semigroup({cdiag({2.0, 1.0}), cdiag({1.0 / 3.0, 1.0}), cdiag({r1, 1.0}),
                           cdiag({1.0, 2.0}), cdiag({1.0, 1.0 / 3.0}), cdiag({1.0, r2})});
}

MatrixSemigroup r3_family() {
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(3, 3);
    const double th = M_PI * std::sqrt(2.0);
    rot.block<2, 2>(1, 1) << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return make_semigroup({rdiag({2, 1, 1}), rdiag({1.0 / 3.0, 1, 1}), rdiag({-1, 1, 1}),
                           rdiag({1, 2, 2}), rdiag({1, 1.0 / 3.0, 1.0 / 3.0}), Mat::real(rot)});
}

}  // namespace

TEST_CASE("semigroup construction checks commutation and shape") {
    CHECK_THROWS_AS(make_semigroup({Mat::real((Eigen::MatrixXd(2, 2) << 0, 1, 0, 0).finished()),
                                    rdiag({1, 2})}),
                    NotCommuting);
    CHECK_THROWS_AS(make_semigroup({rdiag({1, 2}), rdiag({1, 2, 3})}), DimensionMismatch);
    CHECK_THROWS_AS(make_semigroup({}), ConfigError);
    MatrixSemigroup G = make_semigroup({rdiag({2, 3}), rdiag({5, 7})});
    CHECK(G.abelian);
    CHECK(G.n == 2);
    CHECK(G.rdim() == 2);
    CHECK(c2_family().rdim() == 4);
}

TEST_CASE("realification of a complex scalar") {
    Mat z = cdiag({std::complex<double>(0.3, 0.4)});
    Eigen::MatrixXd r = realify_mat(z);
    REQUIRE(r.rows() == 2);
    CHECK(r(0, 0) == doctest::Approx(0.3));
    CHECK(r(0, 1) == doctest::Approx(-0.4));
    CHECK(r(1, 0) == doctest::Approx(0.4));
    CHECK(r(1, 1) == doctest::Approx(0.3));
    CHECK(realify_mat(rdiag({2, 3})).isApprox((Eigen::MatrixXd(2, 2) << 2, 0, 0, 3).finished()));
}

TEST_CASE("orbit of the identity semigroup is the start vector") {
    MatrixSemigroup G = make_semigroup({Mat::identity(Field::R, 2)});
    Eigen::VectorXcd v(2);
    v << 0.25, 0.75;
    PointSample s = orbit(G, v, 5, Window::cube(2, -1.0, 1.0));
    REQUIRE(s.size() == 1);
    CHECK(s.pt(0)[0] == 0.25);
    CHECK(s.meta_row(0) == std::vector<long long>{0});  // lexicographically first word
}

TEST_CASE("scalar doubling orbit with window filter") {
    MatrixSemigroup G = make_semigroup({rdiag({2})});
    Eigen::VectorXcd v(1);
    v << 1.0;
    PointSample s = orbit(G, v, 10, Window::cube(1, 0.0, 40.0));
    std::multiset<double> got;
    for (size_t i = 0; i < s.size(); ++i) got.insert(s.pt(i)[0]);
    CHECK(got == std::multiset<double>{1, 2, 4, 8, 16, 32});
}

TEST_CASE("orbit carries exact coordinates for rational generators") {
    QMat half{{Rat(1) / 2}};
    MatrixSemigroup G = make_semigroup({rdiag({0.5})}, {half});
    REQUIRE(G.has_exact());
    Eigen::VectorXcd v(1);
    v << 1.0;
    PointSample s = orbit(G, v, 3, Window::cube(1, 0.0, 2.0), Mode::Exact);
    REQUIRE(s.size() == 4);
    std::set<std::string> exact;
    for (const auto& e : s.exact) exact.insert(e[0].str());
    CHECK(exact == std::set<std::string>{"1", "1/2", "1/4", "1/8"});
}

TEST_CASE("orbit magnitude overflow raises") {
    MatrixSemigroup G = make_semigroup({rdiag({1e200})});
    Eigen::VectorXcd v(1);
    v << 1.0;
    CHECK_THROWS_AS(orbit(G, v, 4, Window(std::vector<std::array<double, 2>>{{0.0, 1e308}})),
                    Overflow);
}

TEST_CASE("pruning does not lose in-window points") {
    // contracting generator paired with an expanding one: the reachable set
    // inside [0.9, 1.1] is exactly { (3/2)^k (2/3)^m : ratio in window }
    MatrixSemigroup G = make_semigroup({rdiag({1.5}), rdiag({2.0 / 3.0})});
    Eigen::VectorXcd v(1);
    v << 1.0;
    PointSample s = orbit(G, v, 12, Window(std::vector<std::array<double, 2>>{{0.4, 1.1}}));
    std::set<long long> found;
    for (size_t i = 0; i < s.size(); ++i) found.insert(llround(s.pt(i)[0] * 1e9));
    // brute force the same set without pruning
    std::set<long long> expect;
    for (int k = 0; k <= 12; ++k)
        for (int m = 0; m <= 12; ++m) {
            const double val = std::pow(1.5, k) * std::pow(2.0 / 3.0, m);
            if (val >= 0.4 && val <= 1.1) expect.insert(llround(val * 1e9));
        }
    CHECK(found == expect);
}

TEST_CASE("ambient probe grades the diagonal real family dense") {
    MatrixSemigroup G =
        make_semigroup({rdiag({2, 1}), rdiag({1.0 / 3.0, 1}), rdiag({-1, 1}), rdiag({1, 2}),
                        rdiag({1, 1.0 / 3.0}), rdiag({1, -1})});
    ProbeResult pr = hypercyclicity_probe(G, Window::cube(2, -2.0, 2.0), 0.1, {40, 80, 160});
    CHECK(pr.verdict == Verdict::DenseEvidence);
    CHECK(pr.report.coverage == doctest::Approx(1.0));
    CHECK(pr.report.trend.size() == 3);
    CHECK(pr.details.contains("components"));
    CHECK(pr.details["components"].size() == 2);
    // candidate comes from the block structure: one unit per block head
    CHECK(std::abs(pr.candidate[0]) > 1e-3);
    CHECK(std::abs(pr.candidate[1]) > 1e-3);
}

TEST_CASE("single ray is graded not dense") {
    MatrixSemigroup G = make_semigroup({rdiag({2, 2})});
    ProbeResult pr = hypercyclicity_probe(G, Window::cube(2, -2.0, 2.0), 0.1, {40, 80, 160});
    CHECK(pr.verdict == Verdict::NotDenseEvidence);
    CHECK(pr.report.coverage < 0.01);
}

TEST_CASE("canonical invariant subspace of the complex family") {
    MatrixSemigroup G = c2_family();
    Subspace M = canonical_invariant_subspace(G);
    CHECK(M.n == 4);
    CHECK(M.r == 2);  // a complex line
    // the normal form leads with the second coordinate axis, so the realified
    // line is supported on components {2, 3}
    CHECK(M.Q.block(0, 0, 2, 2).cwiseAbs().maxCoeff() < 1e-9);
    // and the line really is invariant under every realified generator
    for (const auto& A : G.generators) {
        const Eigen::MatrixXd R = realify_mat(A);
        for (int c = 0; c < 2; ++c)
            CHECK(membership_distance(Eigen::VectorXd(R * M.Q.col(c)), M) < 1e-12);
    }
}

TEST_CASE("no nontrivial canonical subspace for a pure plane") {
    const double th = 2 * M_PI * (std::sqrt(2.0) - 1.0);
    Mat rot = Mat::real((Eigen::MatrixXd(2, 2) << std::cos(th), -std::sin(th), std::sin(th),
                         std::cos(th))
                            .finished());
    MatrixSemigroup G = make_semigroup({rot});
    CHECK_THROWS_AS(canonical_invariant_subspace(G), NoNontrivialCanonical);
}

TEST_CASE("canonical subspace of the real three-dimensional family") {
    MatrixSemigroup G = r3_family();
    Subspace M = canonical_invariant_subspace(G);
    CHECK(M.r == 1);
    CHECK(std::abs(std::abs(M.Q(0, 0)) - 1.0) < 1e-9);  // the first axis
    ProbeResult pr =
        subspace_hypercyclicity_probe(G, M, Window::cube(1, -2.0, 2.0), 0.1, {30, 60, 120});
    CHECK(pr.verdict == Verdict::DenseEvidence);
}

TEST_CASE("subspace probe on the complex family's canonical line") {
    MatrixSemigroup G = c2_family();
    Subspace M = canonical_invariant_subspace(G);
    ProbeResult pr =
        subspace_hypercyclicity_probe(G, M, Window::cube(2, -2.0, 2.0), 0.1, {30, 60, 120});
    CHECK(pr.verdict == Verdict::DenseEvidence);
    CHECK(pr.report.coverage >= 0.9);
    auto w = witness_in_subspace(G, M, Window::cube(2, -2.0, 2.0), 0.1, 120);
    REQUIRE(w.has_value());
    CHECK(membership_distance(realify(G.field, *w), M) <= 1e-9);
}

TEST_CASE("block eigenvalue semigroup") {
    MatrixSemigroup G = c2_family();
    PointSample s = spectrum(G, 0, 3, Window::cube(1, 0.0, 2.5), /*moduli=*/true);
    CHECK(s.field == Field::R);
    std::set<long long> vals;
    for (size_t i = 0; i < s.size(); ++i) vals.insert(llround(s.pt(i)[0] * 1e9));
    CHECK(vals.count(llround(1e9)) == 1);
    CHECK(vals.count(llround(2e9)) == 1);
    CHECK(vals.count(llround(1e9 / 3.0)) == 1);
    CHECK(vals.count(llround(2e9 / 3.0)) == 1);
    // without moduli the spectrum is complex (rotations included)
    PointSample c = spectrum(G, 0, 2, Window::cube(2, -2.5, 2.5));
    CHECK(c.field == Field::C);
    CHECK(c.rdim == 2);
    CHECK(c.size() > s.size());
}

TEST_CASE("scalar semigroup with two scales and a rotation") {
    CHECK_THROWS_AS(make_G_theta(2, 4, Surd::root(2)), NotCoprime);
    CHECK_THROWS_AS(make_G_theta(1, 3, Surd::root(2)), ConfigError);
    CHECK_THROWS_AS(make_G_theta(2, 3, Surd(Rat(1) / 2)), RationalTheta);
    GTheta g = make_G_theta(2, 3, Surd::root(2));
    MatrixSemigroup sg = g.sg();
    CHECK(sg.field == Field::C);
    CHECK(sg.n == 1);
    CHECK(sg.abelian);

    PointSample s = g_theta_orbit(g, 6, Window::cube(2, -2.0, 2.0));
    CHECK(s.size() > 0);
    for (size_t i = 0; i < s.size(); ++i) {
        auto m = s.meta_row(i);
        CHECK(m[0] <= 6);
        CHECK(m[1] <= 6);
        CHECK(m[2] <= 6);
        const double mag = std::hypot(s.pt(i)[0], s.pt(i)[1]);
        const double expect = std::pow(2.0, double(m[0])) / std::pow(3.0, double(m[1]));
        CHECK(mag == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("real-axis trace of the scalar semigroup is exact") {
    GTheta g = make_G_theta(2, 3, Surd::root(2));
    GThetaLineTrace tr = line_trace_G_theta(g, 6, 2.0);
    std::set<Rat> expect;
    for (long k = 0; k <= 6; ++k)
        for (long m = 0; m <= 6; ++m) {
            Rat v = rat_pow(Rat(2), k) / rat_pow(Rat(3), m);
            if (v <= 2) expect.insert(v);
        }
    CHECK(std::set<Rat>(tr.values.begin(), tr.values.end()) == expect);
    CHECK(std::is_sorted(tr.values.begin(), tr.values.end()));
    CHECK(tr.sin_guard > 0.0);
    CHECK(tr.sin_guard < 1.0);
    CHECK(line_trace_G_theta(g, 0, 2.0).sin_guard == 1.0);
}

TEST_CASE("triangular pair construction") {
    QMat A{{Rat(1), Rat(0)}, {Rat(1), Rat(2)}};
    QMat B{{Rat(1), Rat(0)}, {Rat(0), Rat(1) / 3}};
    Javaheri J = make_javaheri(A, B);
    CHECK(J.n == 2);
    CHECK(J.spectral_condition_evidence);
    CHECK_FALSE(J.sg().abelian);  // the planted pair genuinely fails to commute

    QMat upper{{Rat(1), Rat(1)}, {Rat(0), Rat(2)}};
    CHECK_THROWS_AS(make_javaheri(upper, B), ConfigError);
    QMat zero_diag{{Rat(0), Rat(0)}, {Rat(1), Rat(2)}};
    CHECK_THROWS_AS(make_javaheri(zero_diag, B), ConfigError);

    Javaheri flat =
        make_javaheri(QMat{{Rat(1) / 2, Rat(0)}, {Rat(0), Rat(1) / 2}},
                      QMat{{Rat(2), Rat(0)}, {Rat(0), Rat(2)}});
    CHECK_FALSE(flat.spectral_condition_evidence);
    CHECK(flat.sg().abelian);
}

TEST_CASE("word orbit of the triangular pair") {
    Javaheri J = make_javaheri(QMat{{Rat(1), Rat(0)}, {Rat(1), Rat(2)}},
                               QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1) / 3}});
    PointSample s = javaheri_orbit(J, {Rat(0), Rat(1)}, 4);
    // states are exactly (0, 2^l 3^-k) with l + k <= 4
    std::set<std::pair<double, double>> pts;
    for (size_t i = 0; i < s.size(); ++i) pts.insert({s.pt(i)[0], s.pt(i)[1]});
    CHECK(pts.size() == 15);
    for (const auto& [x, y] : pts) {
        CHECK(x == 0.0);
        CHECK(y > 0.0);
    }
    CHECK(s.meta_cols == 4);  // words padded to the length bound
    // norm cap prunes large states
    PointSample capped = javaheri_orbit(J, {Rat(0), Rat(1)}, 4, 3.0);
    CHECK(capped.size() < s.size());
    CHECK_THROWS_AS(javaheri_orbit(J, {Rat(0), Rat(1)}, 10, 1e6, 5), Overflow);
}
