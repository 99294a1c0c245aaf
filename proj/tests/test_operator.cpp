#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "amolab/eigensystem.hpp"
#include "amolab/model.hpp"
#include "support/oracles.hpp"

using namespace amolab;

namespace {

// angle reduction oracle in __float128: theta + n*alpha mod 1, for golden alpha
double potential_oracle_golden(double lambda, double theta, std::int64_t n)
{
    __float128 five = 5.0q;
    __float128 x = sqrtl(5.0L); // Newton to full quad precision
    for (int i = 0; i < 3; ++i)
        x = 0.5q * (x + five / x);
    const __float128 alpha = (x - 1.0q) / 2.0q;
    __float128 angle = (__float128)theta + (__float128)n * alpha;
    const long long fl = (long long)angle;
    angle -= (__float128)fl;
    if (angle < 0.0q)
        angle += 1.0q;
    return 2.0 * lambda * std::cos(2.0 * M_PI * (double)angle);
}

ModelParams golden_params(double lambda, double theta)
{
    ModelParams p;
    p.lambda = lambda;
    p.alpha = Frequency::golden();
    p.theta = theta;
    return p;
}

} // namespace

TEST_CASE("potential: closed-form points")
{
    CHECK(potential(golden_params(3.0, 0.0), 0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(std::fabs(potential(golden_params(1.0, 0.25), 0)) < 1e-14);
}

TEST_CASE("potential at n=1e5 matches the extended-precision reduction oracle")
{
    const ModelParams p = golden_params(2.0, 0.1);
    for (std::int64_t n : {100000LL, -100000LL, 54321LL, 99991LL}) {
        const double want = potential_oracle_golden(p.lambda, p.theta, n);
        CHECK(potential(p, n) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("build_hamiltonian structure")
{
    const ModelParams p = golden_params(2.0, 0.3);
    const Window w1{0, 0};
    const Tridiag t1 = build_hamiltonian(p, w1);
    REQUIRE(t1.size() == 1);
    CHECK(t1.diag[0] == doctest::Approx(2.0 * p.lambda * std::cos(2.0 * M_PI * 0.3)));

    const Window w2{0, 1};
    const Tridiag t2 = build_hamiltonian(p, w2);
    REQUIRE(t2.size() == 2);
    REQUIRE(t2.off.size() == 1);
    CHECK(t2.off[0] == 1.0);
    CHECK(t2.diag[0] == doctest::Approx(potential(p, 0)));
    CHECK(t2.diag[1] == doctest::Approx(potential(p, 1)));
}

TEST_CASE("eigensystem: 1x1 and 2x2 closed forms")
{
    Tridiag t1;
    t1.diag = {3.7};
    const EigenSystem es1 = eigensystem(t1, Window{0, 0});
    CHECK(es1.energies[0] == doctest::Approx(3.7).epsilon(1e-15));
    CHECK(std::fabs(es1.vec(0)[0]) == doctest::Approx(1.0));

    Tridiag t2;
    t2.diag = {1.0, 2.5};
    t2.off = {1.0};
    const EigenSystem es2 = eigensystem(t2, Window{0, 1});
    const double mid = (1.0 + 2.5) / 2.0;
    const double disc = std::sqrt((1.0 - 2.5) * (1.0 - 2.5) / 4.0 + 1.0);
    CHECK(es2.energies[0] == doctest::Approx(mid - disc).epsilon(1e-14));
    CHECK(es2.energies[1] == doctest::Approx(mid + disc).epsilon(1e-14));
}

TEST_CASE("eigensystem of a 401-site AMO matrix meets its contracts")
{
    const ModelParams p = golden_params(3.0, 0.3);
    const Window w{-200, 200};
    const Tridiag t = build_hamiltonian(p, w);
    const EigenSystem es = eigensystem(t, w);

    CHECK(max_relative_residual(t, es) < 1.0e-10);
    const OrthoReport rep = orthonormality_report(es, true);
    CHECK(rep.max_vector_dev < 1.0e-8);
    CHECK(rep.max_site_dev < 1.0e-8);
    CHECK(rep.max_gram_offdiag < 1.0e-8);

    // spectrum containment: within [min V - 2, max V + 2]
    CHECK(es.energies.front() >= -2.0 * p.lambda - 2.0 - 1e-12);
    CHECK(es.energies.back() <= 2.0 * p.lambda + 2.0 + 1e-12);
}

TEST_CASE("eigensystem matches the dense Jacobi oracle on small random matrices")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 12 + 3 * static_cast<std::size_t>(trial);
        Tridiag t;
        t.diag.resize(n);
        t.off.assign(n - 1, 1.0);
        for (auto& d : t.diag)
            d = uni(rng);
        const Window w{0, static_cast<std::int64_t>(n) - 1};
        const EigenSystem es = eigensystem(t, w);
        const auto dense = oracle::jacobi_eigensolver(oracle::dense_from_tridiag(t.diag, t.off), n);
        for (std::size_t s = 0; s < n; ++s) {
            CHECK(es.energies[s] == doctest::Approx(dense.w[s]).epsilon(1e-12));
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::fabs(es.vec(s)[i]) ==
                      doctest::Approx(std::fabs(dense.V[i + n * s])).epsilon(1e-7));
        }
    }
}

TEST_CASE("orthonormality over a randomized parameter suite")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const double lambda = 1.5 + 2.0 * uni(rng);
        const ModelParams p = golden_params(lambda, uni(rng));
        const Window w{-40, 40};
        const EigenSystem es = eigensystem(build_hamiltonian(p, w), w);
        const OrthoReport rep = orthonormality_report(es, false);
        CHECK(rep.max_vector_dev < 1.0e-8);
        CHECK(rep.max_site_dev < 1.0e-8);
    }
}

TEST_CASE("leftmost_max picks the leftmost of ties under exact comparison")
{
    const Window w{-1, 1};
    std::vector<double> phi{0.5, 0.7, -0.7};
    CHECK(leftmost_max(phi, w) == 0);

    const Window w2{0, 5};
    std::vector<double> delta{0.0, 0.0, 0.0, 1.0, 0.0, 0.0};
    CHECK(leftmost_max(delta, w2) == 3);

    CHECK_THROWS(leftmost_max(std::vector<double>{0.0, 0.0}, Window{0, 1}));
}

TEST_CASE("leftmost_max of computed eigenvectors matches a full scan")
{
    const ModelParams p = golden_params(2.0, 0.77);
    const Window w{-30, 30};
    const EigenSystem es = eigensystem(build_hamiltonian(p, w), w);
    for (std::size_t s = 0; s < es.size(); ++s) {
        const auto v = es.vec(s);
        double best = -1.0;
        std::int64_t arg = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::fabs(v[i]) > best) {
                best = std::fabs(v[i]);
                arg = w.lo + static_cast<std::int64_t>(i);
            }
        }
        CHECK(es.meta[s].n_max == arg);
        CHECK(es.meta[s].sup_norm == doctest::Approx(best));
    }
}

TEST_CASE("shift covariance: window shift equals phase shift")
{
    const double lambda = 2.0;
    const Frequency alpha = Frequency::golden();
    const double theta = 0.3721;
    const std::int64_t m = 3;

    ModelParams p1;
    p1.lambda = lambda;
    p1.alpha = alpha;
    p1.theta = theta;
    const Window w1{-7 + m, 7 + m};
    const EigenSystem es1 = eigensystem(build_hamiltonian(p1, w1), w1);

    ModelParams p2;
    p2.lambda = lambda;
    p2.alpha = alpha;
    p2.theta = static_cast<double>(frac1(theta + static_cast<long double>(m) * alpha.value));
    const Window w2{-7, 7};
    const EigenSystem es2 = eigensystem(build_hamiltonian(p2, w2), w2);

    REQUIRE(es1.size() == es2.size());
    for (std::size_t s = 0; s < es1.size(); ++s) {
        CHECK(es1.energies[s] == doctest::Approx(es2.energies[s]).epsilon(1e-8));
        for (std::size_t i = 0; i < es1.size(); ++i)
            CHECK(std::fabs(es1.vec(s)[i]) == doctest::Approx(std::fabs(es2.vec(s)[i])).epsilon(1e-6));
        CHECK(es1.meta[s].n_max - m == es2.meta[s].n_max);
    }
}

TEST_CASE("eigenvalues-only path agrees with the full decomposition")
{
    const ModelParams p = golden_params(2.5, 0.111);
    const Window w{-25, 25};
    const Tridiag t = build_hamiltonian(p, w);
    const auto vals = eigenvalues(t);
    const EigenSystem es = eigensystem(t, w);
    REQUIRE(vals.size() == es.size());
    for (std::size_t s = 0; s < vals.size(); ++s)
        CHECK(vals[s] == es.energies[s]);
}
