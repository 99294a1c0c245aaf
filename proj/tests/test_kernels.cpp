#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "amolab/kernels.hpp"

using namespace amolab;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0)
{
    std::uniform_real_distribution<double> uni(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v)
        x = uni(rng);
    return v;
}

} // namespace

TEST_CASE("reduction kernels: scalar vs simd equivalence")
{
#if defined(__x86_64__)
    if (!kernels::cpu_has_avx2())
        return;
    std::mt19937_64 rng(42);
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 8ul, 63ul, 64ul, 401ul, 1024ul, 2401ul}) {
        const auto a = random_vec(rng, n);
        const auto b = random_vec(rng, n);
        const double tol = 1.0e-13 * (1.0 + static_cast<double>(n));

        CHECK(std::fabs(kernels::scalar::dot(a.data(), b.data(), n) -
                        kernels::avx2::dot(a.data(), b.data(), n)) <= tol);
        CHECK(std::fabs(kernels::scalar::abs_dot(a.data(), b.data(), n) -
                        kernels::avx2::abs_dot(a.data(), b.data(), n)) <= tol);
        CHECK(std::fabs(kernels::scalar::nrm2sq(a.data(), n) -
                        kernels::avx2::nrm2sq(a.data(), n)) <= tol);

        auto y1 = b, y2 = b;
        kernels::scalar::axpy(y1.data(), 0.37, a.data(), n);
        kernels::avx2::axpy(y2.data(), 0.37, a.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(y1[i] - y2[i]) <= 1.0e-15);
    }
#endif
}

TEST_CASE("sturm_count4: scalar vs simd bitwise identical")
{
#if defined(__x86_64__)
    if (!kernels::cpu_has_avx2())
        return;
    std::mt19937_64 rng(7);
    for (std::size_t n : {1ul, 2ul, 5ul, 33ul, 128ul, 401ul}) {
        auto d = random_vec(rng, n, 4.0);
        std::vector<double> e2(n, 0.0);
        for (std::size_t i = 1; i < n; ++i)
            e2[i] = 1.0;
        const double pivmin = 1.0e-300;
        for (int trial = 0; trial < 20; ++trial) {
            double shifts[4];
            std::uniform_real_distribution<double> uni(-8.0, 8.0);
            for (auto& s : shifts)
                s = uni(rng);
            double c1[4], c2[4];
            kernels::scalar::sturm_count4(d.data(), e2.data(), n, pivmin, shifts, c1);
            kernels::avx2::sturm_count4(d.data(), e2.data(), n, pivmin, shifts, c2);
            for (int lane = 0; lane < 4; ++lane)
                CHECK(c1[lane] == c2[lane]);

            double shifts8[8], c81[8], c82[8];
            for (int lane = 0; lane < 8; ++lane)
                shifts8[lane] = uni(rng);
            kernels::scalar::sturm_count8(d.data(), e2.data(), n, pivmin, shifts8, c81);
            kernels::avx2::sturm_count8(d.data(), e2.data(), n, pivmin, shifts8, c82);
            for (int lane = 0; lane < 8; ++lane)
                CHECK(c81[lane] == c82[lane]);
        }
    }
#endif
}

TEST_CASE("sturm_count4 counts are correct on a known matrix")
{
    // diag(1, 2, 3) with zero coupling has eigenvalues 1, 2, 3
    std::vector<double> d{1.0, 2.0, 3.0};
    std::vector<double> e2{0.0, 0.0, 0.0};
    const double shifts[4] = {0.5, 1.5, 2.5, 3.5};
    double c[4];
    kernels::scalar::sturm_count4(d.data(), e2.data(), 3, 1.0e-300, shifts, c);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 1.0);
    CHECK(c[2] == 2.0);
    CHECK(c[3] == 3.0);
}

TEST_CASE("min_frac_dist: scalar vs simd bitwise identical, correct argmin")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t count : {1ul, 2ul, 5ul, 8ul, 9ul, 100ul, 4096ul, 4099ul}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double base = uni(rng);
            const double step = uni(rng);
            double d1, d2;
            std::size_t j1, j2;
            kernels::scalar::min_frac_dist(base, step, count, &d1, &j1);
#if defined(__x86_64__)
            if (kernels::cpu_has_avx2()) {
                kernels::avx2::min_frac_dist(base, step, count, &d2, &j2);
                CHECK(d1 == d2);
                CHECK(j1 == j2);
            }
#endif
            // brute re-check of the scalar result
            double best = 1.0;
            std::size_t arg = 0;
            for (std::size_t j = 0; j < count; ++j) {
                const double r = std::fma(static_cast<double>(j), step, base);
                const double dist = std::fabs(r - std::nearbyint(r));
                if (dist < best) {
                    best = dist;
                    arg = j;
                }
            }
            CHECK(d1 == best);
            CHECK(j1 == arg);
        }
    }
}

TEST_CASE("dispatch table is bound and can be forced")
{
    const std::string active = kernels::active_isa();
    CHECK((active == "scalar" || active == "avx2"));
    kernels::force_isa("scalar");
    CHECK(std::string(kernels::active_isa()) == "scalar");
    std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(kernels::nrm2sq(a.data(), 3) == doctest::Approx(14.0));
#if defined(__x86_64__)
    if (kernels::cpu_has_avx2()) {
        kernels::force_isa("avx2");
        CHECK(std::string(kernels::active_isa()) == "avx2");
        CHECK(kernels::nrm2sq(a.data(), 3) == doctest::Approx(14.0));
    }
#endif
    CHECK_THROWS(kernels::force_isa("avx9000"));
    kernels::force_isa(active);
}
