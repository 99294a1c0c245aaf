#include "amolab/kernels.hpp"

#include <cmath>

namespace amolab::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

double abs_dot(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += std::fabs(a[i] * b[i]);
    return s;
}

double nrm2sq(const double* a, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i] * a[i];
    return s;
}

void axpy(double* y, double c, const double* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += c * x[i];
}

void sturm_count4(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[4], double counts[4])
{
    for (int lane = 0; lane < 4; ++lane) {
        const double x = shifts[lane];
        double p = d[0] - x;
        if (std::fabs(p) < pivmin)
            p = -pivmin;
        double cnt = p < 0.0 ? 1.0 : 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            p = (d[i] - x) - e2[i] / p;
            if (std::fabs(p) < pivmin)
                p = -pivmin;
            if (p < 0.0)
                cnt += 1.0;
        }
        counts[lane] = cnt;
    }
}

void sturm_count8(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[8], double counts[8])
{
    sturm_count4(d, e2, n, pivmin, shifts, counts);
    sturm_count4(d, e2, n, pivmin, shifts + 4, counts + 4);
}

void min_frac_dist(double base, double step, std::size_t count,
                   double* best_dist, std::size_t* best_j)
{
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
    *best_dist = best;
    *best_j = arg;
}

} // namespace amolab::kernels::scalar
