#include "amolab/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "amolab/kernels.hpp"

namespace amolab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafmin = std::numeric_limits<double>::min();

// LU factorization of (T - shift) with partial pivoting between adjacent
// rows; pivots are clamped away from zero by pivmin so solves never divide
// by exact zeros near a perfectly converged eigenvalue.
struct GtLU {
    std::vector<double> dl, d, du, du2;
    std::vector<unsigned char> swapped;

    void factor(const Tridiag& t, double shift, double pivmin)
    {
        const std::size_t n = t.size();
        dl.assign(t.off.begin(), t.off.end());
        du.assign(t.off.begin(), t.off.end());
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = t.diag[i] - shift;
        du2.assign(n >= 2 ? n - 2 : 0, 0.0);
        swapped.assign(n >= 1 ? n - 1 : 0, 0);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(d[i]) >= std::fabs(dl[i])) {
                if (d[i] != 0.0) {
                    const double fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                } else {
                    dl[i] = 0.0;
                }
                swapped[i] = 0;
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(d[i]) < pivmin)
                d[i] = std::copysign(pivmin, d[i] == 0.0 ? 1.0 : d[i]);
        }
    }

    void solve(std::vector<double>& b) const
    {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n >= 2)
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t k = n; k >= 3; --k) {
            const std::size_t i = k - 3;
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }
};

double compute_pivmin(const std::vector<double>& e2)
{
    double mx = 1.0;
    for (double v : e2)
        mx = std::max(mx, v);
    return kSafmin * mx;
}

std::vector<double> squared_offdiag(const Tridiag& t)
{
    std::vector<double> e2(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        e2[i] = t.off[i - 1] * t.off[i - 1];
    return e2;
}

std::vector<double> bisect_all(const Tridiag& t, const std::vector<double>& e2, double pivmin)
{
    const std::size_t n = t.size();
    double gl = t.diag[0], gu = t.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0)
            r += std::fabs(t.off[i - 1]);
        if (i + 1 < n)
            r += std::fabs(t.off[i]);
        gl = std::min(gl, t.diag[i] - r);
        gu = std::max(gu, t.diag[i] + r);
    }
    const double spread = std::max(gu - gl, 1.0);
    gl -= 2.0 * kEps * static_cast<double>(n) * spread + 4.0 * pivmin;
    gu += 2.0 * kEps * static_cast<double>(n) * spread + 4.0 * pivmin;

    std::vector<double> w(n);
    for (std::size_t j0 = 0; j0 < n; j0 += 8) {
        double lo[8], hi[8], mid[8], cnt[8];
        std::size_t idx[8];
        for (int lane = 0; lane < 8; ++lane) {
            idx[lane] = std::min(j0 + static_cast<std::size_t>(lane), n - 1);
            lo[lane] = gl;
            hi[lane] = gu;
        }
        for (int it = 0; it < 64; ++it) {
            for (int lane = 0; lane < 8; ++lane)
                mid[lane] = 0.5 * (lo[lane] + hi[lane]);
            kernels::sturm_count8(t.diag.data(), e2.data(), n, pivmin, mid, cnt);
            bool done = true;
            for (int lane = 0; lane < 8; ++lane) {
                if (cnt[lane] <= static_cast<double>(idx[lane]))
                    lo[lane] = mid[lane];
                else
                    hi[lane] = mid[lane];
                if (hi[lane] - lo[lane] >
                    2.0 * kEps * (std::fabs(lo[lane]) + std::fabs(hi[lane])) + 4.0 * pivmin)
                    done = false;
            }
            if (done)
                break;
        }
        for (int lane = 0; lane < 8 && j0 + static_cast<std::size_t>(lane) < n; ++lane)
            w[j0 + static_cast<std::size_t>(lane)] = 0.5 * (lo[lane] + hi[lane]);
    }
    for (std::size_t j = 1; j < n; ++j)
        w[j] = std::max(w[j], w[j - 1]);
    return w;
}

// Modified Gram-Schmidt of y against columns [g0, j) of Z.
void orthogonalize(std::vector<double>& y, const std::vector<double>& Z,
                   std::size_t n, std::size_t g0, std::size_t j)
{
    for (std::size_t k = g0; k < j; ++k) {
        const double* vk = Z.data() + k * n;
        const double c = kernels::dot(vk, y.data(), n);
        kernels::axpy(y.data(), -c, vk, n);
    }
}

struct Cluster {
    std::size_t begin = 0, end = 0;
};

} // namespace

std::span<const double> EigenSystem::vec(std::size_t s) const
{
    const std::size_t n = size();
    return {vectors.data() + s * n, n};
}

double EigenSystem::component(std::size_t s, std::int64_t site) const
{
    return vec(s)[static_cast<std::size_t>(window.index_of(site))];
}

bool EigenSystem::interior(std::size_t s) const
{
    const std::int64_t margin = std::max<std::int64_t>(1, window.size() / 10);
    const std::int64_t m = meta[s].n_max;
    return (m - window.lo) >= margin && (window.hi - m) >= margin;
}

std::int64_t leftmost_max(std::span<const double> phi, const Window& w)
{
    if (phi.size() != static_cast<std::size_t>(w.size()))
        throw std::invalid_argument("leftmost_max: length does not match window");
    double best = -1.0;
    std::size_t arg = 0;
    bool any = false;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double a = std::fabs(phi[i]);
        if (a != 0.0)
            any = true;
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (!any)
        throw std::invalid_argument("leftmost_max: identically zero input");
    return w.lo + static_cast<std::int64_t>(arg);
}

std::vector<double> eigenvalues(const Tridiag& t)
{
    if (t.size() == 0)
        throw std::invalid_argument("eigenvalues: empty matrix");
    const auto e2 = squared_offdiag(t);
    return bisect_all(t, e2, compute_pivmin(e2));
}

EigenSystem eigensystem(const Tridiag& t, const Window& w, const SolverOptions& opts)
{
    const std::size_t n = t.size();
    if (n == 0 || static_cast<std::int64_t>(n) != w.size())
        throw std::invalid_argument("eigensystem: matrix/window size mismatch");

    EigenSystem es;
    es.window = w;

    const auto e2 = squared_offdiag(t);
    const double pivmin = compute_pivmin(e2);
    es.energies = bisect_all(t, e2, pivmin);

    const double onenrm = std::max(t.one_norm(), 1.0);
    const double ortol = 1.0e-3 * onenrm;
    const double sep = 10.0 * kEps * onenrm;
    // pivot clamp for the solves; keeps the growth of a near-singular solve
    // below ~1e31 so norms of iterates stay representable
    const double solve_pivmin = std::max(pivmin, kEps * kEps * onenrm);

    // shifts actually used by the solves; exact copies are pushed apart so
    // degenerate eigenvalues get distinct factorizations
    std::vector<double> shifts = es.energies;
    for (std::size_t j = 1; j < n; ++j)
        shifts[j] = std::max(shifts[j], shifts[j - 1] + sep);

    // cluster boundaries from the unperturbed eigenvalues
    std::vector<Cluster> clusters;
    {
        std::size_t b = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            if (j == n || es.energies[j] - es.energies[j - 1] > ortol) {
                clusters.push_back({b, j});
                b = j;
            }
        }
    }

    es.vectors.assign(n * n, 0.0);
    std::vector<double> x(n), y(n);
    GtLU lu;

    const double accept_tol = 1.0e-13 * (onenrm + std::fabs(es.energies.back()));

    auto run_inverse_iteration = [&](std::size_t j, std::size_t g0, double shift,
                                     std::uint64_t salt) {
        lu.factor(t, shift, solve_pivmin);
        std::mt19937_64 rng(opts.start_seed ^ (0x9e3779b97f4a7c15ULL * (j + 1)) ^ salt);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = uni(rng);
        double xn = std::sqrt(kernels::nrm2sq(x.data(), n));
        for (std::size_t i = 0; i < n; ++i)
            x[i] /= xn;

        for (int it = 0; it < 10; ++it) {
            y = x;
            lu.solve(y);
            orthogonalize(y, es.vectors, n, g0, j);
            const double yn = std::sqrt(kernels::nrm2sq(y.data(), n));
            if (!(yn > 1.0e-3)) {
                // direction exhausted by the orthogonalization: fresh start
                for (std::size_t i = 0; i < n; ++i)
                    x[i] = uni(rng);
                const double rn = std::sqrt(kernels::nrm2sq(x.data(), n));
                for (std::size_t i = 0; i < n; ++i)
                    x[i] /= rn;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i)
                x[i] = y[i] / yn;
            if (it >= 1 && 1.0 / yn <= accept_tol)
                break;
        }
        std::memcpy(es.vectors.data() + j * n, x.data(), n * sizeof(double));
    };

    for (const Cluster& c : clusters) {
        for (std::size_t j = c.begin; j < c.end; ++j)
            run_inverse_iteration(j, c.begin, shifts[j], 0);
        // polish: one more orthogonalization sweep across the cluster
        if (c.end - c.begin > 1) {
            for (std::size_t j = c.begin; j < c.end; ++j) {
                double* vj = es.vectors.data() + j * n;
                std::copy(vj, vj + n, y.begin());
                orthogonalize(y, es.vectors, n, c.begin, j);
                double yn = std::sqrt(kernels::nrm2sq(y.data(), n));
                if (!(yn > 0.1)) {
                    // fell on an already-produced direction; rebuild
                    run_inverse_iteration(j, c.begin, shifts[j], 0xabcdef1234567ULL);
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i)
                    vj[i] = y[i] / yn;
            }
        }
    }

    // residual verification, with one Rayleigh-quotient retry per offender
    auto residual = [&](std::size_t j) {
        const double* v = es.vectors.data() + j * n;
        const double E = es.energies[j];
        double rr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = (t.diag[i] - E) * v[i];
            if (i > 0)
                r += t.off[i - 1] * v[i - 1];
            if (i + 1 < n)
                r += t.off[i] * v[i + 1];
            rr += r * r;
        }
        return std::sqrt(rr);
    };

    for (const Cluster& c : clusters) {
        for (std::size_t j = c.begin; j < c.end; ++j) {
            const double target = opts.residual_factor * (t.one_norm() + std::fabs(es.energies[j]));
            if (residual(j) <= target)
                continue;
            const double* v = es.vectors.data() + j * n;
            double rq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double hv = t.diag[i] * v[i];
                if (i > 0)
                    hv += t.off[i - 1] * v[i - 1];
                if (i + 1 < n)
                    hv += t.off[i] * v[i + 1];
                rq += v[i] * hv;
            }
            run_inverse_iteration(j, c.begin, rq, 0x51ca7edULL);
            if (residual(j) > target) {
                std::ostringstream os;
                os << "eigensystem: residual contract violated at index " << j
                   << " (E=" << es.energies[j] << ", cluster [" << c.begin << ","
                   << c.end << "), residual=" << residual(j) << ", target=" << target << ")";
                throw NumericalError(os.str());
            }
        }
    }

    // deterministic sign: the leftmost-max component is positive
    es.meta.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        double* v = es.vectors.data() + s * n;
        const std::int64_t site = leftmost_max({v, n}, w);
        const std::size_t i0 = static_cast<std::size_t>(site - w.lo);
        if (v[i0] < 0.0) {
            for (std::size_t i = 0; i < n; ++i)
                v[i] = -v[i];
        }
        es.meta[s].n_max = site;
        es.meta[s].sup_norm = std::fabs(v[i0]);
        es.meta[s].boundary_mass = v[0] * v[0] + v[n - 1] * v[n - 1];
    }

    const OrthoReport rep = orthonormality_report(es, false);
    if (rep.max_vector_dev > 1.0e-8 || rep.max_site_dev > 1.0e-8) {
        std::ostringstream os;
        os << "eigensystem: orthonormality contract violated (vector dev "
           << rep.max_vector_dev << ", site dev " << rep.max_site_dev << ")";
        throw NumericalError(os.str());
    }
    return es;
}

OrthoReport orthonormality_report(const EigenSystem& es, bool full_gram)
{
    const std::size_t n = es.size();
    OrthoReport rep;
    std::vector<double> site_sum(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        const double* v = es.vectors.data() + s * n;
        rep.max_vector_dev = std::max(rep.max_vector_dev,
                                      std::fabs(kernels::nrm2sq(v, n) - 1.0));
        for (std::size_t i = 0; i < n; ++i)
            site_sum[i] += v[i] * v[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        rep.max_site_dev = std::max(rep.max_site_dev, std::fabs(site_sum[i] - 1.0));
    if (full_gram) {
        for (std::size_t s = 0; s < n; ++s) {
            const double* vs = es.vectors.data() + s * n;
            for (std::size_t u = s + 1; u < n; ++u) {
                const double g = kernels::dot(vs, es.vectors.data() + u * n, n);
                rep.max_gram_offdiag = std::max(rep.max_gram_offdiag, std::fabs(g));
            }
        }
    }
    return rep;
}

double max_relative_residual(const Tridiag& t, const EigenSystem& es)
{
    const std::size_t n = es.size();
    const double onenrm = t.one_norm();
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double* v = es.vectors.data() + s * n;
        const double E = es.energies[s];
        double rr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = (t.diag[i] - E) * v[i];
            if (i > 0)
                r += t.off[i - 1] * v[i - 1];
            if (i + 1 < n)
                r += t.off[i] * v[i + 1];
            rr += r * r;
        }
        worst = std::max(worst, std::sqrt(rr) / (onenrm + std::fabs(E)));
    }
    return worst;
}

} // namespace amolab
