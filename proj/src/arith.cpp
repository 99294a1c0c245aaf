#include "amolab/arith.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace amolab {

long double torus_dist(long double x)
{
    return fabsl(x - nearbyintl(x));
}

long double frac1(long double x)
{
    long double f = x - floorl(x);
    if (f >= 1.0L)
        f = 0.0L;
    return f;
}

std::vector<double> Frequency::log_q_ratios() const
{
    std::vector<double> r;
    for (std::size_t i = 0; i + 1 < convergents.size(); ++i) {
        const double qa = static_cast<double>(convergents[i].q);
        const double qb = static_cast<double>(convergents[i + 1].q);
        r.push_back(std::log(qb) / qa);
    }
    return r;
}

long double Frequency::dist_multiple(std::int64_t k) const
{
    return torus_dist(static_cast<long double>(k) * value);
}

Frequency continued_fraction(long double alpha, int depth)
{
    if (!(alpha > 0.0L && alpha < 1.0L))
        throw std::invalid_argument("continued_fraction: alpha must lie in (0,1)");
    if (depth < 1)
        throw std::invalid_argument("continued_fraction: depth must be >= 1");

    Frequency f;
    f.value = alpha;
    f.convergents.push_back({0, 1});

    const long double eps = std::numeric_limits<long double>::epsilon();
    std::int64_t p_prev = 1, q_prev = 0; // (-1)st convergent
    std::int64_t p_cur = 0, q_cur = 1;   // 0th convergent

    long double x = alpha;
    for (int i = 0; i < depth; ++i) {
        const long double inv = 1.0L / x;
        long double a = floorl(inv);
        long double rem = inv - a;
        // snap to an exact termination when 1/x is an integer to precision
        const long double snap = 64.0L * eps * inv;
        if (1.0L - rem <= snap) {
            a += 1.0L;
            rem = 0.0L;
        }
        if (a < 1.0L)
            throw std::runtime_error("continued_fraction: nonpositive quotient");
        if (a > 9.0e17L) { // quotient alone would overflow the convergents
            f.truncated = true;
            break;
        }
        const std::int64_t ai = static_cast<std::int64_t>(a);

        __int128 pn = static_cast<__int128>(ai) * p_cur + p_prev;
        __int128 qn = static_cast<__int128>(ai) * q_cur + q_prev;
        if (qn > std::numeric_limits<std::int64_t>::max() ||
            pn > std::numeric_limits<std::int64_t>::max()) {
            f.truncated = true;
            break;
        }
        f.cf_terms.push_back(ai);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = static_cast<std::int64_t>(pn);
        q_cur = static_cast<std::int64_t>(qn);
        f.convergents.push_back({p_cur, q_cur});

        if (rem <= snap) {
            f.rational = true;
            break;
        }
        x = rem;
    }
    return f;
}

Frequency Frequency::golden(int depth)
{
    Frequency f = continued_fraction((sqrtl(5.0L) - 1.0L) / 2.0L, depth);
    f.value = (sqrtl(5.0L) - 1.0L) / 2.0L;
    return f;
}

Frequency Frequency::silver(int depth)
{
    Frequency f = continued_fraction(sqrtl(2.0L) - 1.0L, depth);
    f.value = sqrtl(2.0L) - 1.0L;
    return f;
}

Frequency Frequency::from_value(long double v, int depth)
{
    return continued_fraction(v, depth);
}

DiophantineFit diophantine_fit(const Frequency& alpha, std::int64_t k_max)
{
    if (k_max < 2)
        throw std::invalid_argument("diophantine_fit: k_max must be >= 2");

    DiophantineFit fit;

    // ln ||k alpha|| and ln k, once; the kappa scan is then a fused scan.
    std::vector<double> log_dist(static_cast<std::size_t>(k_max) + 1);
    std::vector<double> log_k(static_cast<std::size_t>(k_max) + 1);
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const long double m = alpha.dist_multiple(k);
        if (m < 1.0e-14L) {
            fit.ok = false;
            fit.zero_k = k;
            return fit;
        }
        log_dist[static_cast<std::size_t>(k)] = static_cast<double>(logl(m));
        log_k[static_cast<std::size_t>(k)] = std::log(static_cast<double>(k));
    }
    fit.ok = true;

    const std::int64_t interior = static_cast<std::int64_t>(std::sqrt(static_cast<double>(k_max)));
    for (int g = 0; g <= 350; ++g) {
        const double kappa = 0.5 + 0.01 * g;
        double best = std::numeric_limits<double>::infinity();
        std::int64_t best_k = 1;
        for (std::int64_t k = 1; k <= k_max; ++k) {
            const double v = log_dist[static_cast<std::size_t>(k)] + kappa * log_k[static_cast<std::size_t>(k)];
            if (v < best) {
                best = v;
                best_k = k;
            }
        }
        fit.kappa = kappa;
        fit.tau = std::exp(best);
        fit.worst_k = best_k;
        if (best_k <= interior) {
            fit.stabilized = true;
            break;
        }
    }
    return fit;
}

} // namespace amolab
