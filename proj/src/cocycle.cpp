#include "amolab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amolab {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

double hypot2(double a, double b)
{
    return std::sqrt(a * a + b * b);
}

} // namespace

void ScaledMatrix::multiply_left(const Mat2& a)
{
    const double m00 = a[0][0] * m[0][0] + a[0][1] * m[1][0];
    const double m01 = a[0][0] * m[0][1] + a[0][1] * m[1][1];
    const double m10 = a[1][0] * m[0][0] + a[1][1] * m[1][0];
    const double m11 = a[1][0] * m[0][1] + a[1][1] * m[1][1];
    m = {{{m00, m01}, {m10, m11}}};
    const double mx = max_abs();
    if (mx == 0.0)
        throw NumericalError("ScaledMatrix: product collapsed to zero");
    const int e = std::ilogb(mx);
    if (e != 0) {
        for (auto& row : m)
            for (auto& v : row)
                v = std::ldexp(v, -e); // exact
        log_scale += static_cast<double>(e) * kLn2;
    }
}

double ScaledMatrix::max_abs() const
{
    double mx = 0.0;
    for (const auto& row : m)
        for (double v : row)
            mx = std::max(mx, std::fabs(v));
    return mx;
}

double ScaledMatrix::norm2() const
{
    const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
    const double e = 0.5 * (a * a + b * b + c * c + d * d);
    const double f = a * d - b * c;
    const double disc = std::sqrt(std::max(0.0, (e - f) * (e + f)));
    return std::sqrt(std::max(0.0, e + disc));
}

double ScaledMatrix::log_norm2() const
{
    return log_scale + std::log(norm2());
}

double ScaledMatrix::log_abs_det() const
{
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return std::log(std::fabs(det)) + 2.0 * log_scale;
}

Mat2 transfer_step(double energy, const ModelParams& p, std::int64_t k)
{
    return {{{energy - potential(p, k), -1.0}, {1.0, 0.0}}};
}

ScaledMatrix transfer_product(double energy, const ModelParams& p,
                              std::int64_t from, std::int64_t to)
{
    if (from > to)
        throw std::invalid_argument("transfer_product: from > to");
    ScaledMatrix sm;
    for (std::int64_t k = from; k < to; ++k)
        sm.multiply_left(transfer_step(energy, p, k));
    return sm;
}

LyapunovEstimate lyapunov_estimate(double energy, const ModelParams& p, std::int64_t n_steps)
{
    if (n_steps < 1000)
        throw std::invalid_argument("lyapunov_estimate: n_steps must be >= 1e3");
    const std::int64_t half = n_steps / 2;
    ScaledMatrix sm;
    double log_half = 0.0;
    for (std::int64_t k = 0; k < n_steps; ++k) {
        sm.multiply_left(transfer_step(energy, p, k));
        if (k + 1 == half)
            log_half = sm.log_norm2();
    }
    LyapunovEstimate est;
    est.steps = n_steps;
    est.rate = sm.log_norm2() / static_cast<double>(n_steps);
    est.tail_rate = (sm.log_norm2() - log_half) / static_cast<double>(n_steps - half);
    return est;
}

GrowthBoundReport growth_bound_check(std::span<const double> phi, const Window& w,
                                     double lyap, double eps, double c_cap,
                                     std::int64_t min_pair_dist)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("growth_bound_check: eps must be positive");
    if (phi.size() != static_cast<std::size_t>(w.size()))
        throw std::invalid_argument("growth_bound_check: length/window mismatch");

    // ||U(k)|| over interior k (both components inside the interior band)
    const std::int64_t margin = std::max<std::int64_t>(1, w.size() / 10);
    const std::int64_t k_lo = w.lo + margin + 1;
    const std::int64_t k_hi = w.hi - margin;

    GrowthBoundReport rep;
    if (k_hi - k_lo < min_pair_dist)
        return rep; // vacuous: no admissible pairs

    std::vector<double> log_u;
    std::vector<std::int64_t> ks;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double a = phi[static_cast<std::size_t>(k - w.lo)];
        const double b = phi[static_cast<std::size_t>(k - 1 - w.lo)];
        const double u = std::max(hypot2(a, b), std::numeric_limits<double>::min());
        log_u.push_back(std::log(u));
        ks.push_back(k);
    }

    double log_c = -std::numeric_limits<double>::infinity();
    const double rate = lyap + eps;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = i + static_cast<std::size_t>(min_pair_dist); j < ks.size(); ++j) {
            const double delta = static_cast<double>(ks[j] - ks[i]);
            const double need = std::fabs(log_u[i] - log_u[j]) - rate * delta;
            if (need > log_c) {
                log_c = need;
                rep.worst_k1 = ks[i];
                rep.worst_k2 = ks[j];
            }
            ++rep.pairs;
        }
    }
    rep.c_required = std::exp(std::max(log_c, 0.0));
    rep.exceeded_cap = rep.c_required > c_cap;
    return rep;
}

namespace {

// max |phi| over [y - radius, y + radius]; requires coverage
double window_max_abs(std::span<const double> phi, const Window& w,
                      std::int64_t y, std::int64_t radius)
{
    if (y - radius < w.lo || y + radius > w.hi)
        throw std::out_of_range("window max: radius not covered by window");
    double mx = 0.0;
    for (std::int64_t s = y - radius; s <= y + radius; ++s)
        mx = std::max(mx, std::fabs(phi[static_cast<std::size_t>(s - w.lo)]));
    return mx;
}

} // namespace

BlockDecayReport block_decay_check(std::span<const double> phi, const Window& w,
                                   double lyap, const BlockGeometry& g)
{
    BlockDecayReport rep;
    if (phi.size() != static_cast<std::size_t>(w.size()))
        throw std::invalid_argument("block_decay_check: length/window mismatch");
    if (g.k <= 0 || g.gamma <= 0.0 || g.eps <= 0.0 || g.range_const < 1.0) {
        rep.reason = "invalid geometry constants";
        return rep;
    }
    const double ck = g.range_const * static_cast<double>(g.k);
    const std::int64_t centers[3] = {0, g.k0, g.y3};
    for (std::int64_t y : centers) {
        if (std::fabs(static_cast<double>(y)) > 2.0 * ck) {
            rep.reason = "center outside [-2Ck, 2Ck]";
            return rep;
        }
    }
    const std::int64_t radius = static_cast<std::int64_t>(std::floor(10.0 * g.gamma * static_cast<double>(g.k)));
    const std::int64_t guard = radius; // |y - y_i| >= 10 gamma k
    const double relax = 3.0 * g.gamma * static_cast<double>(g.k);

    std::int64_t sorted[3] = {centers[0], centers[1], centers[2]};
    std::sort(sorted, sorted + 3);

    for (int pair = 0; pair < 2; ++pair) {
        const std::int64_t yi = sorted[pair];
        const std::int64_t yj = sorted[pair + 1];
        if (yj - yi < g.k)
            continue;
        if (std::fabs(static_cast<double>(yi)) > ck || std::fabs(static_cast<double>(yj)) > ck)
            continue;
        double ri, rj;
        try {
            ri = window_max_abs(phi, w, yi, radius);
            rj = window_max_abs(phi, w, yj, radius);
        } catch (const std::out_of_range&) {
            continue;
        }
        for (std::int64_t y = yi + guard; y <= yj - guard; ++y) {
            double ry;
            try {
                ry = window_max_abs(phi, w, y, radius);
            } catch (const std::out_of_range&) {
                continue;
            }
            rep.applicable = true;
            ++rep.checked;
            const double bi = ri * std::exp(-(lyap - g.eps) * (static_cast<double>(y - yi) - relax));
            const double bj = rj * std::exp(-(lyap - g.eps) * (static_cast<double>(yj - y) - relax));
            if (ry <= std::max(bi, bj))
                ++rep.passed;
            else
                rep.failures.push_back(y);
        }
    }
    if (!rep.applicable && rep.reason.empty())
        rep.reason = "no admissible y (separations below scale or window coverage)";
    return rep;
}

SingleResonanceReport single_resonance_check(std::span<const double> phi, const Window& w,
                                             const ModelParams& p, std::int64_t n_max,
                                             std::int64_t k, double t_expected, double eps,
                                             double t_match_rel, std::int64_t min_k)
{
    SingleResonanceReport rep;
    if (phi.size() != static_cast<std::size_t>(w.size()))
        throw std::invalid_argument("single_resonance_check: length/window mismatch");
    const double lyap = p.lyapunov();
    if (!(t_expected > 0.0) || !(t_expected < lyap)) {
        rep.reason = "t outside (0, L)";
        return rep;
    }
    if (std::llabs(k) < min_k) {
        rep.reason = "|k| below the large-|k| gate";
        return rep;
    }
    // frame shift: the eigenfunction's leftmost max defines the origin
    const long double theta_eff = frac1(static_cast<long double>(p.theta) +
                                        static_cast<long double>(n_max) * p.alpha.value);
    const long double arg = 2.0L * theta_eff + static_cast<long double>(k) * p.alpha.value;
    const long double sine = sinl(static_cast<long double>(M_PI) * torus_dist(arg));
    if (sine <= 0.0L) {
        rep.reason = "exact resonance: t undefined";
        return rep;
    }
    rep.t = static_cast<double>(-logl(sine) / static_cast<long double>(std::llabs(k)));
    if (std::fabs(rep.t - t_expected) > t_match_rel * t_expected) {
        rep.reason = "measured t does not match the requested resonance strength";
        return rep;
    }

    const auto u_norm = [&](std::int64_t x) {
        const std::int64_t site = n_max + x;
        if (site - 1 < w.lo || site > w.hi)
            throw std::out_of_range("single_resonance_check: U outside window");
        return hypot2(phi[static_cast<std::size_t>(site - w.lo)],
                      phi[static_cast<std::size_t>(site - 1 - w.lo)]);
    };
    try {
        rep.lhs = u_norm(k);
        rep.rhs = std::max(u_norm(0), u_norm(2 * k)) *
                  std::exp(-(lyap - rep.t - eps) * static_cast<double>(std::llabs(k)));
    } catch (const std::out_of_range&) {
        rep.reason = "window does not cover 0, k, 2k in the eigenfunction frame";
        return rep;
    }
    rep.applicable = true;
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace amolab
