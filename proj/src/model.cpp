#include "amolab/model.hpp"

#include <cmath>

namespace amolab {

double ModelParams::lyapunov() const
{
    return std::log(lambda);
}

std::int64_t Window::index_of(std::int64_t site) const
{
    if (!contains(site))
        throw std::out_of_range("Window::index_of: site outside window");
    return site - lo;
}

Window Window::centered(std::int64_t center, std::int64_t radius)
{
    if (radius < 0)
        throw std::invalid_argument("Window::centered: negative radius");
    return Window{center - radius, center + radius};
}

Window Window::probe(std::int64_t ell, std::int64_t multiplier)
{
    const std::int64_t r = multiplier * std::llabs(ell);
    return Window{-r, r};
}

double potential(const ModelParams& p, std::int64_t n)
{
    const long double angle = frac1(static_cast<long double>(p.theta) +
                                    static_cast<long double>(n) * p.alpha.value);
    return 2.0 * p.lambda * std::cos(2.0 * M_PI * static_cast<double>(angle));
}

double Tridiag::one_norm() const
{
    const std::size_t n = size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::fabs(diag[i]);
        if (i > 0)
            s += std::fabs(off[i - 1]);
        if (i + 1 < n)
            s += std::fabs(off[i]);
        if (s > m)
            m = s;
    }
    return m;
}

Tridiag build_hamiltonian(const ModelParams& p, const Window& w)
{
    if (w.lo > w.hi)
        throw std::invalid_argument("build_hamiltonian: empty window");
    const std::size_t n = static_cast<std::size_t>(w.size());
    Tridiag t;
    t.diag.resize(n);
    t.off.assign(n > 0 ? n - 1 : 0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        t.diag[i] = potential(p, w.lo + static_cast<std::int64_t>(i));
    return t;
}

} // namespace amolab
