#include "amolab/kernels.hpp"

#include <stdexcept>

namespace amolab::kernels {

double (*dot)(const double*, const double*, std::size_t) = scalar::dot;
double (*abs_dot)(const double*, const double*, std::size_t) = scalar::abs_dot;
double (*nrm2sq)(const double*, std::size_t) = scalar::nrm2sq;
void (*axpy)(double*, double, const double*, std::size_t) = scalar::axpy;
void (*sturm_count4)(const double*, const double*, std::size_t, double,
                     const double[4], double[4]) = scalar::sturm_count4;
void (*sturm_count8)(const double*, const double*, std::size_t, double,
                     const double[8], double[8]) = scalar::sturm_count8;
void (*min_frac_dist)(double, double, std::size_t, double*, std::size_t*) = scalar::min_frac_dist;

namespace {

const char* g_active = "scalar";

void bind_scalar()
{
    dot = scalar::dot;
    abs_dot = scalar::abs_dot;
    nrm2sq = scalar::nrm2sq;
    axpy = scalar::axpy;
    sturm_count4 = scalar::sturm_count4;
    sturm_count8 = scalar::sturm_count8;
    min_frac_dist = scalar::min_frac_dist;
    g_active = "scalar";
}

#if defined(__x86_64__)
void bind_avx2()
{
    dot = avx2::dot;
    abs_dot = avx2::abs_dot;
    nrm2sq = avx2::nrm2sq;
    axpy = avx2::axpy;
    sturm_count4 = avx2::sturm_count4;
    sturm_count8 = avx2::sturm_count8;
    min_frac_dist = avx2::min_frac_dist;
    g_active = "avx2";
}
#endif

struct AutoBind {
    AutoBind()
    {
#if defined(__x86_64__)
        if (cpu_has_avx2()) {
            bind_avx2();
            return;
        }
#endif
        bind_scalar();
    }
};

const AutoBind g_autobind{};

} // namespace

#if defined(__x86_64__)
bool cpu_has_avx2()
{
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const char* active_isa()
{
    return g_active;
}

void force_isa(const std::string& name)
{
    if (name == "scalar") {
        bind_scalar();
        return;
    }
#if defined(__x86_64__)
    if (name == "avx2") {
        if (!cpu_has_avx2())
            throw std::invalid_argument("avx2 not supported on this host");
        bind_avx2();
        return;
    }
#endif
    throw std::invalid_argument("unknown instruction set: " + name);
}

} // namespace amolab::kernels
