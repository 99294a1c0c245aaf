#if defined(__x86_64__)

#include "amolab/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace amolab::kernels::avx2 {

namespace {

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d abs_pd(__m256d v)
{
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

} // namespace

double dot(const double* a, const double* b, std::size_t n)
{
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    }
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

double abs_dot(const double* a, const double* b, std::size_t n)
{
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_add_pd(s0, abs_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
        s1 = _mm256_add_pd(s1, abs_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4))));
    }
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i)
        s += std::fabs(a[i] * b[i]);
    return s;
}

double nrm2sq(const double* a, std::size_t n)
{
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(a + i);
        const __m256d v1 = _mm256_loadu_pd(a + i + 4);
        s0 = _mm256_fmadd_pd(v0, v0, s0);
        s1 = _mm256_fmadd_pd(v1, v1, s1);
    }
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i)
        s += a[i] * a[i];
    return s;
}

void axpy(double* y, double c, const double* x, std::size_t n)
{
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(cv, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i)
        y[i] += c * x[i];
}

void sturm_count4(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[4], double counts[4])
{
    const __m256d x = _mm256_loadu_pd(shifts);
    const __m256d piv = _mm256_set1_pd(pivmin);
    const __m256d negpiv = _mm256_set1_pd(-pivmin);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    __m256d p = _mm256_sub_pd(_mm256_set1_pd(d[0]), x);
    __m256d small = _mm256_cmp_pd(abs_pd(p), piv, _CMP_LT_OQ);
    p = _mm256_blendv_pd(p, negpiv, small);
    __m256d cnt = _mm256_and_pd(_mm256_cmp_pd(p, zero, _CMP_LT_OQ), one);

    for (std::size_t i = 1; i < n; ++i) {
        const __m256d di = _mm256_set1_pd(d[i]);
        const __m256d e2i = _mm256_set1_pd(e2[i]);
        p = _mm256_sub_pd(_mm256_sub_pd(di, x), _mm256_div_pd(e2i, p));
        small = _mm256_cmp_pd(abs_pd(p), piv, _CMP_LT_OQ);
        p = _mm256_blendv_pd(p, negpiv, small);
        cnt = _mm256_add_pd(cnt, _mm256_and_pd(_mm256_cmp_pd(p, zero, _CMP_LT_OQ), one));
    }
    _mm256_storeu_pd(counts, cnt);
}

void sturm_count8(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[8], double counts[8])
{
    const __m256d xa = _mm256_loadu_pd(shifts);
    const __m256d xb = _mm256_loadu_pd(shifts + 4);
    const __m256d piv = _mm256_set1_pd(pivmin);
    const __m256d negpiv = _mm256_set1_pd(-pivmin);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    __m256d pa = _mm256_sub_pd(_mm256_set1_pd(d[0]), xa);
    __m256d pb = _mm256_sub_pd(_mm256_set1_pd(d[0]), xb);
    pa = _mm256_blendv_pd(pa, negpiv, _mm256_cmp_pd(abs_pd(pa), piv, _CMP_LT_OQ));
    pb = _mm256_blendv_pd(pb, negpiv, _mm256_cmp_pd(abs_pd(pb), piv, _CMP_LT_OQ));
    __m256d ca = _mm256_and_pd(_mm256_cmp_pd(pa, zero, _CMP_LT_OQ), one);
    __m256d cb = _mm256_and_pd(_mm256_cmp_pd(pb, zero, _CMP_LT_OQ), one);

    for (std::size_t i = 1; i < n; ++i) {
        const __m256d di = _mm256_set1_pd(d[i]);
        const __m256d e2i = _mm256_set1_pd(e2[i]);
        pa = _mm256_sub_pd(_mm256_sub_pd(di, xa), _mm256_div_pd(e2i, pa));
        pb = _mm256_sub_pd(_mm256_sub_pd(di, xb), _mm256_div_pd(e2i, pb));
        pa = _mm256_blendv_pd(pa, negpiv, _mm256_cmp_pd(abs_pd(pa), piv, _CMP_LT_OQ));
        pb = _mm256_blendv_pd(pb, negpiv, _mm256_cmp_pd(abs_pd(pb), piv, _CMP_LT_OQ));
        ca = _mm256_add_pd(ca, _mm256_and_pd(_mm256_cmp_pd(pa, zero, _CMP_LT_OQ), one));
        cb = _mm256_add_pd(cb, _mm256_and_pd(_mm256_cmp_pd(pb, zero, _CMP_LT_OQ), one));
    }
    _mm256_storeu_pd(counts, ca);
    _mm256_storeu_pd(counts + 4, cb);
}

void min_frac_dist(double base, double step, std::size_t count,
                   double* best_dist, std::size_t* best_j)
{
    double best = 1.0;
    std::size_t arg = 0;
    std::size_t j = 0;

    if (count >= 8) {
        const __m256d basev = _mm256_set1_pd(base);
        const __m256d stepv = _mm256_set1_pd(step);
        const __m256d four = _mm256_set1_pd(4.0);
        __m256d jv = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
        __m256d bestv = _mm256_set1_pd(1.0);
        __m256d argv = _mm256_setzero_pd();
        for (; j + 4 <= count; j += 4) {
            const __m256d r = _mm256_fmadd_pd(jv, stepv, basev);
            const __m256d rn = _mm256_round_pd(r, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
            const __m256d dist = abs_pd(_mm256_sub_pd(r, rn));
            const __m256d better = _mm256_cmp_pd(dist, bestv, _CMP_LT_OQ);
            bestv = _mm256_blendv_pd(bestv, dist, better);
            argv = _mm256_blendv_pd(argv, jv, better);
            jv = _mm256_add_pd(jv, four);
        }
        double bl[4], al[4];
        _mm256_storeu_pd(bl, bestv);
        _mm256_storeu_pd(al, argv);
        for (int lane = 0; lane < 4; ++lane) {
            if (bl[lane] < best || (bl[lane] == best && static_cast<std::size_t>(al[lane]) < arg)) {
                best = bl[lane];
                arg = static_cast<std::size_t>(al[lane]);
            }
        }
    }
    for (; j < count; ++j) {
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

} // namespace amolab::kernels::avx2

#endif // __x86_64__
