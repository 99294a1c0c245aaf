#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the solvers and the resonance scans.
// Each kernel has a scalar reference implementation and (on x86-64) an AVX2
// variant; the function pointers below are bound once at startup to the best
// instruction set the host supports. The scalar and AVX2 variants of
// sturm_count4 and min_frac_dist are bit-identical by construction (same
// per-lane operation sequence); the reduction kernels differ only in
// summation order.

namespace amolab::kernels {

// sum_i a[i]*b[i]
extern double (*dot)(const double* a, const double* b, std::size_t n);

// sum_i |a[i]*b[i]|
extern double (*abs_dot)(const double* a, const double* b, std::size_t n);

// sum_i a[i]^2
extern double (*nrm2sq)(const double* a, std::size_t n);

// y[i] += c * x[i]
extern void (*axpy)(double* y, double c, const double* x, std::size_t n);

// Sturm sign counts for four shifts at once. d has length n, e2 has length n
// with e2[0] ignored (e2[i] = square of the coupling between sites i-1 and i).
// counts[j] = number of eigenvalues of the tridiagonal matrix strictly below
// shifts[j], computed with pivots clamped away from zero by pivmin.
extern void (*sturm_count4)(const double* d, const double* e2, std::size_t n,
                            double pivmin, const double shifts[4], double counts[4]);

// Same contract for eight shifts; the AVX2 variant runs two independent
// recurrence chains so the divide latency overlaps.
extern void (*sturm_count8)(const double* d, const double* e2, std::size_t n,
                            double pivmin, const double shifts[8], double counts[8]);

// Minimum over j in [0, count) of dist(base + j*step, Z), where dist is the
// distance to the nearest integer. Ties resolve to the smallest j.
extern void (*min_frac_dist)(double base, double step, std::size_t count,
                             double* best_dist, std::size_t* best_j);

// Name of the active instruction set: "scalar" or "avx2".
const char* active_isa();

// Rebind the dispatch table; throws std::invalid_argument if the requested
// set is unknown or unsupported on this host. Intended for tests.
void force_isa(const std::string& name);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double abs_dot(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
void axpy(double* y, double c, const double* x, std::size_t n);
void sturm_count4(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[4], double counts[4]);
void sturm_count8(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[8], double counts[8]);
void min_frac_dist(double base, double step, std::size_t count,
                   double* best_dist, std::size_t* best_j);
} // namespace scalar

#if defined(__x86_64__)
bool cpu_has_avx2();
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double abs_dot(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
void axpy(double* y, double c, const double* x, std::size_t n);
void sturm_count4(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[4], double counts[4]);
void sturm_count8(const double* d, const double* e2, std::size_t n,
                  double pivmin, const double shifts[8], double counts[8]);
void min_frac_dist(double base, double step, std::size_t count,
                   double* best_dist, std::size_t* best_j);
} // namespace avx2
#endif

} // namespace amolab::kernels
