#pragma once

#include <cstdint>
#include <vector>

namespace amolab {

// Distance from x to the nearest integer, in [0, 1/2]. Frequencies are kept
// in long double so k*alpha stays accurate for |k| up to ~1e6.
long double torus_dist(long double x);

// Fractional part in [0, 1).
long double frac1(long double x);

// A frequency in (0,1) together with its continued-fraction data.
// convergents[i] = (p_i, q_i) starting from the 0th convergent (0, 1);
// cf_terms[i-1] is the partial quotient a_i that produced convergents[i].
struct Frequency {
    long double value = 0.0L;
    std::vector<std::int64_t> cf_terms;
    struct Convergent {
        std::int64_t p = 0;
        std::int64_t q = 1;
    };
    std::vector<Convergent> convergents;
    bool rational = false;   // expansion terminated exactly
    bool truncated = false;  // stopped because q_n would overflow 64 bits

    // Finite-depth sequence ln q_{n+1} / q_n; interpretation (weak Liouville
    // vs Diophantine) is left to the caller since it is a limit statement.
    std::vector<double> log_q_ratios() const;

    // ||k * value||, computed in long double
    long double dist_multiple(std::int64_t k) const;

    static Frequency golden(int depth = 40);  // (sqrt5 - 1)/2
    static Frequency silver(int depth = 40);  // sqrt2 - 1
    static Frequency from_value(long double v, int depth = 40);
};

Frequency continued_fraction(long double alpha, int depth);

struct DiophantineFit {
    bool ok = false;          // false when a k with ||k alpha|| ~ 0 was found
    std::int64_t zero_k = 0;  // witness when !ok
    double kappa = 0.0;       // smallest grid kappa whose infimum stabilized
    double tau = 0.0;         // min_k ||k alpha|| * k^kappa over the scan
    std::int64_t worst_k = 0; // argmin attaining tau
    bool stabilized = false;  // argmin not pinned at the boundary of the scan
};

// Grid-searches kappa over [0.5, 4] in steps of 0.01 and reports the smallest
// kappa for which the infimum of ||k alpha|| k^kappa over 1 <= k <= k_max is
// attained away from the large-k boundary (specifically at k <= sqrt(k_max)),
// together with the corresponding tau and witness. Heuristic input for
// window-size constants, not a proof device.
DiophantineFit diophantine_fit(const Frequency& alpha, std::int64_t k_max);

} // namespace amolab
