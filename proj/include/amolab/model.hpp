#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "amolab/arith.hpp"

namespace amolab {

// A numerical contract was violated (solver failed to converge, corrupted
// intermediate state, ...). Maps to process exit code 2 in the CLI.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    double lambda = 2.0;
    Frequency alpha;
    double theta = 0.0; // in [0,1)

    // L = ln lambda, the Lyapunov exponent on the spectrum for lambda > 1
    double lyapunov() const;
    bool supercritical() const { return lambda > 1.0; }
};

// Inclusive lattice interval [lo, hi].
struct Window {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::int64_t size() const { return hi - lo + 1; }
    bool contains(std::int64_t n) const { return n >= lo && n <= hi; }
    std::int64_t index_of(std::int64_t site) const; // throws if outside

    static Window centered(std::int64_t center, std::int64_t radius);
    // default sizing rule for experiments probing distance ell: [-4*ell, 4*ell]
    static Window probe(std::int64_t ell, std::int64_t multiplier = 4);
};

// V(n) = 2 lambda cos(2 pi (theta + n alpha)), angle reduced mod 1 in long
// double before the cosine.
double potential(const ModelParams& p, std::int64_t n);

struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off; // off[i] couples i and i+1

    std::size_t size() const { return diag.size(); }
    double one_norm() const;
};

// Dirichlet truncation of the operator to the window: diagonal = potential,
// off-diagonal = 1.
Tridiag build_hamiltonian(const ModelParams& p, const Window& w);

} // namespace amolab
