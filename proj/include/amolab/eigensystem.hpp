#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "amolab/model.hpp"

namespace amolab {

// Full orthonormal eigensystem of a Dirichlet truncation, energies ascending.
// Vector s occupies vectors[s*n .. (s+1)*n); lattice site m maps to index
// m - window.lo.
struct EigenSystem {
    Window window;
    std::vector<double> energies;
    std::vector<double> vectors;

    struct Meta {
        std::int64_t n_max = 0;     // leftmost site attaining the sup norm
        double sup_norm = 0.0;      // max |phi|
        double boundary_mass = 0.0; // phi(lo)^2 + phi(hi)^2
    };
    std::vector<Meta> meta;

    std::size_t size() const { return energies.size(); }
    std::span<const double> vec(std::size_t s) const;
    double component(std::size_t s, std::int64_t site) const; // throws if outside

    // true when n_max is at least 10% of the window size away from both edges
    bool interior(std::size_t s) const;
};

// Smallest site where |phi| attains its maximum, under exact float
// comparison. phi is indexed over the window; throws on an all-zero input.
std::int64_t leftmost_max(std::span<const double> phi, const Window& w);

struct SolverOptions {
    // residual contract: ||H v - E v||_2 <= residual_factor * (|H|_1 + |E|)
    double residual_factor = 1.0e-10;
    // orthonormality contract on both the vector and the site sums
    double ortho_tol = 1.0e-8;
    std::uint64_t start_seed = 0x5deece66dULL; // inverse-iteration start vectors
};

// Bisection on Sturm sequences for all eigenvalues, then inverse iteration
// with reorthogonalization inside clusters. Throws NumericalError (with the
// offending eigenvalue cluster in the message) if the contracts cannot be
// met.
EigenSystem eigensystem(const Tridiag& t, const Window& w, const SolverOptions& opts = {});

// Eigenvalues only (same bisection path).
std::vector<double> eigenvalues(const Tridiag& t);

struct OrthoReport {
    double max_vector_dev = 0.0; // max_s |sum_m phi_s(m)^2 - 1|
    double max_site_dev = 0.0;   // max_m |sum_s phi_s(m)^2 - 1|
    double max_gram_offdiag = 0.0; // only filled by the full Gram check
};

// Cheap check: vector norms and site sums. full_gram additionally scans all
// pairwise inner products (O(n^3)).
OrthoReport orthonormality_report(const EigenSystem& es, bool full_gram = false);

// max_s ||H phi_s - E_s phi_s||_2 / (|H|_1 + |E_s|)
double max_relative_residual(const Tridiag& t, const EigenSystem& es);

} // namespace amolab
