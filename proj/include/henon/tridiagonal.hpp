#pragma once

#include <cstddef>
#include <vector>

namespace henon {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;
};

/// Inertia from the pivots of the LDL^T factorization (Sylvester's law).
/// Exactly vanishing pivots are counted as zero and replaced by a tiny value
/// so the factorization can proceed.
Inertia inertia(const SymTridiagonal& a);

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
int sturm_count(const SymTridiagonal& a, double shift);

/// Number of eigenvalues of the pencil (A, B) below `shift`, with B symmetric
/// positive definite: the negative inertia of A - shift·B.
int pencil_count(const SymTridiagonal& a, const SymTridiagonal& b, double shift);

/// The j-th smallest eigenvalue (1-based) in [lo, hi] by Sturm bisection, to
/// |error| <= tol·(1 + |λ|). Requires sturm_count(lo) < j <= sturm_count(hi).
double bisect_eigenvalue(const SymTridiagonal& a, int j, double lo, double hi, double tol);

} // namespace henon
