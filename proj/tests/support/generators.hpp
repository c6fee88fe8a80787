#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "efinv/dense_core.hpp"

namespace efinv::testing {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_complex(Index m, Index n, Rng& rng);
ComplexMatrix random_unitary(Index n, Rng& rng);

/// m x n matrix of rank r with singular values drawn from [0.5, 2].
ComplexMatrix random_rank(Index m, Index n, Index r, Rng& rng);

/// n x n matrix of index exactly k: P diag(C, N) P^{-1} with C invertible
/// (singular values in [1, 2]) and N nilpotent with a longest Jordan chain of length k.
/// P is a unitary times a unit upper triangular factor of modest condition number.
ComplexMatrix random_with_index(Index n, int k, Rng& rng);

/// A, E, F with A^(E,F) = X, built from an outer inverse X = B (W A B)^{-1} W
/// with E = XA and F = AX. A is m x n of rank r, X has rank s <= r.
struct EfTriple {
    ComplexMatrix a;
    ComplexMatrix e;
    ComplexMatrix f;
    ComplexMatrix x;
};

EfTriple random_ef_triple(Index m, Index n, Index r, Index s, Rng& rng);

/// Perturbs a valid triple so that A^(E,F) no longer exists. `mode` selects
/// additive noise on E, a similarity on F, a similarity on E, or scaling F by 2.
EfTriple break_triple(EfTriple t, int mode, Rng& rng);

ComplexMatrix real_diag(std::initializer_list<double> d);

/// Nilpotent Jordan block of size n (ones on the superdiagonal).
ComplexMatrix jordan_nilpotent(Index n);

/// Matrices from the worked examples with parameters instantiated.
struct ExampleTriple {
    ComplexMatrix a;
    ComplexMatrix e;
    ComplexMatrix f;
    ComplexMatrix expected;
};

/// A = [a 0 0; 0 a 0; 0 0 0; 0 0 0], E and F averaging the first two coordinates.
ExampleTriple example_averaging(double a);
/// A = diag(a, b, 0), E = [1 1 0; 0 0 0; 0 0 0], F = [1 a/b 0; 0 0 0; 0 0 0].
ExampleTriple example_square(double a, double b);
/// A = [a 0 0; 0 b 0; 0 0 0; 0 0 0], E = [1 0 0; c 0 0; 0 0 0], F with bc/a in (2,1).
ExampleTriple example_canonical(double a, double b, double c);

} // namespace efinv::testing
