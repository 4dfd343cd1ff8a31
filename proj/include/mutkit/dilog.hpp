#pragma once

#include "mutkit/moebius.hpp"

namespace mutkit {

/// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1 - z) log|z|: the
/// volume of the ideal tetrahedron with cross-ratio z. Zero on the real
/// line and at the degenerate values 0, 1.
double bloch_wigner(Complex z);

/// True when bloch_wigner(z) returns 0 because z is 0, 1, or not finite.
bool bloch_wigner_degenerate(Complex z);

/// Cross-ratio of four sphere points, normalized so that
/// cross_ratio(0, 1, inf, z) = z. Computed from 2x2 determinants of the
/// homogeneous coordinates, so infinity needs no special case.
/// Throws CheckFailure ("Degenerate") if two points are within tol.
Complex cross_ratio(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& p2,
                    const SpherePoint& p3, double tol = 1e-12);

/// Cross-ratio or nullopt when two points coincide within tol.
std::optional<Complex> try_cross_ratio(const SpherePoint& p0, const SpherePoint& p1,
                                       const SpherePoint& p2, const SpherePoint& p3,
                                       double tol = 1e-12);

}  // namespace mutkit
