#pragma once

#include <cstddef>
#include <vector>

#include "lyap/mapspec.hpp"
#include "lyap/pressure.hpp"

namespace lyap {

// Closed interval of attainable Lyapunov exponents, in nats.
struct DomainInterval {
    double alpha_min;
    double alpha_max;
    double width() const noexcept { return alpha_max - alpha_min; }
};

// The spectrum and its first two derivatives at one Lyapunov exponent,
// computed through the pressure parameterization
//
//   L(alpha)  = p(t)/alpha - t,          t = tau(alpha),
//   L'(alpha) = -p(t)/alpha^2,
//   L''(alpha) = (2 p(t) p''(t) - alpha^2) / (p''(t) alpha^3).
struct SpectrumPoint {
    double alpha; // Lyapunov exponent, nats
    double t;     // tau(alpha)
    double s;     // -t, the F-side parameter
    double L;     // Hausdorff dimension of the level set
    double dL;
    double d2L;
};

// Endpoints are the extreme branch exponents -ln|X_i|.
// Throws DegenerateSpectrum when there is a single length class.
DomainInterval domain(const MapSpec& spec);

// Root of the Moran equation Sum m_i |X_i|^s = 1, i.e. the Hausdorff
// dimension of the invariant set.  Bisection on the strictly decreasing
// ln F over [0,1]; the residual |ln F| at the returned point is below 1e-12.
double dimension(const MapSpec& spec);

// Inverse of p': the unique t with p'(t) = alpha, located by bracketed
// bisection with automatic bracket expansion (start [-64,64], double the
// failing end, cap 2^20).  |p'(t) - alpha| <= 1e-12 (1 + alpha).
// Throws OutOfDomain at or beyond the endpoints, where tau diverges.
double tau(const MapSpec& spec, double alpha);

SpectrumPoint eval_spectrum(const MapSpec& spec, double alpha);

// The unique critical point of L, at alpha = p'(-dimension).
double critical_alpha(const MapSpec& spec);

// Two-branch closed form: with derivative moduli 1 < a < b and
// x = (ln b - alpha)/ln(b/a),
//
//   L(alpha) = (-x ln x - (1-x) ln(1-x)) / alpha,
//
// extended by 0 at the endpoints.  Serves as an independent oracle for the
// pressure route.
double closed_form_two_branch(double a, double b, double alpha);

// n spectrum points at uniformly spaced alpha over the domain shrunk by
// `margin` (a fraction of the width) at both ends.  n >= 2, 0 < margin < 1/2.
std::vector<SpectrumPoint> sample_spectrum(const MapSpec& spec, std::size_t n,
                                           double margin);

} // namespace lyap
