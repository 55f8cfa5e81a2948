#pragma once

#include "lyap/mapspec.hpp"

namespace lyap {

// Gibbs-weight moments of the branch Lyapunov exponents
//
//   lambda_i = -ln|X_i|   under weights   w_i ∝ m_i |X_i|^s.
//
// These encode F(s) = Σ m_i |X_i|^s and its derivatives,
//
//   F(s)   = 2^log2F,
//   F'(s)  = -F(s) * mean,
//   F''(s) =  F(s) * second_moment,
//
// and hence the pressure p(t) = log F(-t) together with
//
//   p'(t)  = mean      at s = -t   (the Lyapunov exponent of the Gibbs state),
//   p''(t) = variance  at s = -t   (strictly positive off the degenerate case).
//
// All sums are computed after subtracting the maximum exponent, so F may span
// thousands of orders of magnitude without overflow; moments use the shifted
// normalized weights directly and never form F itself.  The natural-log
// conversion factor ln 2 is applied exactly once, here.
struct GibbsMoments {
    double s;             // parameter of F (equals -t)
    double log2F;         // base-2 log of F(s)
    double lnF;           // natural log of F(s) = p(-s)
    double mean;          // weighted mean of lambda_i, in nats
    double second_moment; // weighted mean of lambda_i^2
    double variance;      // >= 0; zero iff one length class
};

GibbsMoments moments(const MapSpec& spec, double s);

// Pressure p(t) = log F(-t), natural log.
double pressure_p(const MapSpec& spec, double t);

// p'(-s) = mean of the Gibbs weights at parameter s.  Strictly decreasing in
// s, with range the open interval (alpha_min, alpha_max).
// Throws DegenerateSpectrum for single-length-class maps.
double alpha_of_s(const MapSpec& spec, double s);

} // namespace lyap
