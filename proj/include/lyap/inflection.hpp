#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lyap/mapspec.hpp"

namespace lyap {

// Inflection points of the Lyapunov spectrum are in bijection with the roots
// of
//
//   I(s) = G(s) - H(s),   G(s) = 1 / (2 ln F(s)),
//                         H(s) = F(s) F''(s) / F'(s)^2 - 1,
//
// where s = -tau(alpha).  H is evaluated as variance/mean^2 of the Gibbs
// moments (algebraically identical, but free of the catastrophic
// cancellation in the F-ratio form when H is near zero).  All roots satisfy
// s < dimension: beyond the dimension ln F < 0 gives G < 0 <= H.

// One located root of the key equation.
struct InflectionPoint {
    double s;        // root parameter
    double alpha;    // its Lyapunov exponent, alpha_of_s(s)
    double s_lo;     // final bisection bracket
    double s_hi;
    double residual; // I(s) at the returned s
};

// 1/(2 ln F(s)).  Positive below the dimension, negative above;
// throws SingularAtDimension when ln F vanishes.
double key_lhs_G(const MapSpec& spec, double s);

// variance/mean^2 >= 0.  Throws DegenerateSpectrum for one length class.
double key_rhs_H(const MapSpec& spec, double s);

// Locate the roots of I on [s_lo, dimension - 1e-9], where s_lo is chosen so
// the scan covers all alpha up to within 1e-6 of the domain width from
// alpha_max.  The base grid is uniform in s with `grid_points` cells;
// cells whose endpoints differ by more than the matching uniform step in
// ln(alpha) are subdivided until they do not, so root clusters that live at
// widely separated alpha scales (the T_N family) are resolved at the same
// nominal resolution.  Each sign change is refined by bisection to a bracket
// of width 1e-13.  Roots are returned sorted by increasing s, equivalently
// decreasing alpha.
//
// Grid scanning cannot prove absence of roots between resolved points, and
// tangential (even-multiplicity) zeros of I carry no sign change; both limits
// are inherited by every caller.
std::vector<InflectionPoint> find_inflections(const MapSpec& spec,
                                              std::size_t grid_points = 65536);

// Concavity threshold for two-branch maps:
//   theta = (sqrt(2 ln 2) + 1) / (sqrt(2 ln 2) - 1) = 12.2733202...
// A two-branch map is concave iff the ratio of its branch exponents is at
// most theta, and otherwise has exactly two inflection points.
double two_branch_threshold();

enum class TwoBranchVerdict { Concave, TwoInflections };

struct TwoBranchClass {
    double lambda_ratio; // max lambda / min lambda, >= 1
    TwoBranchVerdict verdict;
};

// Requires total multiplicity 2 (throws NotTwoBranch otherwise).  The
// equal-length case is reported as Concave with ratio 1.
TwoBranchClass classify_two_branch(const MapSpec& spec);

// Entropy auxiliaries on (0,1), with phi(x) = x ln x + (1-x) ln(1-x):
//
//   Phi±(x) = -x + (phi'(x) ± sqrt(phi'(x)^2 - 2 phi(x) phi''(x))) / phi''(x).
//
// Phi+ >= -1 everywhere; Phi- decreases on (0,1/2) and increases on (1/2,1),
// which is what limits two-branch maps to at most two inflections.
double phi_plus(double x);
double phi_minus(double x);

// Interlacing certificate for T_N.  With s_k = (2k+1)/2^k and the midpoints
// m_k = (6k-1)/2^(k+1), the inequalities
//
//   G(m_k) > H(m_k)  for 26 <= k <= N,
//   G(s_k) < H(s_k)  for 26 <= k <= N-1,
//
// place a root of I in each of (m_(k+1), s_k) and (s_k, m_k), certifying at
// least 2(N-26) inflection points by the intermediate value theorem.
struct InterlacingRow {
    int k;
    double m_k;
    double G_at_m;
    double H_at_m;
    bool ok_m; // G_at_m > H_at_m
    std::optional<double> s_k; // absent on the final row k = N
    std::optional<double> G_at_s;
    std::optional<double> H_at_s;
    bool ok_s; // G_at_s < H_at_s (vacuously true when s_k is absent)
};

struct InterlacingReport {
    int N = 0;
    std::vector<InterlacingRow> rows;
    bool all_ok() const;
    // Smallest H(s_k) over the checked crossover points.
    double min_H_at_s() const;
};

// Evaluates the certificate for construct_tn(N), 27 <= N <= 60.
InterlacingReport verify_interlacing(int N);

// Empirical 0 <-> 2 transition of the inflection count for two-branch maps
// with the larger length fixed at 1/2, bisected in the exponent ratio until
// the bracket is narrower than tol.  Converges to two_branch_threshold().
double empirical_two_branch_threshold(double ratio_lo = 12.0,
                                      double ratio_hi = 13.0,
                                      double tol = 1e-6,
                                      std::size_t grid_points = 65536);

} // namespace lyap
