#include "lyap/pressure.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lyap {

GibbsMoments moments(const MapSpec& spec, double s) {
    constexpr double ln2 = std::numbers::ln2;
    const auto& cls = spec.classes();

    double emax = -std::numeric_limits<double>::infinity();
    for (const BranchClass& c : cls)
        emax = std::max(emax, c.log2_multiplicity + s * c.log2_length);

    // Shifted weights: the dominant class contributes exactly 1, so the
    // normalizer W lies in [1, q] and never underflows.
    double W = 0.0, wl = 0.0;
    for (const BranchClass& c : cls) {
        double w = std::exp2(c.log2_multiplicity + s * c.log2_length - emax);
        W += w;
        wl += w * (-ln2 * c.log2_length);
    }
    const double mean = wl / W;

    // Two-pass variance: second_moment - mean^2 cancels catastrophically
    // whenever the weights concentrate on one class.
    double wv = 0.0;
    for (const BranchClass& c : cls) {
        double w = std::exp2(c.log2_multiplicity + s * c.log2_length - emax);
        double d = -ln2 * c.log2_length - mean;
        wv += w * d * d;
    }
    const double variance = wv / W;

    GibbsMoments m;
    m.s = s;
    m.log2F = emax + std::log2(W);
    m.lnF = ln2 * m.log2F;
    m.mean = mean;
    m.variance = variance;
    m.second_moment = variance + mean * mean;
    return m;
}

double pressure_p(const MapSpec& spec, double t) {
    return moments(spec, -t).lnF;
}

double alpha_of_s(const MapSpec& spec, double s) {
    if (spec.degeneracy() == Degeneracy::ConstantSpectrum)
        throw DegenerateSpectrum("constant spectrum: " + spec.label());
    return moments(spec, s).mean;
}

} // namespace lyap
