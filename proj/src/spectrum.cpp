#include "lyap/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lyap/parallel.hpp"

namespace lyap {

namespace {
constexpr double ln2 = std::numbers::ln2;
constexpr double kBracketStart = 64.0;
constexpr double kBracketCap = 1048576.0; // 2^20
} // namespace

DomainInterval domain(const MapSpec& spec) {
    if (spec.degeneracy() == Degeneracy::ConstantSpectrum)
        throw DegenerateSpectrum("constant spectrum: " + spec.label());
    // Classes are sorted by increasing length, so the front has the largest
    // exponent and the back the smallest.
    return {-ln2 * spec.classes().back().log2_length,
            -ln2 * spec.classes().front().log2_length};
}

double dimension(const MapSpec& spec) {
    // ln F is strictly decreasing with ln F(0) = ln q > 0, and
    // ln F(1) = ln(total length) <= 0 for validated specs.
    double f1 = ln2 * moments(spec, 1.0).log2F;
    if (f1 >= 0.0)
        return 1.0; // total length exactly 1
    double lo = 0.0, hi = 1.0;
    double best = 1.0, best_abs = std::fabs(f1);
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        double f = moments(spec, mid).lnF;
        if (std::fabs(f) < best_abs) {
            best_abs = std::fabs(f);
            best = mid;
        }
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

double tau(const MapSpec& spec, double alpha) {
    DomainInterval dom = domain(spec);
    if (!(alpha > dom.alpha_min && alpha < dom.alpha_max))
        throw OutOfDomain("alpha outside the open spectrum domain");

    auto pprime = [&](double t) { return moments(spec, -t).mean; };

    double lo = -kBracketStart, hi = kBracketStart;
    while (pprime(lo) >= alpha) {
        lo *= 2.0;
        if (lo < -kBracketCap)
            throw OutOfDomain("tau bracket exhausted below");
    }
    while (pprime(hi) <= alpha) {
        hi *= 2.0;
        if (hi > kBracketCap)
            throw OutOfDomain("tau bracket exhausted above");
    }

    const double tol = 1e-12 * (1.0 + std::fabs(alpha));
    double best = 0.5 * (lo + hi);
    double best_err = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 400; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        double pm = pprime(mid);
        double err = std::fabs(pm - alpha);
        if (err < best_err) {
            best_err = err;
            best = mid;
        }
        if (err <= tol)
            break;
        if (pm < alpha)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

SpectrumPoint eval_spectrum(const MapSpec& spec, double alpha) {
    const double t = tau(spec, alpha);
    const GibbsMoments m = moments(spec, -t);
    const double p = m.lnF;       // p(t)
    const double pdd = m.variance; // p''(t)

    SpectrumPoint pt;
    pt.alpha = alpha;
    pt.t = t;
    pt.s = -t;
    pt.L = p / alpha - t;
    pt.dL = -p / (alpha * alpha);
    pt.d2L = (2.0 * p * pdd - alpha * alpha) / (pdd * alpha * alpha * alpha);
    return pt;
}

double critical_alpha(const MapSpec& spec) {
    return alpha_of_s(spec, dimension(spec));
}

double closed_form_two_branch(double a, double b, double alpha) {
    if (!(1.0 < a && a < b))
        throw OutOfDomain("closed form requires 1 < a < b");
    const double la = std::log(a), lb = std::log(b);
    if (!(alpha >= la && alpha <= lb))
        throw OutOfDomain("alpha outside [log a, log b]");
    if (alpha == la || alpha == lb)
        return 0.0;
    const double x = (lb - alpha) / (lb - la);
    auto xlnx = [](double u) { return u > 0.0 ? u * std::log(u) : 0.0; };
    return (-xlnx(x) - xlnx(1.0 - x)) / alpha;
}

std::vector<SpectrumPoint> sample_spectrum(const MapSpec& spec, std::size_t n,
                                           double margin) {
    if (n < 2)
        throw RangeError("sample_spectrum requires n >= 2");
    if (!(margin > 0.0 && margin < 0.5))
        throw RangeError("sample_spectrum requires 0 < margin < 1/2");
    DomainInterval dom = domain(spec);
    const double lo = dom.alpha_min + margin * dom.width();
    const double hi = dom.alpha_max - margin * dom.width();
    const double step = (hi - lo) / static_cast<double>(n - 1);

    std::vector<SpectrumPoint> out(n);
    parallel_for(n, [&](std::size_t i) {
        double alpha = i + 1 == n ? hi : lo + step * static_cast<double>(i);
        out[i] = eval_spectrum(spec, alpha);
    });
    return out;
}

} // namespace lyap
