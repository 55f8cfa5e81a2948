#include "lyap/inflection.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lyap/parallel.hpp"
#include "lyap/pressure.hpp"
#include "lyap/spectrum.hpp"

namespace lyap {

namespace {

constexpr double ln2 = std::numbers::ln2;
constexpr double kDimExclusion = 1e-9;   // G blows up at the dimension
constexpr double kAlphaMargin = 1e-6;    // scan start, as a fraction of |A|
constexpr double kBracketWidth = 1e-13;  // root bisection target

struct KeyEval {
    double I;
    double ln_alpha;
};

KeyEval eval_key(const MapSpec& spec, double s) {
    const GibbsMoments m = moments(spec, s);
    const double G = 1.0 / (2.0 * m.lnF);
    const double H = m.variance / (m.mean * m.mean);
    return {G - H, std::log(m.mean)};
}

// Solve alpha_of_s(s) = target on the strictly decreasing mean, returning
// the low end of the final bracket so the scan starts at alpha above target.
double solve_s_for_alpha(const MapSpec& spec, double target, double s_hint_hi) {
    auto mean_at = [&](double s) { return moments(spec, s).mean; };

    double lo = -64.0;
    while (mean_at(lo) <= target) {
        lo *= 2.0;
        if (lo < -1048576.0)
            return lo; // target indistinguishable from alpha_max
    }
    double hi = s_hint_hi;
    while (mean_at(hi) >= target) {
        hi = hi * 2.0 + 1.0;
        if (hi > 1048576.0)
            break;
    }
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (mean_at(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

void bisect_root(const MapSpec& spec, double s0, double I0, double s1,
                 double I1, std::vector<InflectionPoint>& out) {
    while (s1 - s0 > kBracketWidth) {
        double mid = 0.5 * (s0 + s1);
        if (mid == s0 || mid == s1)
            break;
        double Im = eval_key(spec, mid).I;
        if (Im == 0.0) {
            s0 = s1 = mid;
            break;
        }
        if ((Im < 0.0) == (I0 < 0.0)) {
            s0 = mid;
            I0 = Im;
        } else {
            s1 = mid;
            I1 = Im;
        }
    }
    InflectionPoint pt;
    pt.s = 0.5 * (s0 + s1);
    pt.s_lo = s0;
    pt.s_hi = s1;
    pt.residual = eval_key(spec, pt.s).I;
    pt.alpha = alpha_of_s(spec, pt.s);
    out.push_back(pt);
}

// Walk one base cell, subdividing wherever the endpoints are farther apart
// than eta in ln(alpha); atomic segments contribute a root per sign change.
void scan_segment(const MapSpec& spec, double s0, const KeyEval& e0, double s1,
                  const KeyEval& e1, double eta,
                  std::vector<InflectionPoint>& out) {
    if (std::fabs(e0.ln_alpha - e1.ln_alpha) > eta && s1 - s0 > kBracketWidth) {
        double mid = 0.5 * (s0 + s1);
        if (mid > s0 && mid < s1) {
            KeyEval em = eval_key(spec, mid);
            scan_segment(spec, s0, e0, mid, em, eta, out);
            scan_segment(spec, mid, em, s1, e1, eta, out);
            return;
        }
    }
    if ((e0.I < 0.0 && e1.I > 0.0) || (e0.I > 0.0 && e1.I < 0.0))
        bisect_root(spec, s0, e0.I, s1, e1.I, out);
}

} // namespace

double key_lhs_G(const MapSpec& spec, double s) {
    const double lnF = moments(spec, s).lnF;
    if (std::fabs(lnF) < 1e-300)
        throw SingularAtDimension("ln F vanishes at s = dimension");
    return 1.0 / (2.0 * lnF);
}

double key_rhs_H(const MapSpec& spec, double s) {
    if (spec.degeneracy() == Degeneracy::ConstantSpectrum)
        throw DegenerateSpectrum("constant spectrum: " + spec.label());
    const GibbsMoments m = moments(spec, s);
    return m.variance / (m.mean * m.mean);
}

std::vector<InflectionPoint> find_inflections(const MapSpec& spec,
                                              std::size_t grid_points) {
    if (spec.degeneracy() == Degeneracy::ConstantSpectrum)
        throw DegenerateSpectrum("constant spectrum: " + spec.label());
    if (grid_points < 64)
        throw RangeError("find_inflections requires grid_points >= 64");

    const double dim = dimension(spec);
    const DomainInterval dom = domain(spec);

    const double alpha_top = dom.alpha_max - kAlphaMargin * dom.width();
    const double s_lo = solve_s_for_alpha(spec, alpha_top, dim);
    const double s_hi = dim - kDimExclusion;
    if (!(s_lo < s_hi))
        return {};

    const double step = (s_hi - s_lo) / static_cast<double>(grid_points);
    const double eta =
        std::log(dom.alpha_max / dom.alpha_min) / static_cast<double>(grid_points);

    std::vector<double> node_s(grid_points + 1);
    std::vector<KeyEval> node(grid_points + 1);
    for (std::size_t i = 0; i <= grid_points; ++i)
        node_s[i] = i == grid_points ? s_hi : s_lo + step * static_cast<double>(i);
    parallel_for(grid_points + 1,
                 [&](std::size_t i) { node[i] = eval_key(spec, node_s[i]); });

    std::vector<InflectionPoint> roots;
    for (std::size_t i = 0; i < grid_points; ++i) {
        if (node[i].I == 0.0) {
            InflectionPoint pt;
            pt.s = pt.s_lo = pt.s_hi = node_s[i];
            pt.residual = 0.0;
            pt.alpha = alpha_of_s(spec, pt.s);
            roots.push_back(pt);
        }
        scan_segment(spec, node_s[i], node[i], node_s[i + 1], node[i + 1], eta,
                     roots);
    }
    return roots;
}

double two_branch_threshold() {
    const double r = std::sqrt(2.0 * ln2);
    return (r + 1.0) / (r - 1.0);
}

TwoBranchClass classify_two_branch(const MapSpec& spec) {
    const double total = std::exp2(spec.total_log2_multiplicity());
    if (spec.classes().size() > 2 || std::fabs(total - 2.0) > 1e-9)
        throw NotTwoBranch("expected exactly two branches");
    if (spec.classes().size() == 1)
        return {1.0, TwoBranchVerdict::Concave};
    // Sorted by increasing length: front carries the larger exponent.
    const double ratio =
        spec.classes().front().log2_length / spec.classes().back().log2_length;
    return {ratio, ratio <= two_branch_threshold()
                       ? TwoBranchVerdict::Concave
                       : TwoBranchVerdict::TwoInflections};
}

namespace {

double phi_pm(double x, double sign) {
    if (!(x > 0.0 && x < 1.0))
        throw OutOfRange("Phi requires 0 < x < 1");
    const double phi = x * std::log(x) + (1.0 - x) * std::log(1.0 - x);
    const double dphi = std::log(x / (1.0 - x));
    const double d2phi = 1.0 / (x * (1.0 - x));
    const double disc = std::max(dphi * dphi - 2.0 * phi * d2phi, 0.0);
    return -x + (dphi + sign * std::sqrt(disc)) / d2phi;
}

} // namespace

double phi_plus(double x) { return phi_pm(x, +1.0); }
double phi_minus(double x) { return phi_pm(x, -1.0); }

bool InterlacingReport::all_ok() const {
    for (const InterlacingRow& row : rows)
        if (!row.ok_m || !row.ok_s)
            return false;
    return !rows.empty();
}

double InterlacingReport::min_H_at_s() const {
    double h = std::numeric_limits<double>::infinity();
    for (const InterlacingRow& row : rows)
        if (row.H_at_s)
            h = std::min(h, *row.H_at_s);
    return h;
}

InterlacingReport verify_interlacing(int N) {
    if (N < 27 || N > kTnMax)
        throw RangeError("verify_interlacing requires 27 <= N <= " +
                         std::to_string(kTnMax));
    const MapSpec spec = construct_tn(N);

    InterlacingReport report;
    report.N = N;
    for (int k = 26; k <= N; ++k) {
        InterlacingRow row;
        row.k = k;
        // Exact dyadic rationals for k <= 60.
        row.m_k = (6.0 * k - 1.0) * std::exp2(-(k + 1.0));
        row.G_at_m = key_lhs_G(spec, row.m_k);
        row.H_at_m = key_rhs_H(spec, row.m_k);
        row.ok_m = row.G_at_m > row.H_at_m;
        row.ok_s = true;
        if (k <= N - 1) {
            row.s_k = (2.0 * k + 1.0) * std::exp2(static_cast<double>(-k));
            row.G_at_s = key_lhs_G(spec, *row.s_k);
            row.H_at_s = key_rhs_H(spec, *row.s_k);
            row.ok_s = *row.G_at_s < *row.H_at_s;
        }
        report.rows.push_back(row);
    }
    return report;
}

double empirical_two_branch_threshold(double ratio_lo, double ratio_hi,
                                      double tol, std::size_t grid_points) {
    auto count = [&](double ratio) {
        MapSpec spec = make_two_branch_log2(-1.0, -ratio);
        return find_inflections(spec, grid_points).size();
    };
    while (ratio_hi - ratio_lo > tol) {
        double mid = 0.5 * (ratio_lo + ratio_hi);
        if (mid == ratio_lo || mid == ratio_hi)
            break;
        if (count(mid) >= 2)
            ratio_hi = mid;
        else
            ratio_lo = mid;
    }
    return 0.5 * (ratio_lo + ratio_hi);
}

} // namespace lyap
