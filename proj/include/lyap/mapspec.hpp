#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyap/errors.hpp"

namespace lyap {

// A class of branches sharing one interval length.  Lengths and
// multiplicities are stored as base-2 logarithms: the interesting maps have
// multiplicities like 2^3600 and lengths like 2^(-2^60), far outside any
// fixed-width linear representation, while every downstream formula consumes
// only the log-weights.
struct BranchClass {
    double log2_length;       // log2 |X|, strictly negative
    double log2_multiplicity; // log2 of the branch count in this class, >= 0
};

enum class Degeneracy {
    NonDegenerate,
    ConstantSpectrum, // single length class: |T'| constant, spectrum constant
};

// A full-branch piecewise linear expanding map on disjoint closed
// sub-intervals of [0,1], described by interval lengths only.  Interval
// positions are never modeled: translating the intervals does not change the
// Lyapunov spectrum.
//
// Construction validates and canonicalizes:
//   - every length in (0,1), every class multiplicity >= 1,
//   - total branch count >= 2,
//   - total Lebesgue length <= 1 (evaluated in log-sum-exp form),
//   - classes with equal length merged, then sorted by increasing length.
class MapSpec {
  public:
    MapSpec(std::vector<BranchClass> classes, std::string label);

    const std::vector<BranchClass>& classes() const noexcept { return classes_; }
    const std::string& label() const noexcept { return label_; }

    Degeneracy degeneracy() const noexcept {
        return classes_.size() == 1 ? Degeneracy::ConstantSpectrum
                                    : Degeneracy::NonDegenerate;
    }

    // log2 of the total branch count (may exceed 10^3 for the T_N family).
    double total_log2_multiplicity() const noexcept { return total_log2_mult_; }

    // log2 of the total Lebesgue measure of the branch intervals.
    double total_log2_length() const noexcept { return total_log2_len_; }

  private:
    std::vector<BranchClass> classes_; // sorted by increasing log2_length
    std::string label_;
    double total_log2_mult_;
    double total_log2_len_;
};

// Spec-file grammar (UTF-8): one class per line, `<multiplicity> <length>`.
//   multiplicity: unsigned integer, or `2^<real>` with real >= 0
//   length:       decimal in (0,1), fraction `<int>/<int>`, or `2^<real>`
//                 with real < 0
// Lines starting with `#` and blank lines are ignored.
MapSpec parse_spec(std::string_view text, std::string label = "spec");

// Inverse of parse_spec up to class order: every log2 field survives the
// round trip bit-exactly (classes are rendered as 2^E tokens with 17
// significant digits).
std::string render(const MapSpec& spec);

// Parse a single length token from the spec-file grammar into log2 form.
double parse_length_token(std::string_view token);

// Two-branch map from length tokens (e.g. "1/2", "0.4", "2^-13").
MapSpec make_two_branch(std::string_view len1, std::string_view len2);

// Two-branch map from explicit log2 lengths.
MapSpec make_two_branch_log2(double log2_len1, double log2_len2);

// Bundled example maps with known spectrum features.  s4/s6/s8 are compact
// maps with exactly 4/6/8 inflection points; fig4/fig6 are the 22- and
// 7002-branch maps behind the bundled plots (4 and 6 inflections).
enum class Preset { S4, S6, S8, Fig4, Fig6 };

MapSpec preset(Preset which);
std::optional<Preset> preset_from_name(std::string_view name);
const std::vector<std::string>& preset_names();

// Member of the doubling family: for each j in 6..N, 2^(j^2) branches of
// length 2^(-2^j).  Total Lebesgue length is below 1e-8 for every N.
// N is capped at 60: dominant-term exponents j^2 - 2^j s stay O(N^2) where
// double rounding is harmless, while far-subdominant terms vanish after the
// log-sum-exp shift.
MapSpec construct_tn(int n);

inline constexpr int kTnMin = 6;
inline constexpr int kTnMax = 60;

} // namespace lyap
