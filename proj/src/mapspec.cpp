#include "lyap/mapspec.hpp"

#include <algorithm>
#include <limits>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace lyap {

namespace {

// log2(sum of 2^e) over a range of exponents, shifted by the maximum so the
// dominant term contributes exactly 1.
template <class Iter, class Proj>
double log2_sum_exp(Iter first, Iter last, Proj proj) {
    double emax = -std::numeric_limits<double>::infinity();
    for (Iter it = first; it != last; ++it)
        emax = std::max(emax, proj(*it));
    double acc = 0.0;
    for (Iter it = first; it != last; ++it)
        acc += std::exp2(proj(*it) - emax);
    return emax + std::log2(acc);
}

bool parse_real(std::string_view token, double& out) {
    std::string buf(token);
    const char* begin = buf.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + buf.size() && buf.size() > 0 && std::isfinite(out);
}

bool parse_uint(std::string_view token, unsigned long long& out) {
    if (token.empty() || !std::isdigit(static_cast<unsigned char>(token[0])))
        return false;
    std::string buf(token);
    const char* begin = buf.c_str();
    char* end = nullptr;
    out = std::strtoull(begin, &end, 10);
    return end == begin + buf.size();
}

double parse_multiplicity_token(std::string_view token) {
    if (token.rfind("2^", 0) == 0) {
        double e;
        if (!parse_real(token.substr(2), e))
            throw ParseError("bad multiplicity token: " + std::string(token));
        if (e < 0.0)
            throw ValidationError("multiplicity < 1: " + std::string(token));
        return e;
    }
    unsigned long long m;
    if (!parse_uint(token, m))
        throw ParseError("bad multiplicity token: " + std::string(token));
    if (m < 1)
        throw ValidationError("multiplicity < 1: " + std::string(token));
    return std::log2(static_cast<double>(m));
}

} // namespace

double parse_length_token(std::string_view token) {
    if (token.rfind("2^", 0) == 0) {
        double e;
        if (!parse_real(token.substr(2), e))
            throw ParseError("bad length token: " + std::string(token));
        if (e >= 0.0)
            throw ValidationError("length >= 1: " + std::string(token));
        return e;
    }
    if (token.find('/') != std::string_view::npos) {
        auto slash = token.find('/');
        unsigned long long p, q;
        if (!parse_uint(token.substr(0, slash), p) ||
            !parse_uint(token.substr(slash + 1), q))
            throw ParseError("bad fraction token: " + std::string(token));
        if (p == 0 || q == 0)
            throw ValidationError("length outside (0,1): " + std::string(token));
        if (p >= q)
            throw ValidationError("length >= 1: " + std::string(token));
        return std::log2(static_cast<double>(p)) - std::log2(static_cast<double>(q));
    }
    double v;
    if (!parse_real(token, v))
        throw ParseError("bad length token: " + std::string(token));
    if (v <= 0.0)
        throw ValidationError("length outside (0,1): " + std::string(token));
    if (v >= 1.0)
        throw ValidationError("length >= 1: " + std::string(token));
    return std::log2(v);
}

MapSpec::MapSpec(std::vector<BranchClass> classes, std::string label)
    : label_(std::move(label)) {
    if (classes.empty())
        throw ValidationError("map spec has no branch classes");
    for (const BranchClass& c : classes) {
        if (!std::isfinite(c.log2_length) || c.log2_length >= 0.0)
            throw ValidationError("branch length not in (0,1)");
        if (!std::isfinite(c.log2_multiplicity) || c.log2_multiplicity < 0.0)
            throw ValidationError("class multiplicity < 1");
    }

    std::sort(classes.begin(), classes.end(),
              [](const BranchClass& a, const BranchClass& b) {
                  return a.log2_length < b.log2_length;
              });

    // Merge classes with identical length (log-sum-exp on multiplicities).
    classes_.reserve(classes.size());
    for (const BranchClass& c : classes) {
        if (!classes_.empty() && classes_.back().log2_length == c.log2_length) {
            double a = classes_.back().log2_multiplicity;
            double b = c.log2_multiplicity;
            double hi = std::max(a, b), lo = std::min(a, b);
            classes_.back().log2_multiplicity = hi + std::log2(1.0 + std::exp2(lo - hi));
        } else {
            classes_.push_back(c);
        }
    }

    total_log2_mult_ = log2_sum_exp(
        classes_.begin(), classes_.end(),
        [](const BranchClass& c) { return c.log2_multiplicity; });
    total_log2_len_ = log2_sum_exp(
        classes_.begin(), classes_.end(),
        [](const BranchClass& c) { return c.log2_multiplicity + c.log2_length; });

    if (total_log2_mult_ < 1.0 - 1e-12)
        throw ValidationError("fewer than 2 branches");
    // Dust tolerance admits boundary specs like {2 x 1/2} whose total length
    // is exactly 1 up to rounding of the log-sum.
    if (total_log2_len_ > 1e-9)
        throw ValidationError("total branch length exceeds 1");
}

MapSpec parse_spec(std::string_view text, std::string label) {
    std::vector<BranchClass> classes;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string_view::npos)
            continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line[0] == '#')
            continue;

        std::size_t sp = line.find_first_of(" \t");
        if (sp == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected `<multiplicity> <length>`");
        std::string_view mt = line.substr(0, sp);
        std::string_view rest = line.substr(sp);
        std::size_t lb = rest.find_first_not_of(" \t");
        rest = rest.substr(lb);
        if (rest.find_first_of(" \t") != std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) +
                             ": trailing tokens after length");

        BranchClass c;
        c.log2_multiplicity = parse_multiplicity_token(mt);
        c.log2_length = parse_length_token(rest);
        classes.push_back(c);
    }
    return MapSpec(std::move(classes), std::move(label));
}

std::string render(const MapSpec& spec) {
    std::string out;
    char buf[80];
    for (const BranchClass& c : spec.classes()) {
        std::snprintf(buf, sizeof buf, "2^%.17g 2^%.17g\n", c.log2_multiplicity,
                      c.log2_length);
        out += buf;
    }
    return out;
}

MapSpec make_two_branch(std::string_view len1, std::string_view len2) {
    return make_two_branch_log2(parse_length_token(len1), parse_length_token(len2));
}

MapSpec make_two_branch_log2(double log2_len1, double log2_len2) {
    std::vector<BranchClass> classes{{log2_len1, 0.0}, {log2_len2, 0.0}};
    return MapSpec(std::move(classes), "two-branch");
}

namespace {

MapSpec from_fractions(
    std::initializer_list<std::pair<unsigned long long, std::pair<unsigned long long, unsigned long long>>> rows,
    std::string label) {
    std::vector<BranchClass> classes;
    for (const auto& [m, frac] : rows) {
        BranchClass c;
        c.log2_multiplicity = std::log2(static_cast<double>(m));
        c.log2_length = std::log2(static_cast<double>(frac.first)) -
                        std::log2(static_cast<double>(frac.second));
        classes.push_back(c);
    }
    return MapSpec(std::move(classes), std::move(label));
}

MapSpec from_log2(std::initializer_list<std::pair<unsigned long long, double>> rows,
                  std::string label) {
    std::vector<BranchClass> classes;
    for (const auto& [m, l2len] : rows)
        classes.push_back({l2len, std::log2(static_cast<double>(m))});
    return MapSpec(std::move(classes), std::move(label));
}

} // namespace

MapSpec preset(Preset which) {
    switch (which) {
    case Preset::S4:
        return from_fractions({{1, {4, 5}}, {5, {1, 65}}, {1, {1, 3380}}}, "s4");
    case Preset::S6:
        return from_fractions({{1, {4, 5}},
                               {30, {1, 400}},
                               {30, {1, 128000}},
                               {1, {1, 40960000}}},
                              "s6");
    case Preset::S8:
        return from_fractions({{1, {4, 5}},
                               {125, {1, 2000}},
                               {585, {1, 3200000}},
                               {109, {1, 5120000000ULL}},
                               {1, {1, 8192000000000ULL}}},
                              "s8");
    case Preset::Fig4:
        return from_log2({{1, -1.0}, {20, -45.0}, {1, -100.0}}, "fig4");
    case Preset::Fig6:
        return from_log2({{1, -1.0}, {1000, -51.0}, {6000, -101.0}, {1, -150.0}},
                         "fig6");
    }
    throw RangeError("unknown preset");
}

std::optional<Preset> preset_from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "s4") return Preset::S4;
    if (lower == "s6") return Preset::S6;
    if (lower == "s8") return Preset::S8;
    if (lower == "fig4") return Preset::Fig4;
    if (lower == "fig6") return Preset::Fig6;
    return std::nullopt;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"s4", "s6", "s8", "fig4", "fig6"};
    return names;
}

MapSpec construct_tn(int n) {
    if (n < kTnMin || n > kTnMax)
        throw RangeError("T_N requires " + std::to_string(kTnMin) + " <= N <= " +
                         std::to_string(kTnMax));
    std::vector<BranchClass> classes;
    classes.reserve(static_cast<std::size_t>(n - kTnMin + 1));
    for (int j = kTnMin; j <= n; ++j) {
        // Both fields are exact dyadics for j <= 60.
        classes.push_back({-std::exp2(static_cast<double>(j)),
                           static_cast<double>(j) * static_cast<double>(j)});
    }
    MapSpec spec(std::move(classes), "t" + std::to_string(n));
    // Sum_j 2^(j^2 - 2^j) stays below 1e-8 for every admissible N.
    if (spec.total_log2_length() > std::log2(1e-8))
        throw ValidationError("T_N total length bound violated");
    return spec;
}

} // namespace lyap
