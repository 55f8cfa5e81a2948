#pragma once

#include <stdexcept>
#include <string>

namespace lyap {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed token or line in a spec file.
struct ParseError : Error {
    using Error::Error;
};

// Structurally well-formed input that violates a map invariant
// (length outside (0,1), multiplicity < 1, total length > 1, q < 2).
struct ValidationError : Error {
    using Error::Error;
};

// Integer argument outside its supported range.
struct RangeError : Error {
    using Error::Error;
};

// The map has a single length class, so the spectrum is a constant on a
// singleton domain; spectrum and inflection queries are meaningless.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

// Lyapunov exponent outside the open interval (alpha_min, alpha_max).
struct OutOfDomain : Error {
    using Error::Error;
};

// classify_two_branch called on a map without exactly two branches.
struct NotTwoBranch : Error {
    using Error::Error;
};

// 1/(2 log F(s)) evaluated where log F vanishes (s at the dimension).
struct SingularAtDimension : Error {
    using Error::Error;
};

// Argument outside (0,1) for the entropy auxiliaries.
struct OutOfRange : Error {
    using Error::Error;
};

// Failed file read/write in the CLI layer.
struct IoError : Error {
    using Error::Error;
};

} // namespace lyap
