// Error hierarchy.  Every failure mode of the library is a subclass of
// chatelet::Error so callers (and the CLI) can catch one type.  The
// "bug trap" errors (MismatchError, DivisibilityError, ClassNotInSigma,
// LiftFailure) signal violated internal identities rather than bad input:
// if one fires, the library itself is wrong.
#pragma once

#include <stdexcept>
#include <string>

namespace chatelet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CHATELET_ERROR(NAME)                                        \
    struct NAME : Error {                                           \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

CHATELET_ERROR(GcdError);          // gcd(a3,b3) or gcd(a4,b4) != 1
CHATELET_ERROR(DegenerateError);   // some resultant Delta_{j,k} vanishes
CHATELET_ERROR(NotSplitError);     // prime = 3 mod 4 passed to canonical_split
CHATELET_ERROR(InvalidPoint);      // 5-tuple fails the torsor equation
CHATELET_ERROR(ClassNotInSigma);   // assigned class falls outside Sigma (bug trap)
CHATELET_ERROR(LiftFailure);       // torsor lift inconsistent (bug trap)
CHATELET_ERROR(DegeneratePoint);   // coloring requested for a degenerate point
CHATELET_ERROR(MismatchError);     // two independent scan strategies disagree (bug trap)
CHATELET_ERROR(DivisibilityError); // Moebius total not divisible by 2^8 (bug trap)
CHATELET_ERROR(ParityError);       // even d_j where odd is forced
CHATELET_ERROR(DomainError);       // argument outside a formula's validity range
CHATELET_ERROR(NoStabilization);   // 2-adic levels did not repeat below the cap
CHATELET_ERROR(ResourceError);     // computation above the configured cap
CHATELET_ERROR(OverflowError);     // value exceeds the configured integer width
CHATELET_ERROR(ConfigError);       // unparseable CLI/config input

#undef CHATELET_ERROR

} // namespace chatelet
