#pragma once

#include <stdexcept>
#include <string>

namespace lgvw {

// Base for every domain error raised by the library. `kind` is a stable tag
// used by reports and the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("ParseError", what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

#define LGVW_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

LGVW_DEFINE_ERROR(NotQuasiHomogeneous);
LGVW_DEFINE_ERROR(NonUniqueWeights);
LGVW_DEFINE_ERROR(WeightOutOfRange);
LGVW_DEFINE_ERROR(NotInvertible);
LGVW_DEFINE_ERROR(UnclassifiableAtom);
LGVW_DEFINE_ERROR(NonIntegerMilnorNumber);
LGVW_DEFINE_ERROR(NotASymmetryGroup);
LGVW_DEFINE_ERROR(NotASubgroup);
LGVW_DEFINE_ERROR(NonIsolatedSingularity);
LGVW_DEFINE_ERROR(DegenerateResidue);
LGVW_DEFINE_ERROR(NotAdmissible);
LGVW_DEFINE_ERROR(DegenerateRestriction);
LGVW_DEFINE_ERROR(TruncationTooSmall);
LGVW_DEFINE_ERROR(TruncationOverflow);
LGVW_DEFINE_ERROR(HalfPowerResidue);
LGVW_DEFINE_ERROR(NotSymplectic);
LGVW_DEFINE_ERROR(NonNilpotentWindow);
LGVW_DEFINE_ERROR(MapNotWellDefined);
LGVW_DEFINE_ERROR(UncoveredPair);
LGVW_DEFINE_ERROR(PreconditionNotMet);
LGVW_DEFINE_ERROR(ConfigError);

#undef LGVW_DEFINE_ERROR

}  // namespace lgvw
