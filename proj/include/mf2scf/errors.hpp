#pragma once

#include <stdexcept>
#include <string>

namespace mf2scf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MF2SCF_DECLARE_ERROR(Name)                      \
    class Name : public Error {                         \
    public:                                             \
        explicit Name(const std::string& what)          \
            : Error(std::string(#Name ": ") + what) {}  \
    }

MF2SCF_DECLARE_ERROR(ImageTooSmall);
MF2SCF_DECLARE_ERROR(DimensionMismatch);
MF2SCF_DECLARE_ERROR(ImageReadError);
MF2SCF_DECLARE_ERROR(EigenNonConvergence);
MF2SCF_DECLARE_ERROR(LayoutMismatch);
MF2SCF_DECLARE_ERROR(LengthMismatch);
MF2SCF_DECLARE_ERROR(ClassTooSmall);
MF2SCF_DECLARE_ERROR(DegenerateCovariance);
MF2SCF_DECLARE_ERROR(SingularScatter);
MF2SCF_DECLARE_ERROR(InvalidArgument);
MF2SCF_DECLARE_ERROR(FormatError);

#undef MF2SCF_DECLARE_ERROR

}  // namespace mf2scf
