#pragma once

#include <stdexcept>
#include <string>

namespace drs {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DRS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

DRS_DEFINE_ERROR(InvalidArgument);
DRS_DEFINE_ERROR(DegenerateParam);
DRS_DEFINE_ERROR(PoleAtZero);
DRS_DEFINE_ERROR(StiffnessFailure);
DRS_DEFINE_ERROR(QuadratureNonConvergence);
DRS_DEFINE_ERROR(SeriesNonConvergence);
DRS_DEFINE_ERROR(CalibrationMismatch);
DRS_DEFINE_ERROR(ZeroDenominator);
DRS_DEFINE_ERROR(ZeroAtBasePoint);
DRS_DEFINE_ERROR(BracketingFailure);
DRS_DEFINE_ERROR(ConstructionFailure);
DRS_DEFINE_ERROR(SearchExhausted);
DRS_DEFINE_ERROR(EqualParameters);
DRS_DEFINE_ERROR(ConfigError);

#undef DRS_DEFINE_ERROR

}  // namespace drs
