#pragma once

#include <stdexcept>
#include <string>

namespace nilgeo {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// input / validation
struct ParseError : Error { using Error::Error; };
struct NotAntisymmetric : Error { using Error::Error; };
struct NotTwoStep : Error { using Error::Error; };
struct DegenerateMetric : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// decomposition / adapted-basis
struct NonadaptedExact : Error { using Error::Error; };
struct NotCentralArgument : Error { using Error::Error; };
struct DegenerateCenter : Error { using Error::Error; };

// curvature
struct DependentVectors : Error { using Error::Error; };

// geodesics
struct ClosedFormUnavailable : Error { using Error::Error; };
struct NotDiagonalizable : Error { using Error::Error; };
struct OverflowDetected : Error { using Error::Error; };

// lattices / periods
struct ObstructedTranslation : Error { using Error::Error; };
struct InconsistentSolve : Error { using Error::Error; };
struct NotFlatCase : Error { using Error::Error; };
struct NullDistinguished : Error { using Error::Error; };

// construction seeds
struct SeedInvalid : Error { using Error::Error; };

} // namespace nilgeo
