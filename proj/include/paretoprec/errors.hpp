#pragma once

#include <stdexcept>
#include <string>

namespace paretoprec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- dense kernels ----
struct DimensionMismatch : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };

// ---- domain ----
struct InvalidInput : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct InfeasibleWeights : Error { using Error::Error; };
struct InstabilityGuard : Error { using Error::Error; };
struct ZeroSignal : Error { using Error::Error; };
struct NoSlackRow : Error { using Error::Error; };
struct ZeroPrecoder : Error { using Error::Error; };
struct ZeroColumn : Error { using Error::Error; };
struct ZeroReferenceSinr : Error { using Error::Error; };

}  // namespace paretoprec
