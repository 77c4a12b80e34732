#pragma once

#include <stdexcept>
#include <string>

namespace mapcut {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// netpbm parsing
struct NetpbmError : Error { using Error::Error; };
struct UnsupportedFormat : NetpbmError { using NetpbmError::NetpbmError; };
struct MalformedHeader : NetpbmError { using NetpbmError::NetpbmError; };
struct TruncatedData : NetpbmError { using NetpbmError::NetpbmError; };
struct MaxvalOutOfRange : NetpbmError { using NetpbmError::NetpbmError; };
struct SampleOutOfRange : NetpbmError { using NetpbmError::NetpbmError; };

struct DimensionMismatch : Error { using Error::Error; };
struct EpsilonDegenerate : Error { using Error::Error; };
struct AlphaNonPositive : Error { using Error::Error; };
struct EmptySampleList : Error { using Error::Error; };
struct NonPrefixMask : Error { using Error::Error; };
struct AlphaScheduleDecreasing : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };
struct BetaOutOfRange : Error { using Error::Error; };
struct RatioNotAboveOne : Error { using Error::Error; };
struct DegenerateSample : Error { using Error::Error; };
struct InteriorEmpty : Error { using Error::Error; };

} // namespace mapcut
