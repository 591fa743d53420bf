#pragma once

#include <stdexcept>

namespace gperiod {

// Every library error derives from Error so callers can catch the whole
// family at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : Error { using Error::Error; };
struct NotAUnit : Error { using Error::Error; };
struct BadModulus : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NoSuchRoot : Error { using Error::Error; };
struct ViewportDegenerate : Error { using Error::Error; };
struct HypothesesNotVerified : Error { using Error::Error; };

}  // namespace gperiod
