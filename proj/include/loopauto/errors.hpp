#pragma once

#include <stdexcept>
#include <string>

namespace loopauto {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

struct NotAMonoid : Error {
    using Error::Error;
};

struct NotAGroup : Error {
    using Error::Error;
};

struct NotRightCancellative : Error {
    using Error::Error;
};

struct EmptyWordInSemigroupMode : Error {
    using Error::Error;
};

struct OracleLacksDivision : Error {
    using Error::Error;
};

struct NotEnoughElements : Error {
    using Error::Error;
};

struct NotALoopProblem : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct SizeLimitExceeded : Error {
    using Error::Error;
};

struct NoIdentityWord : Error {
    using Error::Error;
};

struct BallTooSmall : Error {
    using Error::Error;
};

struct Unsupported : Error {
    using Error::Error;
};

}  // namespace loopauto
