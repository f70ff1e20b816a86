#pragma once

#include <stdexcept>
#include <string>

namespace catsem {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// grammar
struct NotGrammatical : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct InvalidDiagram : Error { using Error::Error; };

// tensors
struct ShapeError : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct DuplicateAxis : Error { using Error::Error; };
struct AxisOutOfRange : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };
struct RankError : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };

// binding / unbinding
struct SingularRoles : Error { using Error::Error; };
struct SlotOutOfRange : Error { using Error::Error; };

// lexicon / input
struct ParseError : Error { using Error::Error; };
struct UnknownWord : Error { using Error::Error; };
struct UnknownBaseType : Error { using Error::Error; };

// alias used by the expression factoring interface
using ShapeMismatch = ShapeError;

}  // namespace catsem
