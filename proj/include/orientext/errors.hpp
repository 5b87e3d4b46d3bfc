#pragma once

#include <stdexcept>
#include <string>

namespace orientext {

// Exit-code categories used by the CLI: invalid input -> 2,
// degenerate geometry -> 3, I/O failure -> 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateNormal : GeometryError {
    using GeometryError::GeometryError;
};

struct DegenerateQuad : GeometryError {
    using GeometryError::GeometryError;
};

struct PointAtInfinity : GeometryError {
    using GeometryError::GeometryError;
};

struct IncoherentNormals : GeometryError {
    using GeometryError::GeometryError;
};

struct InvalidImage : InputError {
    using InputError::InputError;
};

struct EmptyRoi : InputError {
    using InputError::InputError;
};

struct BadMagic : InputError {
    using InputError::InputError;
};

struct TruncatedFile : InputError {
    using InputError::InputError;
};

struct UnsupportedCharacter : InputError {
    using InputError::InputError;
};

struct RoiTooSmall : InputError {
    using InputError::InputError;
};

struct DimensionMismatch : InputError {
    using InputError::InputError;
};

struct MalformedRecord : InputError {
    using InputError::InputError;
};

struct SingularAffine : InputError {
    using InputError::InputError;
};

}  // namespace orientext
