#pragma once

#include <stdexcept>
#include <string>

namespace srp {

struct InvalidFootprintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfeasibleActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoFeasibleActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JammedStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedVersionError : ParseError {
    using ParseError::ParseError;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace srp
