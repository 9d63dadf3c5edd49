#pragma once

#include <stdexcept>
#include <string>

namespace sigret {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SIGRET_DEFINE_ERROR(NAME)                                             \
    struct NAME : Error {                                                      \
        using Error::Error;                                                    \
    };

// image_io
SIGRET_DEFINE_ERROR(FileNotFound)
SIGRET_DEFINE_ERROR(UnsupportedFormat)
SIGRET_DEFINE_ERROR(CorruptImage)

// dwt
SIGRET_DEFINE_ERROR(DimensionNotDivisible)
SIGRET_DEFINE_ERROR(UnknownWavelet)
SIGRET_DEFINE_ERROR(MalformedPyramid)

// curvelet
SIGRET_DEFINE_ERROR(BadDimensions)
SIGRET_DEFINE_ERROR(BadConfig)
SIGRET_DEFINE_ERROR(MalformedCoeffs)

// features
SIGRET_DEFINE_ERROR(EmptySubband)

// retrieval
SIGRET_DEFINE_ERROR(DimensionMismatch)
SIGRET_DEFINE_ERROR(LayoutMismatch)
SIGRET_DEFINE_ERROR(EmptyDatabase)

// store
SIGRET_DEFINE_ERROR(IoError)
SIGRET_DEFINE_ERROR(VersionMismatch)
SIGRET_DEFINE_ERROR(ParseError)

// eval
SIGRET_DEFINE_ERROR(EmptyRanking)
SIGRET_DEFINE_ERROR(InsufficientData)
SIGRET_DEFINE_ERROR(CutMismatch)

// synth
SIGRET_DEFINE_ERROR(BadSpec)

#undef SIGRET_DEFINE_ERROR

} // namespace sigret
