#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File cannot be read or written.
struct IoError : Error {
    using Error::Error;
};

/// Input file is not a supported binary PGM (bad magic, bad header, maxval != 255).
struct FormatError : Error {
    using Error::Error;
};

/// Dimension or length mismatch between related objects.
struct SizeError : Error {
    using Error::Error;
};

/// Codec parameter outside its legal range.
struct ParamError : Error {
    using Error::Error;
};

/// Payload does not fit into the reserved room.
struct CapacityError : Error {
    CapacityError(std::string msg, std::uint64_t room, std::uint64_t payload)
        : Error(std::move(msg)), room_bits(room), payload_bits(payload) {}
    std::uint64_t room_bits;
    std::uint64_t payload_bits;
};

/// Container bits do not parse back to a valid image (tampering or wrong key).
struct CorruptionError : Error {
    using Error::Error;
};

/// The compressed planes plus overheads exceed the original image size.
struct IncompressibleError : Error {
    using Error::Error;
};

}  // namespace rdh
