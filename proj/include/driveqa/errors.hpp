#pragma once

#include <stdexcept>
#include <string>

namespace driveqa {

/// Thrown when a text blob contains no recognizable caption line at all.
struct EmptyCaptionError : std::runtime_error {
    explicit EmptyCaptionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a teacher reply does not contain enough valid Q/A pairs.
struct MalformedReplyError : std::runtime_error {
    explicit MalformedReplyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a grader reply carries no extractable score.
struct MalformedGradeError : std::runtime_error {
    explicit MalformedGradeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// HTTP / network level failure talking to a remote endpoint.
struct TransportError : std::runtime_error {
    explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File I/O failure; message always carries the offending path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace driveqa
