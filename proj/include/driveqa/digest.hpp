#pragma once

#include <cstdint>
#include <string>

namespace driveqa {

/// FNV-1a 64-bit over a byte string.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes);

/// Digest of a file's contents; throws IoError if unreadable.
std::string file_digest(const std::string& path);

}  // namespace driveqa
