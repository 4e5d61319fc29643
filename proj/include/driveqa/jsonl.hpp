#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "driveqa/errors.hpp"
#include "driveqa/json.hpp"

namespace driveqa {

/// Writes one JSON object per line, UTF-8, stable field order.
template <typename T>
void write_jsonl(const std::string& path, const std::vector<T>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const T& r : records) {
        const njson j = r;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

/// Reads a JSONL file back. Malformed lines abort with their line number.
template <typename T>
std::vector<T> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<T> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(njson::parse(line).get<T>());
        } catch (const std::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) + ": malformed record: " +
                          e.what());
        }
    }
    return records;
}

}  // namespace driveqa
