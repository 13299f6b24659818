#pragma once

// Locale-independent number-to-text helpers for the CSV emitters. std::to_chars
// prints the shortest digit string that round-trips, which keeps output files
// byte-stable across platforms and locales.

#include <charconv>
#include <string>

namespace vcn {

inline void append_number(std::string& out, double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

inline void append_number(std::string& out, long long value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

}  // namespace vcn
