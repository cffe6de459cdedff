#pragma once

/// @file text_io.hpp
/// @brief Whitespace-token reading and shortest round-trip number formatting for instance files.

#include <charconv>
#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace pga::io {

/// Shortest decimal text that parses back to exactly `v`.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("cannot format number");
    }
    return std::string(buf, res.ptr);
}

/// Token stream over an instance file; '#' starts a comment running to end of line.
class TokenReader {
  public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    [[nodiscard]] std::string next(std::string_view what) {
        std::string tok;
        while (true) {
            if (!(in_ >> tok)) {
                throw std::runtime_error("unexpected end of file while reading " + std::string(what));
            }
            if (tok.front() != '#') {
                return tok;
            }
            std::string rest;
            std::getline(in_, rest);
        }
    }

    void expect(std::string_view keyword) {
        const auto tok = next(keyword);
        if (tok != keyword) {
            throw std::runtime_error("expected '" + std::string(keyword) + "' but found '" + tok + "'");
        }
    }

    template <typename T>
    [[nodiscard]] T number(std::string_view what) {
        const auto tok = next(what);
        T value{};
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw std::runtime_error("malformed " + std::string(what) + ": '" + tok + "'");
        }
        return value;
    }

  private:
    std::istream& in_;
};

} // namespace pga::io
