#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace domrecon {

/// Edge labels along a root-to-leaf path of a separator tree: bit i is the
/// label of the edge from depth i to depth i+1. Ordered lexicographically.
class PathCode {
public:
    PathCode() = default;
    explicit PathCode(std::size_t depth, std::uint8_t fill = 0) : bits_(depth, fill) {}
    explicit PathCode(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1'; throws InputError otherwise.
    static PathCode parse(const std::string& text);

    std::size_t depth() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_.at(i); }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    /// Lexicographic successor of the same length, if any.
    std::optional<PathCode> next() const;
    /// Index of the first differing bit; nullopt if equal. Lengths must match.
    std::optional<std::size_t> first_difference(const PathCode& other) const;

    std::string to_string() const;

    friend auto operator<=>(const PathCode&, const PathCode&) = default;
    friend bool operator==(const PathCode&, const PathCode&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// All 2^depth codes in lexicographic order.
std::vector<PathCode> lex_path_codes(std::size_t depth);

}  // namespace domrecon
