#include "domrecon/path_code.hpp"

#include "domrecon/errors.hpp"

namespace domrecon {

PathCode::PathCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw InputError("path code bits must be 0 or 1");
    }
}

PathCode PathCode::parse(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw InputError("path code '" + text + "' contains a character other than 0/1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return PathCode(std::move(bits));
}

std::optional<PathCode> PathCode::next() const {
    PathCode out = *this;
    // Binary increment: trailing ones become zeros, the last zero becomes one.
    for (std::size_t i = out.bits_.size(); i-- > 0;) {
        if (out.bits_[i] == 0) {
            out.bits_[i] = 1;
            return out;
        }
        out.bits_[i] = 0;
    }
    return std::nullopt;
}

std::optional<std::size_t> PathCode::first_difference(const PathCode& other) const {
    if (other.depth() != depth()) throw InputError("path codes of different depth");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != other.bits_[i]) return i;
    }
    return std::nullopt;
}

std::string PathCode::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
}

std::vector<PathCode> lex_path_codes(std::size_t depth) {
    if (depth >= 8 * sizeof(std::size_t) - 1) throw ResourceError("too many path codes to enumerate");
    std::vector<PathCode> out;
    out.reserve(std::size_t{1} << depth);
    std::optional<PathCode> code = PathCode(depth);
    while (code) {
        out.push_back(*code);
        code = code->next();
    }
    return out;
}

}  // namespace domrecon
