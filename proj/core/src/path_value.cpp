#include "ssbcc/path_value.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ssbcc {

bool PathValue::is_prefix_of(const PathValue& other) const {
    return size() <= other.size() && std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

PathValue PathValue::extended(Port port) const {
    PathValue out = *this;
    out.symbols_.push_back(port);
    return out;
}

std::string PathValue::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i > 0) {
            out += '.';
        }
        out += symbols_[i] == kBottom ? std::string("⊥") : std::to_string(symbols_[i]);
    }
    return out;
}

PathValue PathValue::parse(std::string_view text) {
    std::vector<Symbol> symbols;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto dot = text.find('.', pos);
        if (dot == std::string_view::npos) {
            dot = text.size();
        }
        auto token = text.substr(pos, dot - pos);
        pos = dot + 1;
        if (token == "⊥" || token == "_") {
            symbols.push_back(kBottom);
            continue;
        }
        Symbol value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw std::invalid_argument("bad path symbol '" + std::string(token) + "'");
        }
        symbols.push_back(value);
    }
    return PathValue(std::move(symbols));
}

std::strong_ordering lex_compare(const PathValue& a, const PathValue& b) {
    auto lhs = a.symbols();
    auto rhs = b.symbols();
    std::size_t common = std::min(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (lhs[i] != rhs[i]) {
            return lhs[i] <=> rhs[i];
        }
    }
    return lhs.size() <=> rhs.size();
}

PathValue concat_truncate(const PathValue& path, Port port, std::size_t bound) {
    PathValue out = path.extended(port);
    if (out.size() <= bound) {
        return out;
    }
    auto symbols = out.symbols();
    return PathValue(std::vector<Symbol>(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(bound)));
}

}
