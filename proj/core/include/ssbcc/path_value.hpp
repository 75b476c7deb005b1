#ifndef ssbcc_path_value_hpp
#define ssbcc_path_value_hpp

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssbcc/graph.hpp"

namespace ssbcc {

using Symbol = std::uint32_t;

// the minimal symbol; leads every well-formed path
inline constexpr Symbol kBottom = 0;

/*
 * Root path as the sequence of edge indices taken from the root, preceded by
 * the bottom symbol. Corrupted values may hold bottom anywhere; every
 * operation here stays total on them.
 */
class PathValue {
public:
    PathValue() = default;
    PathValue(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
    explicit PathValue(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    // <bottom>
    static PathValue root() { return PathValue{kBottom}; }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const { return symbols_; }

    bool is_prefix_of(const PathValue& other) const;
    bool is_proper_prefix_of(const PathValue& other) const {
        return size() < other.size() && is_prefix_of(other);
    }

    // this ⊕ port, without truncation
    PathValue extended(Port port) const;

    // "⊥.1.2"; bottom at other positions prints the same
    std::string to_string() const;
    // Accepts "⊥" or "0" for bottom, '.' separated.
    static PathValue parse(std::string_view text);

    friend bool operator==(const PathValue&, const PathValue&) = default;

private:
    std::vector<Symbol> symbols_;
};

// Lexicographic order with bottom minimal and a proper prefix preceding
// its extensions.
std::strong_ordering lex_compare(const PathValue& a, const PathValue& b);

inline bool lex_less(const PathValue& a, const PathValue& b) { return lex_compare(a, b) < 0; }

// (p ⊕ port) cut to its first `bound` symbols
PathValue concat_truncate(const PathValue& path, Port port, std::size_t bound);

}

#endif /* ssbcc_path_value_hpp */
