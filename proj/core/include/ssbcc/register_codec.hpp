#ifndef ssbcc_register_codec_hpp
#define ssbcc_register_codec_hpp

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ssbcc/protocol.hpp"

namespace ssbcc {

// Bit-packed register layout. Paths use an alphabet of max_symbol + 2
// codes (bottom, the edge indices, and a terminator that is omitted when a
// path fills all N slots); the count is stored offset by B.
struct EncodedRegister {
    std::vector<std::uint8_t> bytes;
    std::size_t bits = 0;
};

std::size_t symbol_bits(const Bounds& bounds);
std::size_t count_bits(const Bounds& bounds);

// 2 * N * symbol_bits + count_bits
std::size_t register_bit_budget(const Bounds& bounds);

// Exact size encode_register would produce. Throws std::out_of_range when
// a field lies outside the type bounds.
std::size_t encoded_bits(const Register& reg, const Bounds& bounds);

EncodedRegister encode_register(const Register& reg, const Bounds& bounds);
Register decode_register(std::span<const std::uint8_t> bytes, const Bounds& bounds);

}

#endif /* ssbcc_register_codec_hpp */
