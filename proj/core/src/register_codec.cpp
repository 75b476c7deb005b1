#include "ssbcc/register_codec.hpp"

#include <stdexcept>

namespace ssbcc {

namespace {

std::size_t ceil_log2(std::uint64_t value) {
    std::size_t bits = 0;
    while ((std::uint64_t{1} << bits) < value) {
        ++bits;
    }
    return bits;
}

class BitWriter {
public:
    void put(std::uint64_t value, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            if (bits_ % 8 == 0) {
                bytes_.push_back(0);
            }
            if ((value >> i) & 1U) {
                bytes_.back() |= static_cast<std::uint8_t>(1U << (bits_ % 8));
            }
            ++bits_;
        }
    }

    EncodedRegister finish() { return {std::move(bytes_), bits_}; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t get(std::size_t width) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < width; ++i) {
            if (pos_ / 8 >= bytes_.size()) {
                throw std::out_of_range("truncated register encoding");
            }
            if ((bytes_[pos_ / 8] >> (pos_ % 8)) & 1U) {
                value |= std::uint64_t{1} << i;
            }
            ++pos_;
        }
        return value;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void check_path(const PathValue& path, const Bounds& bounds) {
    if (path.size() > bounds.path_bound) {
        throw std::out_of_range("path longer than N");
    }
    for (Symbol s : path.symbols()) {
        if (s > bounds.max_symbol) {
            throw std::out_of_range("path symbol above the maximal edge index");
        }
    }
}

std::size_t path_slots(const PathValue& path, const Bounds& bounds) {
    return path.size() < bounds.path_bound ? path.size() + 1 : path.size();
}

void put_path(BitWriter& out, const PathValue& path, const Bounds& bounds) {
    const std::size_t width = symbol_bits(bounds);
    for (Symbol s : path.symbols()) {
        out.put(s, width);
    }
    if (path.size() < bounds.path_bound) {
        out.put(bounds.max_symbol + 1, width);
    }
}

PathValue get_path(BitReader& in, const Bounds& bounds) {
    const std::size_t width = symbol_bits(bounds);
    std::vector<Symbol> symbols;
    while (symbols.size() < bounds.path_bound) {
        auto code = in.get(width);
        if (code == bounds.max_symbol + 1) {
            break;
        }
        if (code > bounds.max_symbol) {
            throw std::out_of_range("invalid path symbol code");
        }
        symbols.push_back(static_cast<Symbol>(code));
    }
    return PathValue(std::move(symbols));
}

}

std::size_t symbol_bits(const Bounds& bounds) { return ceil_log2(std::uint64_t{bounds.max_symbol} + 2); }

std::size_t count_bits(const Bounds& bounds) {
    return ceil_log2(2 * static_cast<std::uint64_t>(bounds.count_bound) + 1);
}

std::size_t register_bit_budget(const Bounds& bounds) {
    return 2 * bounds.path_bound * symbol_bits(bounds) + count_bits(bounds);
}

std::size_t encoded_bits(const Register& reg, const Bounds& bounds) {
    check_path(reg.path, bounds);
    check_path(reg.bcc, bounds);
    if (reg.count < -bounds.count_bound || reg.count > bounds.count_bound) {
        throw std::out_of_range("count outside [-B, B]");
    }
    return (path_slots(reg.path, bounds) + path_slots(reg.bcc, bounds)) * symbol_bits(bounds) + count_bits(bounds);
}

EncodedRegister encode_register(const Register& reg, const Bounds& bounds) {
    encoded_bits(reg, bounds);
    BitWriter out;
    put_path(out, reg.path, bounds);
    out.put(static_cast<std::uint64_t>(reg.count + bounds.count_bound), count_bits(bounds));
    put_path(out, reg.bcc, bounds);
    return out.finish();
}

Register decode_register(std::span<const std::uint8_t> bytes, const Bounds& bounds) {
    BitReader in(bytes);
    Register reg;
    reg.path = get_path(in, bounds);
    reg.count = static_cast<std::int64_t>(in.get(count_bits(bounds))) - bounds.count_bound;
    reg.bcc = get_path(in, bounds);
    return reg;
}

}
