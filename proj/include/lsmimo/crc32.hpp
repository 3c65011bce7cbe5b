#ifndef LSMIMO_CRC32_HPP
#define LSMIMO_CRC32_HPP

#include <cstdint>

#include "lsmimo/types.hpp"

namespace lsmimo {

/// CRC-32 (polynomial 0x04C11DB7, reflected input/output, init 0xFFFFFFFF,
/// final XOR 0xFFFFFFFF) over a bit sequence. Byte data fed LSB-first per
/// byte matches the common byte-wise implementation, e.g. "123456789"
/// gives 0xCBF43926.
class Crc32 {
public:
    void add_bit(unsigned bit) {
        reg_ ^= bit & 1u;
        const uint32_t lsb = reg_ & 1u;
        reg_ >>= 1;
        if (lsb)
            reg_ ^= 0xEDB88320u;  // 0x04C11DB7 reflected
    }

    void add_bits(const BitVec& bits) {
        for (uint8_t b : bits)
            add_bit(b);
    }

    void add_u32(uint32_t v) {
        for (int i = 0; i < 32; ++i)
            add_bit((v >> i) & 1u);
    }

    uint32_t value() const { return reg_ ^ 0xFFFFFFFFu; }

private:
    uint32_t reg_ = 0xFFFFFFFFu;
};

inline uint32_t crc32_bits(const BitVec& bits) {
    Crc32 c;
    c.add_bits(bits);
    return c.value();
}

}  // namespace lsmimo

#endif
