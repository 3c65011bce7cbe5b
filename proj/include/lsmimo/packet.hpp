#ifndef LSMIMO_PACKET_HPP
#define LSMIMO_PACKET_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "lsmimo/types.hpp"

namespace lsmimo {

/// NALU-surrogate packet. On the wire a packet is payload bits, then the
/// 32 CRC bits (LSB first), then pad_bits zeros appended by block alignment.
/// The CRC covers the 32-bit payload length field plus the payload, never
/// the padding.
struct Packet {
    int user_id = 0;
    long seq_no = 0;
    BitVec payload;
    long payload_len_bits = 0;
    uint32_t crc = 0;
    long pad_bits = 0;

    long wire_bits() const { return payload_len_bits + 32 + pad_bits; }
};

inline constexpr int kCrcBits = 32;

/// Split a stream into packets of at most max_payload_bits, seq_no counting
/// from 0. An empty stream yields no packets.
std::vector<Packet> segment(const BitVec& stream, long max_payload_bits, int user_id = 0);

/// Compute and store the packet CRC (length field + payload).
Packet crc_attach(Packet p);

uint32_t packet_crc(long payload_len_bits, const BitVec& payload);

/// One packet per user, zero-padded to a common wire length.
struct TransmissionBlock {
    std::vector<Packet> packets;
    long wire_bits_per_user = 0;

    /// payload + CRC bits (LSB first) + pad zeros for one user.
    BitVec wire_bits(int user) const;
};

/// Pad every packet with zeros up to the longest payload+CRC in the block.
TransmissionBlock align_block(std::vector<Packet> packets, int nt);

struct RecoveryReport {
    struct PacketStatus {
        int user_id = 0;
        long seq_no = 0;
        long payload_len_bits = 0;
        long pad_bits = 0;
        bool crc_pass = false;
        long residual_bit_errors = 0;  // inside passing packets
    };
    std::vector<PacketStatus> packets;
    long nb_ppr = 0;    // erroneous bits after packet recovery
    long nb_total = 0;  // information bits transmitted
    std::vector<std::pair<int, long>> loss_map;  // (user_id, seq_no) of drops
};

/// Per-user streams rebuilt from packets that passed their CRC, in seq order.
struct RecoveredStreams {
    std::vector<BitVec> per_user;
};

/// Check one received block against the transmitted one: strip padding,
/// verify CRCs, drop failures into the loss map, and account bit errors.
/// A dropped packet contributes all of its payload bits to nb_ppr.
void recover_block(const TransmissionBlock& sent, const std::vector<BitVec>& received,
                   RecoveryReport& report, RecoveredStreams* streams);

RecoveryReport recover(const std::vector<TransmissionBlock>& sent,
                       const std::vector<std::vector<BitVec>>& received,
                       RecoveredStreams* streams = nullptr);

/// nb_ppr / nb_total per the post-packet-recovery error-rate definition.
double ber_ppr(const RecoveryReport& report);

/// CSV trace, one record per packet: user_id, seq_no, payload_len_bits,
/// pad_bits, crc_pass.
void write_packet_trace(const RecoveryReport& report, std::ostream& os);

}  // namespace lsmimo

#endif
