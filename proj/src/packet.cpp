#include "lsmimo/packet.hpp"

#include <algorithm>
#include <ostream>

#include "lsmimo/crc32.hpp"
#include "lsmimo/errors.hpp"

namespace lsmimo {

std::vector<Packet> segment(const BitVec& stream, long max_payload_bits, int user_id) {
    if (max_payload_bits <= 0)
        throw ParameterError("segment: max_payload_bits must be positive");
    std::vector<Packet> packets;
    long seq = 0;
    for (size_t off = 0; off < stream.size(); off += static_cast<size_t>(max_payload_bits)) {
        const size_t len = std::min(static_cast<size_t>(max_payload_bits), stream.size() - off);
        Packet p;
        p.user_id = user_id;
        p.seq_no = seq++;
        p.payload.assign(stream.begin() + off, stream.begin() + off + len);
        p.payload_len_bits = static_cast<long>(len);
        packets.push_back(std::move(p));
    }
    return packets;
}

uint32_t packet_crc(long payload_len_bits, const BitVec& payload) {
    Crc32 c;
    c.add_u32(static_cast<uint32_t>(payload_len_bits));
    c.add_bits(payload);
    return c.value();
}

Packet crc_attach(Packet p) {
    p.payload_len_bits = static_cast<long>(p.payload.size());
    p.crc = packet_crc(p.payload_len_bits, p.payload);
    return p;
}

BitVec TransmissionBlock::wire_bits(int user) const {
    const Packet& p = packets.at(user);
    BitVec w;
    w.reserve(static_cast<size_t>(p.wire_bits()));
    w.insert(w.end(), p.payload.begin(), p.payload.end());
    for (int i = 0; i < kCrcBits; ++i)
        w.push_back((p.crc >> i) & 1u);
    w.insert(w.end(), static_cast<size_t>(p.pad_bits), 0);
    return w;
}

TransmissionBlock align_block(std::vector<Packet> packets, int nt) {
    if (static_cast<int>(packets.size()) != nt)
        throw FramingError("align_block: expected exactly one packet per user");
    long max_len = 0;
    for (const Packet& p : packets)
        max_len = std::max(max_len, p.payload_len_bits + kCrcBits);
    TransmissionBlock block;
    for (Packet& p : packets)
        p.pad_bits = max_len - (p.payload_len_bits + kCrcBits);
    block.packets = std::move(packets);
    block.wire_bits_per_user = max_len;
    return block;
}

void recover_block(const TransmissionBlock& sent, const std::vector<BitVec>& received,
                   RecoveryReport& report, RecoveredStreams* streams) {
    if (received.size() != sent.packets.size())
        throw FramingError("recover_block: user count mismatch");
    if (streams && streams->per_user.size() < sent.packets.size())
        streams->per_user.resize(sent.packets.size());

    for (size_t u = 0; u < sent.packets.size(); ++u) {
        const Packet& tx = sent.packets[u];
        const BitVec& rx = received[u];
        if (static_cast<long>(rx.size()) != tx.wire_bits())
            throw FramingError("recover_block: received wire length mismatch");

        // Pad bits are stripped first; the CRC never covers them.
        const size_t len = static_cast<size_t>(tx.payload_len_bits);
        uint32_t rx_crc = 0;
        for (int i = 0; i < kCrcBits; ++i)
            rx_crc |= static_cast<uint32_t>(rx[len + i] & 1u) << i;
        const uint32_t computed =
            [&] {
                Crc32 c;
                c.add_u32(static_cast<uint32_t>(tx.payload_len_bits));
                for (size_t i = 0; i < len; ++i)
                    c.add_bit(rx[i]);
                return c.value();
            }();
        const bool pass = computed == rx_crc;

        RecoveryReport::PacketStatus st;
        st.user_id = tx.user_id;
        st.seq_no = tx.seq_no;
        st.payload_len_bits = tx.payload_len_bits;
        st.pad_bits = tx.pad_bits;
        st.crc_pass = pass;

        report.nb_total += tx.payload_len_bits;
        if (pass) {
            long errs = 0;
            for (size_t i = 0; i < len; ++i)
                errs += (rx[i] ^ tx.payload[i]) & 1;
            st.residual_bit_errors = errs;
            report.nb_ppr += errs;
            if (streams) {
                BitVec& s = streams->per_user[u];
                s.insert(s.end(), rx.begin(), rx.begin() + static_cast<long>(len));
            }
        } else {
            report.nb_ppr += tx.payload_len_bits;
            report.loss_map.emplace_back(tx.user_id, tx.seq_no);
        }
        report.packets.push_back(st);
    }
}

RecoveryReport recover(const std::vector<TransmissionBlock>& sent,
                       const std::vector<std::vector<BitVec>>& received,
                       RecoveredStreams* streams) {
    if (received.size() != sent.size())
        throw FramingError("recover: block count mismatch");
    RecoveryReport report;
    for (size_t b = 0; b < sent.size(); ++b)
        recover_block(sent[b], received[b], report, streams);
    return report;
}

double ber_ppr(const RecoveryReport& report) {
    if (report.nb_total <= 0)
        throw ParameterError("ber_ppr: no transmitted bits, rate undefined");
    return static_cast<double>(report.nb_ppr) / static_cast<double>(report.nb_total);
}

void write_packet_trace(const RecoveryReport& report, std::ostream& os) {
    os << "user_id,seq_no,payload_len_bits,pad_bits,crc_pass\n";
    for (const auto& p : report.packets)
        os << p.user_id << ',' << p.seq_no << ',' << p.payload_len_bits << ',' << p.pad_bits
           << ',' << (p.crc_pass ? 1 : 0) << '\n';
}

}  // namespace lsmimo
