#include "lsmimo/rsc.hpp"

#include <limits>

#include "lsmimo/errors.hpp"

namespace lsmimo {

namespace {

inline unsigned parity(unsigned v) {
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return v & 1u;
}

// 7-bit tap masks; bit 6 is the current input, bits 5..0 the register.
constexpr unsigned kG0 = 0133;
constexpr unsigned kG1 = 0165;
constexpr unsigned kG2 = 0171;

}  // namespace

TrellisCode::TrellisCode(CodecMode mode) : mode_(mode) {
    for (int s = 0; s < kStates; ++s) {
        const unsigned fb = parity(static_cast<unsigned>(s) & (kG0 & 0x3Fu));
        feedback_[s] = static_cast<int>(fb);
        for (int u = 0; u < 2; ++u) {
            unsigned out;
            unsigned full;
            if (mode_ == CodecMode::Feedforward) {
                full = (static_cast<unsigned>(u) << 6) | static_cast<unsigned>(s);
                out = (parity(full & kG0) << 2) | (parity(full & kG1) << 1) | parity(full & kG2);
            } else {
                const unsigned a = static_cast<unsigned>(u) ^ fb;
                full = (a << 6) | static_cast<unsigned>(s);
                out = (static_cast<unsigned>(u) << 2) | (parity(full & kG1) << 1) |
                      parity(full & kG2);
            }
            next_[s][u] = static_cast<int>(full >> 1);
            out_[s][u] = out;
        }
    }
}

int TrellisCode::tail_input(int state) const {
    return mode_ == CodecMode::Feedforward ? 0 : feedback_[state];
}

BitVec conv_encode(const BitVec& message, const TrellisCode& code) {
    if (message.empty())
        throw ParameterError("conv_encode: empty message");
    BitVec out;
    out.reserve(3 * (message.size() + TrellisCode::kTailBits));
    int state = 0;
    auto step = [&](int u) {
        const unsigned o = code.output_bits(state, u);
        out.push_back((o >> 2) & 1u);
        out.push_back((o >> 1) & 1u);
        out.push_back(o & 1u);
        state = code.next_state(state, u);
    };
    for (uint8_t bit : message)
        step(bit & 1);
    for (int t = 0; t < TrellisCode::kTailBits; ++t)
        step(code.tail_input(state));
    return out;
}

DecoderInput DecoderInput::from_llrs(std::vector<double> llrs) {
    return DecoderInput{std::move(llrs)};
}

DecoderInput DecoderInput::from_hard_bits(const BitVec& bits) {
    DecoderInput in;
    in.llr.resize(bits.size());
    for (size_t i = 0; i < bits.size(); ++i)
        in.llr[i] = (bits[i] & 1) ? -1.0 : 1.0;
    return in;
}

BitVec viterbi_decode(const DecoderInput& input, const TrellisCode& code) {
    if (input.llr.size() % TrellisCode::kOutputsPerInput != 0)
        throw FramingError("viterbi_decode: input length not divisible by 3");
    const size_t steps = input.llr.size() / TrellisCode::kOutputsPerInput;
    if (steps < static_cast<size_t>(TrellisCode::kConstraintLength))
        throw FramingError("viterbi_decode: input shorter than a tail-flushed codeword");

    constexpr int S = TrellisCode::kStates;
    constexpr double kNoPath = -std::numeric_limits<double>::infinity();

    std::vector<double> metric(S, kNoPath), next_metric(S);
    metric[0] = 0.0;
    // decision per (step, state): predecessor state in bits 7..1, input in bit 0
    std::vector<uint8_t> decision(steps * S);

    for (size_t t = 0; t < steps; ++t) {
        const double* l = &input.llr[t * 3];
        std::fill(next_metric.begin(), next_metric.end(), kNoPath);
        uint8_t* dec = &decision[t * S];
        for (int s = 0; s < S; ++s) {
            if (metric[s] == kNoPath)
                continue;
            for (int u = 0; u < 2; ++u) {
                const unsigned o = code.output_bits(s, u);
                double m = metric[s];
                m += ((o >> 2) & 1u) ? -l[0] : l[0];
                m += ((o >> 1) & 1u) ? -l[1] : l[1];
                m += (o & 1u) ? -l[2] : l[2];
                const int ns = code.next_state(s, u);
                if (m > next_metric[ns]) {  // strict: lower predecessor wins ties
                    next_metric[ns] = m;
                    dec[ns] = static_cast<uint8_t>((s << 1) | u);
                }
            }
        }
        metric.swap(next_metric);
    }

    // Traceback from state 0 (tail-flushed).
    BitVec inputs(steps);
    int state = 0;
    for (size_t t = steps; t-- > 0;) {
        const uint8_t d = decision[t * S + state];
        inputs[t] = d & 1u;
        state = d >> 1;
    }
    inputs.resize(steps - TrellisCode::kTailBits);
    return inputs;
}

}  // namespace lsmimo
