#ifndef LSMIMO_RSC_HPP
#define LSMIMO_RSC_HPP

#include <array>

#include "lsmimo/types.hpp"

namespace lsmimo {

enum class CodecMode { Feedforward, RecursiveSystematic };

/// Rate-1/3 constraint-length-7 convolutional code with octal generators
/// (133, 165, 171), 64 states, terminated by a 6-step tail flush back to
/// state zero. Feedforward taps by default; the recursive-systematic variant
/// feeds 133 back and emits the systematic bit plus the 165/171 parities.
class TrellisCode {
public:
    static constexpr int kConstraintLength = 7;
    static constexpr int kStates = 1 << (kConstraintLength - 1);
    static constexpr int kOutputsPerInput = 3;
    static constexpr int kTailBits = kConstraintLength - 1;

    explicit TrellisCode(CodecMode mode = CodecMode::Feedforward);

    CodecMode mode() const { return mode_; }
    std::array<unsigned, 3> generators_octal() const { return {0133, 0165, 0171}; }

    int next_state(int state, int input) const { return next_[state][input]; }
    unsigned output_bits(int state, int input) const { return out_[state][input]; }

    /// Tail input that drives the register one step toward zero.
    int tail_input(int state) const;

private:
    CodecMode mode_;
    int next_[kStates][2];
    unsigned out_[kStates][2];  // 3 bits, generator order (133, 165, 171)
    int feedback_[kStates];
};

/// Encode from the all-zero state and append the 6 tail bits; output is
/// 3*(message length + 6) bits.
BitVec conv_encode(const BitVec& message, const TrellisCode& code);

/// Per-coded-bit decoder input. Positive LLR means bit 0 is more likely;
/// hard bits map to +/-1 so the same correlation metric reproduces
/// Hamming-distance decisions.
struct DecoderInput {
    std::vector<double> llr;

    static DecoderInput from_llrs(std::vector<double> llrs);
    static DecoderInput from_hard_bits(const BitVec& bits);
};

/// Full-block Viterbi over the tail-flushed trellis: start and end at state
/// zero, maximize the correlation metric, return the message with the tail
/// stripped. Metric ties go to the lower predecessor state index.
BitVec viterbi_decode(const DecoderInput& input, const TrellisCode& code);

}  // namespace lsmimo

#endif
