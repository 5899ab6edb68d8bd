#include "cbn/state.hpp"

#include "cbn/error.hpp"

namespace cbn {

State::State(std::size_t n, bool value)
    : size_(n), words_((n + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
    if (value && n % kWordBits != 0) {
        words_.back() &= (Word{1} << (n % kWordBits)) - 1;
    }
}

State State::from_string(std::string_view bits) {
    State s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            s.set(i, true);
        } else if (bits[i] != '0') {
            throw Error("state string may only contain '0' and '1': \"" + std::string(bits) + "\"");
        }
    }
    return s;
}

State State::from_word(std::size_t n, Word word) {
    State s(n);
    if (n > 0) {
        s.words_[0] = n == kWordBits ? word : word & ((Word{1} << n) - 1);
    }
    return s;
}

std::size_t State::count() const {
    std::size_t total = 0;
    for (Word w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::string State::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) {
            out[i] = '1';
        }
    }
    return out;
}

std::strong_ordering operator<=>(const State& a, const State& b) {
    if (a.size_ != b.size_) {
        return a.size_ <=> b.size_;
    }
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        const State::Word diff = a.words_[w] ^ b.words_[w];
        if (diff != 0) {
            // Lowest differing vertex decides; a 0 there sorts first.
            const bool a_bit = (a.words_[w] >> std::countr_zero(diff)) & 1U;
            return a_bit ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return std::strong_ordering::equal;
}

State flipped(State x, std::size_t i) {
    x.flip(i);
    return x;
}

} // namespace cbn
