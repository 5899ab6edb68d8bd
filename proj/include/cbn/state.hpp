#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace cbn {

// Packed binary network configuration; bit i is the value of vertex i.
// Networks of up to 64 vertices need no heap allocation.
class State {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    State() = default;
    explicit State(std::size_t n, bool value = false);

    // Characters '0'/'1', vertex 0 first. Throws Error on other characters.
    static State from_string(std::string_view bits);
    // Low `n` bits of `word`; n <= 64.
    static State from_word(std::size_t n, Word word);

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value) {
        const Word mask = Word{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    std::size_t count() const;
    bool all() const { return count() == size_; }
    bool none() const { return count() == 0; }

    // First word; the whole state when size() <= 64.
    Word word() const { return words_.empty() ? 0 : words_[0]; }
    std::size_t word_count() const { return words_.size(); }
    Word word_at(std::size_t w) const { return words_[w]; }

    std::string to_string() const;

    friend bool operator==(const State&, const State&) = default;
    // Lexicographic on the bit string, vertex 0 most significant.
    friend std::strong_ordering operator<=>(const State& a, const State& b);

private:
    std::size_t size_ = 0;
    boost::container::small_vector<Word, 1> words_;
};

State flipped(State x, std::size_t i);

} // namespace cbn

template <>
struct std::hash<cbn::State> {
    std::size_t operator()(const cbn::State& s) const noexcept {
        std::size_t h = s.size();
        for (std::size_t w = 0; w < s.word_count(); ++w) {
            h ^= std::hash<std::uint64_t>{}(s.word_at(w)) + 0x9e3779b97f4a7c15ULL + (h << 6) +
                 (h >> 2);
        }
        return h;
    }
};
