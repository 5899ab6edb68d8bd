#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cbn {

// Rotation class of a binary string of length 1..64, held as its
// lexicographically least rotation. Position 0 is the most significant bit of
// word(), so numeric order on words of equal length is lexicographic order.
class Necklace {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kMaxLength = 64;

    std::size_t length() const { return length_; }
    Word word() const { return word_; }
    bool at(std::size_t position) const { return (word_ >> (length_ - 1 - position)) & 1U; }
    std::string rep() const;

    friend bool operator==(const Necklace&, const Necklace&) = default;
    // (sigma, rep) order used for all listings.
    friend std::strong_ordering operator<=>(const Necklace& a, const Necklace& b);

private:
    friend Necklace canonicalize_word(Word, std::size_t);
    Necklace(Word word, std::size_t length) : word_(word), length_(length) {}

    Word word_ = 0;
    std::size_t length_ = 0;
};

// Throws Error on an empty string, a non-binary character, or length > 64.
Necklace canonicalize(std::string_view bits);
// `word` holds the string with position 0 in bit length-1.
Necklace canonicalize_word(Necklace::Word word, std::size_t length);

// Number of distinct rotations.
std::size_t order(const Necklace& s);
// Number of ones.
std::size_t sigma(const Necklace& s);

inline constexpr std::size_t kDefaultNecklaceCap = 24;

// All necklaces of length p sorted by (sigma, rep). Throws CapExceeded if
// p > cap and PreconditionError if p == 0.
std::vector<Necklace> enumerate_necklaces(std::size_t p, std::size_t cap = kDefaultNecklaceCap);

std::uint64_t totient(std::uint64_t k);
int mobius(std::uint64_t k);

// Necklaces of length p_star with order exactly p (= aperiodic necklaces of
// length p). Throws PreconditionError unless p divides p_star.
std::uint64_t count_orbits_of_period(std::size_t p_star, std::size_t p);
// Necklaces of length p_star with exactly d ones.
std::uint64_t count_fixed_density(std::size_t p_star, std::size_t d);

// s covers t: sigma(s) = sigma(t) + 1 and turning one 1 of s into 0 gives t.
bool covers(const Necklace& s, const Necklace& t);
// Positions of rep(s) holding 1 whose flip lands in class t. Requires
// covers(s, t).
std::size_t gamma_down(const Necklace& s, const Necklace& t);
// Positions of rep(s) holding 0 whose flip lands in class t. Requires
// covers(t, s).
std::size_t gamma_up(const Necklace& s, const Necklace& t);

} // namespace cbn
