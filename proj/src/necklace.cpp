#include "cbn/necklace.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "cbn/error.hpp"

namespace cbn {

namespace {

using Word = Necklace::Word;

Word low_mask(std::size_t length) {
    return length == 64 ? ~Word{0} : (Word{1} << length) - 1;
}

Word rotate_left(Word word, std::size_t length, std::size_t r) {
    r %= length;
    if (r == 0) {
        return word;
    }
    return ((word << r) | (word >> (length - r))) & low_mask(length);
}

Word flip_position(const Necklace& s, std::size_t position) {
    return s.word() ^ (Word{1} << (s.length() - 1 - position));
}

void require_same_length(const Necklace& s, const Necklace& t) {
    if (s.length() != t.length()) {
        throw PreconditionError("necklaces " + s.rep() + " and " + t.rep() +
                                " have different lengths");
    }
}

// Positions of s holding `bit` whose flip gives a string in class t.
std::size_t count_flips_into(const Necklace& s, const Necklace& t, bool bit) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.length(); ++i) {
        if (s.at(i) == bit && canonicalize_word(flip_position(s, i), s.length()) == t) {
            ++count;
        }
    }
    return count;
}

// Exact binomial coefficient; fits for n <= 64.
unsigned __int128 binomial(std::size_t n, std::size_t k) {
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

void require_length(std::size_t length) {
    if (length == 0) {
        throw PreconditionError("necklace length must be positive");
    }
    if (length > Necklace::kMaxLength) {
        throw CapExceeded("necklace length " + std::to_string(length) + " exceeds 64");
    }
}

} // namespace

std::string Necklace::rep() const {
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if (at(i)) {
            out[i] = '1';
        }
    }
    return out;
}

std::strong_ordering operator<=>(const Necklace& a, const Necklace& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) {
        return c;
    }
    if (auto c = std::popcount(a.word_) <=> std::popcount(b.word_); c != 0) {
        return c;
    }
    return a.word_ <=> b.word_;
}

Necklace canonicalize_word(Word word, std::size_t length) {
    require_length(length);
    word &= low_mask(length);
    Word best = word;
    for (std::size_t r = 1; r < length; ++r) {
        best = std::min(best, rotate_left(word, length, r));
    }
    return Necklace(best, length);
}

Necklace canonicalize(std::string_view bits) {
    if (bits.empty()) {
        throw Error("cannot canonicalize an empty string");
    }
    require_length(bits.size());
    Word word = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error("necklace string may only contain '0' and '1': \"" + std::string(bits) +
                        "\"");
        }
        word = (word << 1) | static_cast<Word>(c == '1');
    }
    return canonicalize_word(word, bits.size());
}

std::size_t order(const Necklace& s) {
    for (std::size_t r = 1; r < s.length(); ++r) {
        if (s.length() % r == 0 && rotate_left(s.word(), s.length(), r) == s.word()) {
            return r;
        }
    }
    return s.length();
}

std::size_t sigma(const Necklace& s) {
    return static_cast<std::size_t>(std::popcount(s.word()));
}

std::vector<Necklace> enumerate_necklaces(std::size_t p, std::size_t cap) {
    require_length(p);
    if (p > cap) {
        throw CapExceeded("necklace length " + std::to_string(p) + " exceeds the cap " +
                          std::to_string(cap));
    }
    std::vector<Necklace> result;
    const Word limit = Word{1} << p;
    for (Word w = 0; w < limit; ++w) {
        // A string is a class representative iff no rotation is smaller.
        const Necklace s = canonicalize_word(w, p);
        if (s.word() == w) {
            result.push_back(s);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::uint64_t totient(std::uint64_t k) {
    if (k == 0) {
        throw PreconditionError("totient is defined for positive integers");
    }
    std::uint64_t result = k;
    for (std::uint64_t q = 2; q * q <= k; ++q) {
        if (k % q == 0) {
            while (k % q == 0) {
                k /= q;
            }
            result -= result / q;
        }
    }
    if (k > 1) {
        result -= result / k;
    }
    return result;
}

int mobius(std::uint64_t k) {
    if (k == 0) {
        throw PreconditionError("Moebius function is defined for positive integers");
    }
    int sign = 1;
    for (std::uint64_t q = 2; q * q <= k; ++q) {
        if (k % q == 0) {
            k /= q;
            if (k % q == 0) {
                return 0;
            }
            sign = -sign;
        }
    }
    return k > 1 ? -sign : sign;
}

std::uint64_t count_orbits_of_period(std::size_t p_star, std::size_t p) {
    if (p == 0 || p_star % p != 0) {
        throw PreconditionError(std::to_string(p) + " does not divide " + std::to_string(p_star));
    }
    require_length(p_star);
    __int128 sum = 0;
    for (std::size_t d = 1; d <= p; ++d) {
        if (p % d == 0) {
            sum += mobius(d) * (static_cast<__int128>(1) << (p / d));
        }
    }
    return static_cast<std::uint64_t>(sum / static_cast<__int128>(p));
}

std::uint64_t count_fixed_density(std::size_t p_star, std::size_t d) {
    require_length(p_star);
    if (d > p_star) {
        return 0;
    }
    // gcd(p*, 0) = p*, matching the convention for d = 0 and d = p*.
    const std::size_t g = std::gcd(p_star - d, d);
    unsigned __int128 sum = 0;
    for (std::size_t k = 1; k <= g; ++k) {
        if (g % k == 0) {
            sum += totient(k) * binomial(p_star / k, d / k);
        }
    }
    return static_cast<std::uint64_t>(sum / p_star);
}

bool covers(const Necklace& s, const Necklace& t) {
    require_same_length(s, t);
    return sigma(s) == sigma(t) + 1 && count_flips_into(s, t, true) > 0;
}

std::size_t gamma_down(const Necklace& s, const Necklace& t) {
    if (!covers(s, t)) {
        throw PreconditionError(s.rep() + " does not cover " + t.rep());
    }
    return count_flips_into(s, t, true);
}

std::size_t gamma_up(const Necklace& s, const Necklace& t) {
    if (!covers(t, s)) {
        throw PreconditionError(t.rep() + " does not cover " + s.rep());
    }
    return count_flips_into(s, t, false);
}

} // namespace cbn
