#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace hb {

// A letter of a free group word: +i is the i-th generator (1-based), -i its
// inverse. 0 is not a letter.
using Letter = std::int32_t;

inline Letter inverse_letter(Letter x) { return -x; }
inline int letter_index(Letter x) { return x < 0 ? -x : x; }

namespace detail {

inline void push_reducing(std::vector<Letter>& out, Letter x) {
    if (x == 0) throw std::invalid_argument("0 is not a letter");
    if (!out.empty() && out.back() == -x)
        out.pop_back();
    else
        out.push_back(x);
}

inline std::vector<Letter> reduce_letters(const std::vector<Letter>& raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter x : raw) push_reducing(out, x);
    return out;
}

}  // namespace detail

// A freely reduced word: no adjacent x, x^{-1}. Empty = identity.
class ReducedWord {
public:
    ReducedWord() = default;
    explicit ReducedWord(const std::vector<Letter>& raw)
        : letters_(detail::reduce_letters(raw)) {}

    // Trusted constructor for letters already known to be reduced.
    static ReducedWord from_reduced(std::vector<Letter> letters) {
        ReducedWord w;
        w.letters_ = std::move(letters);
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter at(std::size_t i) const { return letters_[i]; }

    // Largest generator index appearing (0 for the empty word).
    int max_index() const {
        int m = 0;
        for (Letter x : letters_) m = std::max(m, letter_index(x));
        return m;
    }

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
    friend auto operator<=>(const ReducedWord& a, const ReducedWord& b) {
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

inline ReducedWord reduce(const std::vector<Letter>& letters) {
    return ReducedWord(letters);
}

inline ReducedWord concat(const ReducedWord& w1, const ReducedWord& w2) {
    std::vector<Letter> out = w1.letters();
    out.reserve(w1.size() + w2.size());
    for (Letter x : w2.letters()) detail::push_reducing(out, x);
    return ReducedWord::from_reduced(std::move(out));
}

inline ReducedWord invert(const ReducedWord& w) {
    std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
    for (Letter& x : out) x = -x;
    return ReducedWord::from_reduced(std::move(out));
}

// gen^n as a word (n may be negative).
inline ReducedWord power_word(Letter gen, std::int64_t n) {
    if (gen == 0) throw std::invalid_argument("0 is not a letter");
    Letter g = n < 0 ? -gen : gen;
    std::uint64_t cnt = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1
                              : static_cast<std::uint64_t>(n);
    return ReducedWord::from_reduced(std::vector<Letter>(cnt, g));
}

inline ReducedWord word_power(const ReducedWord& w, std::int64_t n) {
    ReducedWord base = n < 0 ? invert(w) : w;
    std::int64_t cnt = n < 0 ? -n : n;
    ReducedWord out;
    for (std::int64_t i = 0; i < cnt; ++i) out = concat(out, base);
    return out;
}

// Exponent sum of the generator `index` in w.
inline std::int64_t exponent_sum(const ReducedWord& w, int index) {
    std::int64_t s = 0;
    for (Letter x : w.letters()) {
        if (x == index) ++s;
        if (x == -index) --s;
    }
    return s;
}

inline std::string to_string(const ReducedWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (Letter x : w.letters()) {
        if (!s.empty()) s += '.';
        s += std::to_string(x);
    }
    return s;
}

namespace detail {

// Booth's least-rotation algorithm; returns the starting index of the
// lexicographically least rotation of s (s nonempty).
inline std::size_t least_rotation(const std::vector<Letter>& s) {
    const std::size_t n = s.size();
    std::vector<std::ptrdiff_t> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = s[j % n];
        std::ptrdiff_t i = f[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (sj != s[(k + i + 1) % n]) {  // here i == -1
            if (sj < s[k % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

}  // namespace detail

// A cyclic word: cyclically reduced, stored in its lexicographically least
// rotation, so equality of representatives = equality of conjugacy classes
// of cyclically reduced words up to rotation.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(const ReducedWord& w) {
        std::vector<Letter> v = w.letters();
        std::size_t lo = 0, hi = v.size();
        while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
            ++lo;
            --hi;
        }
        std::vector<Letter> core(v.begin() + lo, v.begin() + hi);
        if (!core.empty()) {
            std::size_t r = detail::least_rotation(core);
            std::rotate(core.begin(), core.begin() + r, core.end());
        }
        letters_ = std::move(core);
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
    friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) {
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

}  // namespace hb
