#pragma once

#include <handlebody/word.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hb {

// An endomorphism of the free group of the given rank, stored by the images
// of the generators. Index convention is 1-based throughout.
class FreeMap {
public:
    FreeMap(int rank, std::vector<ReducedWord> images)
        : rank_(rank), images_(std::move(images)) {
        if (rank_ <= 0) throw std::invalid_argument("rank must be positive");
        if (static_cast<int>(images_.size()) != rank_)
            throw std::invalid_argument("need one image per generator");
        for (const ReducedWord& w : images_)
            if (w.max_index() > rank_)
                throw std::invalid_argument("image uses generator beyond rank");
    }

    static FreeMap identity(int rank) {
        std::vector<ReducedWord> im;
        im.reserve(rank);
        for (int i = 1; i <= rank; ++i)
            im.push_back(ReducedWord::from_reduced({i}));
        return FreeMap(rank, std::move(im));
    }

    int rank() const { return rank_; }
    const ReducedWord& image(int index) const { return images_.at(index - 1); }
    const std::vector<ReducedWord>& images() const { return images_; }

    bool is_identity() const {
        for (int i = 1; i <= rank_; ++i) {
            const auto& w = image(i);
            if (w.size() != 1 || w.at(0) != i) return false;
        }
        return true;
    }

    friend bool operator==(const FreeMap&, const FreeMap&) = default;

private:
    int rank_;
    std::vector<ReducedWord> images_;
};

inline ReducedWord apply_map(const FreeMap& m, const ReducedWord& w) {
    if (w.max_index() > m.rank())
        throw std::invalid_argument("word uses generator beyond map rank");
    std::vector<Letter> out;
    std::size_t guess = 0;
    for (const auto& im : m.images()) guess = std::max(guess, im.size());
    out.reserve(w.size() * std::max<std::size_t>(guess, 1));
    for (Letter x : w.letters()) {
        const ReducedWord& im = m.image(letter_index(x));
        if (x > 0) {
            for (Letter y : im.letters()) detail::push_reducing(out, y);
        } else {
            for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
                detail::push_reducing(out, -*it);
        }
    }
    return ReducedWord::from_reduced(std::move(out));
}

// (g . f)(x) = g(f(x)): maps compose right-to-left.
inline FreeMap compose(const FreeMap& g, const FreeMap& f) {
    if (g.rank() != f.rank()) throw std::invalid_argument("rank mismatch");
    std::vector<ReducedWord> im;
    im.reserve(f.rank());
    for (int i = 1; i <= f.rank(); ++i) im.push_back(apply_map(g, f.image(i)));
    return FreeMap(f.rank(), std::move(im));
}

// A verified automorphism: forward and backward are mutually inverse on all
// generators, checked at construction.
class AutPair {
public:
    AutPair(FreeMap fwd, FreeMap bwd)
        : forward_(std::move(fwd)), backward_(std::move(bwd)) {
        if (forward_.rank() != backward_.rank())
            throw std::invalid_argument("rank mismatch");
        if (!compose(forward_, backward_).is_identity() ||
            !compose(backward_, forward_).is_identity())
            throw std::invalid_argument("maps are not mutually inverse");
    }

    static AutPair identity(int rank) {
        return AutPair(FreeMap::identity(rank), FreeMap::identity(rank));
    }

    const FreeMap& forward() const { return forward_; }
    const FreeMap& backward() const { return backward_; }
    int rank() const { return forward_.rank(); }

    AutPair inverse() const { return AutPair(backward_, forward_); }

    friend bool operator==(const AutPair&, const AutPair&) = default;

private:
    FreeMap forward_;
    FreeMap backward_;
};

// (g . f) as automorphisms, right-to-left.
inline AutPair compose(const AutPair& g, const AutPair& f) {
    return AutPair(compose(g.forward(), f.forward()),
                   compose(f.backward(), g.backward()));
}

// phi^n for any integer n (repeated composition; n may be negative).
inline AutPair aut_power(const AutPair& a, std::int64_t n) {
    AutPair base = n < 0 ? a.inverse() : a;
    std::int64_t cnt = n < 0 ? -n : n;
    AutPair acc = AutPair::identity(a.rank());
    AutPair sq = base;
    while (cnt > 0) {
        if (cnt & 1) acc = compose(acc, sq);
        cnt >>= 1;
        if (cnt > 0) sq = compose(sq, sq);
    }
    return acc;
}

// x |-> w.x.w^{-1} on every generator. Loops concatenate left-to-right, so
// this is the action of pushing the basepoint around w.
inline AutPair conjugation(const ReducedWord& w, int rank) {
    if (w.max_index() > rank)
        throw std::invalid_argument("conjugator beyond rank");
    ReducedWord wi = invert(w);
    std::vector<ReducedWord> fwd, bwd;
    fwd.reserve(rank);
    bwd.reserve(rank);
    for (int i = 1; i <= rank; ++i) {
        ReducedWord x = ReducedWord::from_reduced({i});
        fwd.push_back(concat(concat(w, x), wi));
        bwd.push_back(concat(concat(wi, x), w));
    }
    return AutPair(FreeMap(rank, std::move(fwd)), FreeMap(rank, std::move(bwd)));
}

// Alias of conjugation; the name records that this is the point-push action
// on the fundamental group. Satisfies the naturality identity
//   point_push_action(F(alpha)) = F . point_push_action(alpha) . F^{-1}.
inline AutPair point_push_action(const ReducedWord& alpha, int rank) {
    return conjugation(alpha, rank);
}

// Deletes generators mapped to nullopt, renames the rest; spec[i-1] is the
// target index of generator i. Models the map that kills disk-bounding loops.
inline ReducedWord projection(const std::vector<std::optional<int>>& spec,
                              const ReducedWord& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter x : w.letters()) {
        int idx = letter_index(x);
        if (idx > static_cast<int>(spec.size()))
            throw std::invalid_argument("unmapped generator index");
        const auto& target = spec[idx - 1];
        if (!target) continue;
        detail::push_reducing(out, x > 0 ? *target : -*target);
    }
    return ReducedWord::from_reduced(std::move(out));
}

// Conjugates generators 1..splitRank by w, fixes generators splitRank+1..g.
inline AutPair partial_conjugation(int g, int splitRank, const ReducedWord& w) {
    if (splitRank < 1 || splitRank >= g)
        throw std::invalid_argument("splitRank out of range");
    if (w.max_index() > splitRank)
        throw std::invalid_argument("conjugator leaves the first factor");
    ReducedWord wi = invert(w);
    std::vector<ReducedWord> fwd, bwd;
    for (int i = 1; i <= g; ++i) {
        ReducedWord x = ReducedWord::from_reduced({i});
        if (i <= splitRank) {
            fwd.push_back(concat(concat(w, x), wi));
            bwd.push_back(concat(concat(wi, x), w));
        } else {
            fwd.push_back(x);
            bwd.push_back(x);
        }
    }
    return AutPair(FreeMap(g, std::move(fwd)), FreeMap(g, std::move(bwd)));
}

// Rank-2 map 1 |-> 1.2^N, 2 |-> 2.
inline AutPair nielsen_twist(std::int64_t N) {
    ReducedWord a = ReducedWord::from_reduced({1});
    ReducedWord b = ReducedWord::from_reduced({2});
    FreeMap fwd(2, {concat(a, power_word(2, N)), b});
    FreeMap bwd(2, {concat(a, power_word(2, -N)), b});
    return AutPair(std::move(fwd), std::move(bwd));
}

// Column i = exponent vector of the image of generator i.
inline std::vector<std::vector<std::int64_t>> abelianization(const FreeMap& m) {
    std::vector<std::vector<std::int64_t>> cols;
    cols.reserve(m.rank());
    for (int i = 1; i <= m.rank(); ++i) {
        std::vector<std::int64_t> col(m.rank());
        for (int j = 1; j <= m.rank(); ++j)
            col[j - 1] = exponent_sum(m.image(i), j);
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace hb
