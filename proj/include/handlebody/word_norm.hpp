#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/free_map.hpp>

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace hb {

// Nielsen generating set of Aut(F_rank): transpositions x_i <-> x_j,
// inversions x_i -> x_i^{-1}, and elementary maps x_i -> x_i x_j^{+-1} and
// x_i -> x_j^{+-1} x_i. Closed under inverses by construction.
inline std::vector<AutPair> nielsen_generators(int rank) {
    std::vector<AutPair> out;
    auto gen_word = [](int j) { return ReducedWord::from_reduced({j}); };

    for (int a = 1; a <= rank; ++a) {
        for (int b = a + 1; b <= rank; ++b) {
            std::vector<ReducedWord> im;
            for (int j = 1; j <= rank; ++j)
                im.push_back(gen_word(j == a ? b : j == b ? a : j));
            FreeMap m(rank, im);
            out.emplace_back(m, m);
        }
    }
    for (int a = 1; a <= rank; ++a) {
        std::vector<ReducedWord> im;
        for (int j = 1; j <= rank; ++j)
            im.push_back(ReducedWord::from_reduced({j == a ? -j : j}));
        FreeMap m(rank, im);
        out.emplace_back(m, m);
    }
    for (int a = 1; a <= rank; ++a) {
        for (int b = 1; b <= rank; ++b) {
            if (a == b) continue;
            for (int s : {+1, -1}) {
                {  // right multiplication x_a -> x_a x_b^s
                    std::vector<ReducedWord> fwd, bwd;
                    for (int j = 1; j <= rank; ++j) {
                        if (j == a) {
                            fwd.push_back(reduce({a, s * b}));
                            bwd.push_back(reduce({a, -s * b}));
                        } else {
                            fwd.push_back(gen_word(j));
                            bwd.push_back(gen_word(j));
                        }
                    }
                    out.emplace_back(FreeMap(rank, fwd), FreeMap(rank, bwd));
                }
                {  // left multiplication x_a -> x_b^s x_a
                    std::vector<ReducedWord> fwd, bwd;
                    for (int j = 1; j <= rank; ++j) {
                        if (j == a) {
                            fwd.push_back(reduce({s * b, a}));
                            bwd.push_back(reduce({-s * b, a}));
                        } else {
                            fwd.push_back(gen_word(j));
                            bwd.push_back(gen_word(j));
                        }
                    }
                    out.emplace_back(FreeMap(rank, fwd), FreeMap(rank, bwd));
                }
            }
        }
    }
    return out;
}

namespace detail {

inline std::string map_key(const FreeMap& m) {
    std::string key;
    for (const ReducedWord& w : m.images()) {
        for (Letter x : w.letters()) {
            key += std::to_string(x);
            key.push_back('.');
        }
        key.push_back('|');
    }
    return key;
}

}  // namespace detail

struct WordNormResult {
    std::optional<int> norm;     // absent if not found within radius/budget
    bool budget_exhausted = false;
    long long states_explored = 0;
};

// Exact word norm of phi w.r.t. gens by breadth-first search over Aut(F_n),
// deduplicating states by their generator-image tuples. gens must be closed
// under inverses for the result to be the two-sided norm.
inline WordNormResult bfs_word_norm_ex(const FreeMap& phi,
                                       const std::vector<AutPair>& gens,
                                       int radius = 8,
                                       long long stateBudget = 4000000) {
    WordNormResult res;
    const int rank = phi.rank();
    const std::string target = detail::map_key(phi);

    std::vector<FreeMap> frontier{FreeMap::identity(rank)};
    std::string idKey = detail::map_key(frontier[0]);
    std::unordered_set<std::string> seen{idKey};
    res.states_explored = 1;
    if (idKey == target) {
        res.norm = 0;
        return res;
    }

    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<FreeMap> next;
        for (const FreeMap& cur : frontier) {
            for (const AutPair& g : gens) {
                FreeMap cand = compose(g.forward(), cur);
                std::string key = detail::map_key(cand);
                if (!seen.insert(key).second) continue;
                ++res.states_explored;
                if (key == target) {
                    res.norm = depth;
                    return res;
                }
                next.push_back(std::move(cand));
                if (res.states_explored >= stateBudget) {
                    res.budget_exhausted = true;
                    return res;
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return res;
}

inline std::optional<int> bfs_word_norm(const FreeMap& phi,
                                        const std::vector<AutPair>& gens,
                                        int radius = 8) {
    return bfs_word_norm_ex(phi, gens, radius).norm;
}

inline BigInt max_image_length(const FreeMap& m) {
    BigInt mx = 0;
    for (const ReducedWord& w : m.images())
        if (BigInt(w.size()) > mx) mx = BigInt(w.size());
    return mx;
}

// Smallest t >= 0 with C^t >= maxLen, i.e. ceil(log_C maxLen). Any product of
// t maps each stretching letters by at most C has image length <= C^t, so
// this never exceeds the true word norm.
inline long long growth_lower_bound_from_length(const BigInt& maxLen,
                                                const BigInt& C) {
    if (C < 2) throw std::invalid_argument("stretch factor must be >= 2");
    long long t = 0;
    BigInt pow = 1;
    while (pow < maxLen) {
        pow *= C;
        ++t;
    }
    return t;
}

inline long long growth_lower_bound(const FreeMap& phi,
                                    const std::vector<AutPair>& gens) {
    BigInt C = 2;
    for (const AutPair& g : gens) {
        BigInt s = max_image_length(g.forward());
        if (s > C) C = s;
    }
    return growth_lower_bound_from_length(max_image_length(phi), C);
}

}  // namespace hb
