#pragma once

#include <random>

#include "tanglekit/braid.hpp"
#include "tanglekit/freeword.hpp"
#include "tanglekit/tangle.hpp"

namespace tktest {

inline tk::BraidWord random_braid(std::mt19937& rng, int n, int max_len) {
    tk::BraidWord b(n);
    if (n < 2) return b;
    std::uniform_int_distribution<int> len(0, max_len), gen(1, n - 1), sign(0, 1);
    const int L = len(rng);
    for (int t = 0; t < L; ++t) b *= tk::BraidWord::sigma(n, gen(rng), sign(rng) ? 1 : -1);
    return b;
}

// Random commutator-subgroup word: a product of conjugated commutators.
inline tk::FreeWord2 random_commutator(std::mt19937& rng, int pieces) {
    std::uniform_int_distribution<int> e(-2, 2), which(0, 1);
    tk::FreeWord2 w;
    for (int t = 0; t < pieces; ++t) {
        tk::FreeWord2 a = which(rng) ? tk::fx(e(rng) | 1) : tk::fy(e(rng) | 1);
        tk::FreeWord2 b = which(rng) ? tk::fy(e(rng) | 1) : tk::fx(e(rng) | 1);
        tk::FreeWord2 c = which(rng) ? tk::fx(e(rng)) : tk::fy(e(rng));
        w *= c * a * b * a.inverse() * b.inverse() * c.inverse();
    }
    return w;
}

// Random valid link diagram: cups, braid blocks and caps, then capped off.
inline tk::Tangle random_link(std::mt19937& rng, int steps, int max_width = 6, int max_cross = 3) {
    using namespace tk;
    std::vector<Fundamental> seq;
    Dirs cur;
    auto cap_somewhere = [&](bool random_pos) {
        std::vector<int> ok;
        for (size_t i = 0; i + 1 < cur.size(); ++i)
            if (cur[i] != cur[i + 1]) ok.push_back(static_cast<int>(i));
        int i = ok[random_pos ? std::uniform_int_distribution<int>(0, static_cast<int>(ok.size()) - 1)(rng) : 0];
        Dirs left(cur.begin(), cur.begin() + i), right(cur.begin() + i + 2, cur.end());
        seq.push_back(Fundamental::cap(left, cur[i] == Dir::Up ? ArcOrient::LtoR : ArcOrient::RtoL, right));
        cur = boundary(seq.back()).target;
    };
    std::uniform_int_distribution<int> choice(0, 2), coin(0, 1);
    for (int t = 0; t < steps; ++t) {
        int c = choice(rng);
        if (cur.empty() || (c == 0 && static_cast<int>(cur.size()) + 2 <= max_width)) {
            int i = std::uniform_int_distribution<int>(0, static_cast<int>(cur.size()))(rng);
            Dirs left(cur.begin(), cur.begin() + i), right(cur.begin() + i, cur.end());
            seq.push_back(Fundamental::cup(left, coin(rng) ? ArcOrient::LtoR : ArcOrient::RtoL, right));
        } else if (c == 1 && cur.size() >= 2) {
            seq.push_back(Fundamental::braid_block(random_braid(rng, static_cast<int>(cur.size()), max_cross), cur));
        } else {
            cap_somewhere(true);
            continue;
        }
        cur = boundary(seq.back()).target;
    }
    while (!cur.empty()) cap_somewhere(true);
    return Tangle::validate(seq);
}

}  // namespace tktest
