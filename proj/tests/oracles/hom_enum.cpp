#include <functional>

#include "oracles.hpp"

namespace oracle {

std::size_t hom_enumeration(const dw::FiniteGroup& delta, const dw::FiniteGroup& g) {
    // Generators picked greedily; every element gets a word in them by BFS.
    const unsigned nd = static_cast<unsigned>(delta.order());
    std::vector<unsigned> gens;
    std::vector<bool> reached(nd, false);
    auto closure = [&]() {
        std::fill(reached.begin(), reached.end(), false);
        reached[0] = true;
        std::vector<unsigned> q{0};
        for (std::size_t i = 0; i < q.size(); ++i)
            for (unsigned s : gens) {
                unsigned y = delta.mul(q[i], s);
                if (!reached[y]) {
                    reached[y] = true;
                    q.push_back(y);
                }
            }
    };
    closure();
    for (unsigned x = 1; x < nd; ++x)
        if (!reached[x]) {
            gens.push_back(x);
            closure();
        }
    std::size_t count = 0;
    std::vector<unsigned> img(gens.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == gens.size()) {
            // Extend along BFS words, then check the full multiplication table.
            std::vector<long> f(nd, -1);
            f[0] = 0;
            std::vector<unsigned> q{0};
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    unsigned y = delta.mul(q[i], gens[s]);
                    if (f[y] < 0) {
                        f[y] = g.mul(static_cast<unsigned>(f[q[i]]), img[s]);
                        q.push_back(y);
                    }
                }
            for (unsigned a = 0; a < nd; ++a)
                for (unsigned b = 0; b < nd; ++b)
                    if (static_cast<unsigned>(f[delta.mul(a, b)]) !=
                        g.mul(static_cast<unsigned>(f[a]), static_cast<unsigned>(f[b])))
                        return;
            ++count;
            return;
        }
        for (unsigned t = 0; t < g.order(); ++t) {
            img[k] = t;
            rec(k + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace oracle
