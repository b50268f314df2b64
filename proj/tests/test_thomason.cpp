#include <algorithm>

#include "catch_amalgamated.hpp"
#include "colim_support.hpp"

using namespace dbl;

namespace {

// Subsets of {0..m} containing the given faces, as a brute-force chain count: chains
// of simplices are strictly increasing sequences under proper inclusion.
long count_chains(const std::vector<std::vector<int>>& simp)
{
    int n = int(simp.size());
    // longest-path style count: chains ending at each simplex
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return simp[a].size() < simp[b].size(); });
    std::vector<long> ending(n, 1);
    long total = 0;
    for (int x : order) {
        for (int y : order)
            if (simp[y].size() < simp[x].size() &&
                std::includes(simp[x].begin(), simp[x].end(), simp[y].begin(), simp[y].end()))
                ending[x] += ending[y];
        total += ending[x];
    }
    return total;
}

} // namespace

TEST_CASE("simplex-like complexes")
{
    CHECK(delta(2).simplices().size() == 7);
    CHECK(boundary(2).simplices().size() == 6);
    CHECK(horn(2, 1).simplices().size() == 5);
    CHECK(horn(1, 0).simplices() == std::vector<std::vector<int>>{{0}});
    CHECK(!validate(horn(1, 2)).empty());
    for (int m = 0; m <= 3; ++m) {
        auto s = delta(m).simplices();
        for (auto& x : s)
            for (std::size_t drop = 0; drop < x.size() && x.size() > 1; ++drop) {
                auto y = x;
                y.erase(y.begin() + drop);
                CHECK(std::find(s.begin(), s.end(), y) != s.end());
            }
    }
}

TEST_CASE("csd2 object counts")
{
    CHECK(csd2(delta(0)).num_objects() == 1);
    CHECK(csd2(horn(1, 0)).num_objects() == 1);
    auto d1 = csd2(delta(1));
    CHECK(d1.num_objects() == 5);
    CHECK(d1.num_morphisms() - d1.num_objects() == 4);
    for (int m = 0; m <= 3; ++m)
        CHECK(csd2(delta(m)).num_objects() == count_chains(delta(m).simplices()));
    CHECK(csd2(delta(2)).num_objects() == 25);
    CHECK(csd2(delta(3)).num_objects() == 149);
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= m; ++k)
            CHECK(csd2(horn(m, k)).num_objects() == count_chains(horn(m, k).simplices()));
}

TEST_CASE("csd2 outputs are posets")
{
    for (auto x : {delta(2), horn(2, 0), boundary(2), delta(3)}) {
        auto p = csd2(x);
        CHECK(validate(p).empty());
        for (int a = 0; a < p.num_objects(); ++a)
            for (int b = 0; b < p.num_objects(); ++b) {
                CHECK(p.hom(a, b).size() <= 1);
                if (a != b)
                    CHECK((p.hom(a, b).empty() || p.hom(b, a).empty()));
            }
    }
}

TEST_CASE("horn and boundary inclusions are full and never re-entered")
{
    for (int m = 1; m <= 2; ++m) {
        std::vector<SimplexLikeComplex> subs{boundary(m)};
        for (int k = 0; k <= m; ++k)
            subs.push_back(horn(m, k));
        for (auto& s : subs) {
            auto i = csd2_inclusion(s, delta(m));
            CHECK(validate(i).empty());
            const auto& B = *i.target;
            std::vector<char> in(B.num_objects(), 0);
            for (int o : i.obj)
                in[o] = 1;
            for (int f = 0; f < B.num_morphisms(); ++f) {
                if (in[B.src[f]] && in[B.tgt[f]])
                    CHECK(std::find(i.mor.begin(), i.mor.end(), f) != i.mor.end());
                if (!in[B.src[f]])
                    CHECK(!in[B.tgt[f]]);
            }
        }
    }
}

TEST_CASE("generating maps")
{
    using F = Generator::Family;
    auto acof = generating_map({F::cat_acof}, 0);
    CHECK(acof.source->num_objects() == 1);
    CHECK(acof.target->num_objects() == 2);
    CHECK(validate(acof).empty());
    CHECK(isomorphic(acof.target->ver, iso_category()));
    auto th = generating_map({F::thomason_acof, 1, 0}, 0);
    CHECK(th.source->num_objects() == 1);
    CHECK(th.target->num_objects() == 5);
    std::vector<Generator> all{{F::thomason_cof, 1}, {F::thomason_cof, 2}, {F::thomason_acof, 2, 1},
                               {F::cat_cof, 0, 0, 0}, {F::cat_cof, 0, 0, 1}, {F::cat_cof, 0, 0, 2}, {F::cat_acof}};
    for (auto& g : all) {
        auto a = generating_map(g, 0), b = generating_map(g, 1);
        CHECK(validate(a).empty());
        CHECK(validate(b).empty());
        CHECK(b.source->num_objects() == 2 * a.source->num_objects());
        CHECK(b.target->num_objects() == 2 * a.target->num_objects());
    }
}
