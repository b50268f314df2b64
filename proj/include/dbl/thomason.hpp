#pragma once

#include "dbl/colim.hpp"

namespace dbl {

// Delta[m], the horn Lambda^k[m] or the boundary of Delta[m], by nondegenerate simplices.
struct SimplexLikeComplex {
    enum class Tag { delta, horn, boundary };
    Tag tag = Tag::delta;
    int m = 0, k = -1;

    // Nonempty vertex subsets, ordered by size then lexicographically.
    std::vector<std::vector<int>> simplices() const;
};

SimplexLikeComplex delta(int m);
SimplexLikeComplex horn(int m, int k);
SimplexLikeComplex boundary(int m);
std::vector<std::string> validate(const SimplexLikeComplex& x);

// Poset of nondegenerate simplices of Sd X: chains of simplices of X ordered by
// inclusion of chains. Chains are ordered by length then lexicographically in the
// simplex order and named like "0|01".
FinCategory csd2(const SimplexLikeComplex& x);
// Inclusion csd2(sub) -> csd2(whole) for sub contained in whole.
Functor csd2_inclusion(const SimplexLikeComplex& sub, const SimplexLikeComplex& whole);
FullInclusion horn_inclusion(int m, int k);

struct Generator {
    enum class Family { thomason_cof, thomason_acof, cat_cof, cat_acof };
    Family family = Family::cat_acof;
    int m = 0, k = 0, idx = 0;
};

// The generating functor A -> B of the family.
Functor generating_functor(const Generator& g);
// i x [n]: A x [n] -> B x [n].
DoubleFunctor generating_map(const Generator& g, int n);

} // namespace dbl
