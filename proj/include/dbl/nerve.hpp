#pragma once

#include "dbl/thomason.hpp"

namespace dbl {

// Simplicial object truncated at level n. Set-valued truncations have discrete levels.
struct SimplicialTruncation {
    std::vector<std::shared_ptr<const FinCategory>> level;
    std::vector<std::vector<Functor>> face;  // face[k][i]: level k -> level k-1 (face[0] is empty)
    std::vector<std::vector<Functor>> degen; // degen[k][i]: level k -> level k+1 for k < n
    // For nerves: the string of cells behind every object and morphism of each level.
    // Level 0 entries are single objects / vertical morphisms.
    std::vector<std::vector<std::vector<int>>> obj_cells, mor_cells;

    int max_level() const { return int(level.size()) - 1; }
    bool set_valued() const;
};

// Simplicial identities among all represented operators, plus functor validity.
std::vector<std::string> validate(const SimplicialTruncation& x);

struct TruncationMorphism {
    std::shared_ptr<const SimplicialTruncation> source, target;
    std::vector<Functor> level;
};

// Levelwise functors commuting with all represented faces and degeneracies.
std::vector<std::string> validate(const TruncationMorphism& f);

// Classical nerve: level k is the discrete category on composable k-strings. Level 1
// objects are indexed like the morphisms of c.
SimplicialTruncation nerve_cat(const FinCategory& c, int n);
// Level k is the k-fold pullback D1 x_D0 ... x_D0 D1; level 0 is the vertical category and
// level 1 is D1 with the indexing of d.sq. Morphisms compose vertically.
SimplicialTruncation horizontal_nerve(const DoubleCategory& d, int n);
SimplicialTruncation vertical_nerve(const DoubleCategory& d, int n);
TruncationMorphism horizontal_nerve(const DoubleFunctor& f, std::shared_ptr<const SimplicialTruncation> src,
                                    std::shared_ptr<const SimplicialTruncation> tgt);

SimplicialTruncation truncate(const SimplicialTruncation& x, int n);
// sigma A: constant simplicial category.
SimplicialTruncation constant_truncation(const FinCategory& a, int n);
// Levelwise product.
SimplicialTruncation product(const SimplicialTruncation& x, const SimplicialTruncation& y);
// Nerve of an ordered simplicial complex: k-simplices are nondecreasing vertex sequences
// whose support is a simplex.
SimplicialTruncation simplicial_set(const SimplexLikeComplex& x, int n);

// Bisimplicial set truncated at bidegree (max_p, max_q): (p, q) entries are p x q arrays,
// p rows stacked vertically and q columns side by side.
struct BisimplicialTruncation {
    int max_p = 0, max_q = 0;
    std::vector<std::vector<std::vector<Id>>> names; // [p][q]
    // vface[p][q][i]: (p,q) -> (p-1,q); hface[p][q][j]: (p,q) -> (p,q-1); degeneracies go up.
    std::vector<std::vector<std::vector<std::vector<int>>>> vface, hface, vdegen, hdegen;

    int size(int p, int q) const { return int(names[p][q].size()); }
};

std::vector<std::string> validate(const BisimplicialTruncation& x);

BisimplicialTruncation double_nerve(const DoubleCategory& d, int m, int n);
// Set-valued diagonal: level k = (k,k) arrays, operators d_i = d^v_i d^h_i, s_i = s^v_i s^h_i.
SimplicialTruncation diag_nerve(const DoubleCategory& d, int k);

// Whether level n is isomorphic, through its 2-dimensional faces, to the category of
// matching families of 2-simplices. Requires n >= 3 and x.max_level() >= n.
bool check_2coskeletal(const SimplicialTruncation& x, int n);
bool check_2coskeletal(const DoubleCategory& d, int n);

} // namespace dbl
