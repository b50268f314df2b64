#pragma once

#include "dbl/nerve.hpp"

namespace dbl {

// Inputs are truncations with at least levels 0..2; higher levels are ignored.
using SSet2Trunc = SimplicialTruncation; // discrete levels
using SCat2Trunc = SimplicialTruncation;

// The simplicial set of objects of a simplicial category (levels 0..2).
SSet2Trunc objects_of(const SCat2Trunc& x);

struct FundamentalCategory {
    FinCategory cat;
    std::vector<int> edge_image; // object of X1 -> morphism
};

// Free category on the reflexive graph (X0, X1) modulo d2 x ; d0 x ~ d1 x for x in X2.
FundamentalCategory fundamental_category(const SSet2Trunc& x, const Budget& budget = Budget::defaults());

struct FundamentalDouble {
    DoubleCategory dc;
    std::vector<int> hor_image; // object of X1 -> horizontal morphism
    std::vector<int> sq_image;  // morphism of X1 -> square
};

// c_h X: vertical category X0, horizontal category c(Obj X), squares generated by
// Mor X1 modulo composition in X1, [d2 t  d0 t] ~ d1 t for t in Mor X2, degeneracies of
// vertical morphisms as horizontal identities and identities of X1 as vertical identities.
FundamentalDouble fundamental_double_category(const SCat2Trunc& x, const Budget& budget = Budget::defaults());
// c_v X, the transpose of c_h X; hor_image then indexes vertical morphisms.
FundamentalDouble fundamental_double_category_v(const SCat2Trunc& x, const Budget& budget = Budget::defaults());

// G -> G': the truncation morphism X -> N_h D restricting a double functor c_h X -> D.
// nerve must be horizontal_nerve(D, 2).
TruncationMorphism adjunct(const FundamentalDouble& c, std::shared_ptr<const SCat2Trunc> x,
                           std::shared_ptr<const SimplicialTruncation> nerve, const DoubleFunctor& g);
// G' -> G: the double functor c_h X -> D extending a truncation morphism; nullopt if the
// data do not respect the relations.
std::optional<DoubleFunctor> adjunct(std::shared_ptr<const DoubleCategory> c, const FundamentalDouble& fc,
                                     std::shared_ptr<const DoubleCategory> d, const TruncationMorphism& g);

// Truncation morphisms X -> N_h D on levels 0..2, by enumeration.
std::vector<TruncationMorphism> all_truncation_morphisms(std::shared_ptr<const SCat2Trunc> x,
                                                         std::shared_ptr<const SimplicialTruncation> nerve,
                                                         const Budget& budget = Budget::defaults());

// Whether both adjunct maps are mutually inverse bijections between double functors
// c_h X -> D and truncation morphisms X -> N_h D.
bool adjunction_bijection_check(const SCat2Trunc& x, const DoubleCategory& d, const Budget& budget = Budget::defaults());

// The counit c_h N_h D -> D.
DoubleFunctor counit(std::shared_ptr<const DoubleCategory> d, const Budget& budget = Budget::defaults());

} // namespace dbl
