#pragma once

#include "dbl/saturate.hpp"

namespace dbl {

// Free category on the non-identity edges of a reflexive graph. Morphism names are
// edge ids joined by ';'. Throws infinite when the edges contain a cycle and
// budget_exceeded past the path or cell budget.
FinCategory free_category(const ReflexiveGraph& g, const Budget& budget = Budget::defaults());

// Free 1-categories on both reflexive graphs; the squares are unchanged.
DoubleDerivationScheme free_dds(const DoubleGraph1Id& g, const Budget& budget = Budget::defaults());

// A square of a free double category: a formal identity or the class of a pasting of
// generators, shown by its smallest term.
struct FreeSquare {
    enum class Kind { idv, idh, tile };
    Kind kind = Kind::tile;
    int index = -1; // horizontal (idv) or vertical (idh) morphism
    SqTerm term;
};

struct FreeDoubleCategory {
    DoubleCategory dc;
    std::vector<int> gen_image; // scheme square -> square of dc
    std::vector<FreeSquare> squares;
};

SquarePresentation presentation_of(const DoubleDerivationScheme& s);
FreeDoubleCategory free_double_category(const DoubleDerivationScheme& s, const Budget& budget = Budget::defaults());

// Partition of morphisms (or squares) by class id.
struct CatCongruence {
    std::vector<int> cls;
};
struct DblCongruence {
    std::vector<int> cls;
};

std::vector<std::string> validate(const FinCategory& c, const CatCongruence& r);
std::vector<std::string> validate(const DoubleCategory& d, const DblCongruence& r);

// Classes are named by their least identifier. Throws not_congruence.
FinCategory quotient_category(const FinCategory& c, const CatCongruence& r);
DoubleCategory quotient_double(const DoubleCategory& d, const DblCongruence& r);
Functor quotient_projection(std::shared_ptr<const FinCategory> c, std::shared_ptr<const FinCategory> q,
                            const CatCongruence& r);
DoubleFunctor quotient_projection(std::shared_ptr<const DoubleCategory> d, std::shared_ptr<const DoubleCategory> q,
                                  const DblCongruence& r);

// Least congruence containing the pairs. Throws not_parallel.
CatCongruence congruence_closure(const FinCategory& c, const std::vector<std::pair<int, int>>& pairs);
DblCongruence congruence_closure(const DoubleCategory& d, const std::vector<std::pair<int, int>>& pairs);

} // namespace dbl
