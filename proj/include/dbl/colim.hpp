#pragma once

#include "dbl/construct.hpp"

namespace dbl {

struct SchemeMorphism {
    std::shared_ptr<const DoubleDerivationScheme> source, target;
    std::vector<int> obj, hor, ver, sq;
};

std::vector<std::string> validate(const SchemeMorphism& m);

// Finite diagrams: one node per object of the index category, one arrow per morphism.
template <class Node, class Arrow>
struct Diagram {
    FinCategory index;
    std::vector<std::shared_ptr<const Node>> nodes;
    std::vector<Arrow> arrows;
};

using CatDiagram = Diagram<FinCategory, Functor>;
using DdsDiagram = Diagram<DoubleDerivationScheme, SchemeMorphism>;
using DblDiagram = Diagram<DoubleCategory, DoubleFunctor>;

std::vector<std::string> validate(const CatDiagram& d);
std::vector<std::string> validate(const DdsDiagram& d);
std::vector<std::string> validate(const DblDiagram& d);

template <class Node, class Arrow>
struct Colimit {
    std::shared_ptr<const Node> apex;
    std::vector<Arrow> cocone; // per index object
};

using CatColimit = Colimit<FinCategory, Functor>;
using DdsColimit = Colimit<DoubleDerivationScheme, SchemeMorphism>;
using DblColimit = Colimit<DoubleCategory, DoubleFunctor>;

// Cell names are the local names of the least node carrying them; a name already used
// by an earlier node is qualified as "<index object>:<local>".
CatColimit colimit_cat(const CatDiagram& d, const Budget& budget = Budget::defaults());
DdsColimit colimit_dds(const DdsDiagram& d, const Budget& budget = Budget::defaults());
DblColimit colimit_dblcat(const DblDiagram& d, const Budget& budget = Budget::defaults());

// Finite filtered index categories: nonempty, every pair of objects has a common
// target, every parallel pair is coequalized by some arrow.
bool is_directed(const FinCategory& index);
// Sortwise colimit; compositions come from the nodes. Throws not_directed.
DblColimit filtered_colimit_dblcat(const DblDiagram& d);

// Span b <- a -> d as a diagram over the index category "b <- a -> d".
CatDiagram span_diagram(const Functor& i, const Functor& f);
DblDiagram span_diagram(const DoubleFunctor& i, const DoubleFunctor& f);

// Pushout of a full inclusion i: A -> B along F: A -> D from the explicit normal forms.
// Objects: Obj D then Obj B \ Obj A. The cocone is on A, B, D. Throws invalid when i
// is not a full injective inclusion.
CatColimit pushout_cat_formula(const Functor& i, const Functor& f);
// The A_disc x C case: P = D + (B \ A)_disc x C. i is an inclusion of sets (discrete
// categories), f: A_disc x C -> D. The cocone is on A x C, B x C, D.
CatColimit pushout_discrete_times_formula(const Functor& i, std::shared_ptr<const FinCategory> c, const Functor& f);

struct FullInclusion {
    enum class Kind { horn, point_into_I, other };
    Kind kind = Kind::other;
    std::shared_ptr<const FinCategory> a, b;
    Functor i;
};

FullInclusion point_into_I();

// Pushout of i x 1_C: A x C -> B x C along F: A x C -> D (external products), from
// the normal forms of objects, both 1-categories and squares. The cocone is on
// A x C, B x C, D. Throws unsupported for other inclusions.
DblColimit pushout_dblcat_formula(const FullInclusion& inc, std::shared_ptr<const FinCategory> c,
                                  const DoubleFunctor& f);
// The same pushout as a span diagram for colimit_dblcat.
DblDiagram pushout_diagram(const FullInclusion& inc, std::shared_ptr<const FinCategory> c, const DoubleFunctor& f);

// Unique extension of a map given on objects and on generating morphisms (-1 elsewhere)
// to a functor; nullopt when the generators do not reach every morphism or the
// composites disagree.
std::optional<Functor> extend_functor(std::shared_ptr<const FinCategory> src, std::shared_ptr<const FinCategory> tgt,
                                      std::vector<int> obj, std::vector<int> mor);
std::optional<DoubleFunctor> extend_double_functor(std::shared_ptr<const DoubleCategory> src,
                                                   std::shared_ptr<const DoubleCategory> tgt, std::vector<int> obj,
                                                   std::vector<int> hor, std::vector<int> ver, std::vector<int> sq);
// The functor out of the apex restricting to the given cocone.
std::optional<Functor> mediating_functor(const CatColimit& col, const std::vector<Functor>& cocone);

} // namespace dbl
