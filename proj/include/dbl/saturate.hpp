#pragma once

#include "dbl/double.hpp"

namespace dbl {

// Path of generators starting at obj; the empty path is the identity on obj.
struct Path {
    int obj = -1;
    std::vector<int> gens;
};

// Category presented by generators and relations between parallel paths.
struct CatPresentation {
    std::vector<Id> objects;
    std::vector<Id> identity_names; // optional, defaults to 1_<object>
    struct Gen {
        Id name;
        int src = -1, tgt = -1;
    };
    std::vector<Gen> gens;
    std::vector<std::pair<Path, Path>> relations;

    int add_object(const Id& name, const Id& identity = "");
    int add_gen(const Id& name, int src, int tgt);
    void relate(Path a, Path b) { relations.emplace_back(std::move(a), std::move(b)); }
};

struct SaturatedCategory {
    FinCategory cat;
    std::vector<int> gen_image; // generator -> morphism
    std::vector<Path> words;    // morphism -> shortest representative path
};

// Enumerates the presented category by coset-style enumeration of the right regular
// representation. Succeeds only when the table closes (a certificate of finiteness);
// throws budget_exceeded past budget.max_cells elements and not_parallel for
// ill-typed relations.
SaturatedCategory saturate(const CatPresentation& p, const Budget& budget = Budget::defaults());

// Square terms over fixed 1-categories.
struct SqTerm {
    enum class Kind { gen, idv, idh, beside, above };
    Kind kind = Kind::gen;
    int index = -1; // generator, horizontal or vertical morphism
    std::vector<SqTerm> kids;

    static SqTerm gen(int i) { return {Kind::gen, i, {}}; }
    static SqTerm iv(int f) { return {Kind::idv, f, {}}; }
    static SqTerm ih(int v) { return {Kind::idh, v, {}}; }
    static SqTerm beside(SqTerm a, SqTerm b) { return {Kind::beside, -1, {std::move(a), std::move(b)}}; }
    static SqTerm above(SqTerm a, SqTerm b) { return {Kind::above, -1, {std::move(a), std::move(b)}}; }
};

// Double category with given horizontal and vertical 1-categories, generated by
// squares subject to equations between square terms.
struct SquarePresentation {
    FinCategory hor, ver;
    struct Gen {
        Id name;
        Boundary b;
    };
    std::vector<Gen> gens;
    std::vector<std::pair<SqTerm, SqTerm>> relations;

    int add_gen(const Id& name, const Boundary& b);
    void relate(SqTerm a, SqTerm b) { relations.emplace_back(std::move(a), std::move(b)); }
};

struct SaturatedDouble {
    DoubleCategory dc;
    std::vector<int> gen_image; // generator -> square
    std::vector<SqTerm> terms;  // square -> smallest representative term
};

// Congruence closure of the presentation under units, associativity of both
// compositions, interchange and identity functoriality, creating composites only when
// none can be deduced. Throws budget_exceeded past budget.max_squares squares and
// invalid for relations between squares with different boundaries.
SaturatedDouble saturate(const SquarePresentation& p, const Budget& budget = Budget::defaults());

// Evaluates a term in d given images of generators and functors on the 1-categories.
int evaluate(const SqTerm& t, const DoubleCategory& d, const std::vector<int>& gen, const std::vector<int>& hor,
             const std::vector<int>& ver);

std::string to_string(const SqTerm& t, const SquarePresentation& p);

} // namespace dbl
