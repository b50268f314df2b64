#pragma once

#include "dbl/nerve.hpp"

namespace dbl {

// tau: simplicially surjective; tau_prime: categorically surjective; trivial: split.
enum class Topology { tau, tau_prime, trivial };

const char* to_string(Topology t);
Topology parse_topology(const std::string& s); // "tau", "tauprime" or "tau_prime", "trivial"

// Horizontally invertible part of D1: objects are horizontal isomorphisms, morphisms
// are horizontally invertible squares, composition is vertical.
struct Iso1 {
    std::shared_ptr<const FinCategory> cat;
    std::vector<int> hor; // object -> horizontal morphism
    std::vector<int> sq;  // morphism -> square
    std::vector<int> of_hor, of_sq; // inverse maps, -1 when not invertible
};
Iso1 iso1(const DoubleCategory& b);
// The horizontal inverse of a square, or -1.
int horizontal_inverse(const DoubleCategory& d, int a);
int vertical_inverse(const DoubleCategory& d, int a);

struct Pullback {
    std::shared_ptr<const FinCategory> cat;
    Functor p1, p2;
    std::map<std::pair<int, int>, int> obj, mor; // pairs -> index
};
// Strict pullback of f: A -> C and g: B -> C.
Pullback pullback(const Functor& f, const Functor& g);

// (P_F)_0 as the pullback of F_0 along t: iso(B)_1 -> B_0, with s o Fbar_0.
struct MappingPath {
    Iso1 iso;
    Pullback pb;     // p1 = tbar (to A_0), p2 = Fbar_0 (to iso(B)_1)
    Functor s_fbar;  // (P_F)_0 -> B_0
};
MappingPath mapping_path_object(const DoubleFunctor& f);

struct EpiWitness {
    // tau: explored automaton states, or a codomain string without a lift (a single
    // object id when level 0 already fails).
    std::size_t states = 0;
    std::vector<int> counterexample;
    bool object_counterexample = false;
    // tau_prime: a directed-graph section (objects, then one lift per morphism).
    std::vector<int> obj_section, mor_section;
    // trivial: a functor section.
    std::optional<Functor> section;
};

struct EpiResult {
    bool holds = false;
    EpiWitness witness;
};

EpiResult is_epi(const Functor& p, Topology t, const Budget& budget = Budget::defaults());
// Checks a witness against p.
bool verify_witness(const Functor& p, Topology t, const EpiResult& r);

// F1 is a pullback of F0 x F0: unique horizontal morphisms and unique squares over
// given boundaries.
bool is_fully_faithful(const DoubleFunctor& f);
bool is_weak_equivalence(const DoubleFunctor& f, Topology t, const Budget& budget = Budget::defaults());
// (r_F)_0: iso(E)_1 -> (P_F)_0.
Functor fibration_comparison(const DoubleFunctor& f, const MappingPath& m, const Iso1& iso_e);
bool is_fibration(const DoubleFunctor& f, Topology t, const Budget& budget = Budget::defaults());
bool is_acyclic_fibration(const DoubleFunctor& f, Topology t, const Budget& budget = Budget::defaults());

enum class Tri { no, yes, unknown };
const char* to_string(Tri t);

// Free on a directed graph: no nonidentity isomorphisms, acyclic indecomposables, and
// paths of indecomposables correspond bijectively to morphisms.
bool is_free_on_graph(const FinCategory& c);
// trivial: yes. tau_prime: is_free_on_graph(D_0). tau: no when D_0 is not free (tau
// projectives are tau' projective), yes for finite coproducts of ordinals, else unknown.
Tri is_cofibrant(const DoubleCategory& d, Topology t);

// E_1 as the pullback of (s,t): B_1 -> B_0 x B_0 along K_0 x K_0, with its unique double
// category structure and K.
DoubleFunctor pull_back_along(const Functor& k0, std::shared_ptr<const DoubleCategory> b);

struct Replacement {
    bool materialized = false;
    std::shared_ptr<const DoubleCategory> e;
    DoubleFunctor k;
    // tau_prime with cyclic nonidentity arrows: the graph whose free category is E_0.
    FinGraph presentation;
    // tau: K_0 is certified simplicially surjective on nerve levels <= certified_level;
    // -1 when certified on all levels.
    int certified_level = -1;
    bool k0_epi = false; // decided on all levels
};

Replacement cofibrant_replacement(std::shared_ptr<const DoubleCategory> b, Topology t, int level = 1,
                                  const Budget& budget = Budget::defaults());

// Whether D1 x_{D0} D1 -> D1 x^ps_{D0} D1 is essentially surjective.
bool segal_pseudo_comparison(const DoubleCategory& d);

} // namespace dbl
