#pragma once

#include "dbl/category.hpp"

namespace dbl {

// A square's boundary. top/bottom index horizontal morphisms, left/right vertical ones.
struct Boundary {
    int top = -1, bottom = -1, left = -1, right = -1;
    auto operator<=>(const Boundary&) const = default;
};

// Double graph with 1-identities: reflexive horizontal and vertical graphs over a
// common vertex set, plus squares with four boundary edges.
struct DoubleGraph1Id {
    std::vector<Id> objects;
    ReflexiveGraph hor, ver; // vertex sets equal to objects
    std::vector<Id> squares;
    std::vector<Boundary> boundary;
};

// Horizontal and vertical 1-categories plus bare squares (no square composition).
struct DoubleDerivationScheme {
    FinCategory hor, ver; // same objects, same order
    std::vector<Id> squares;
    std::vector<Boundary> boundary;
};

// D = (D0, D1). ver is D0, sq is D1 (objects are the horizontal morphisms, in the
// same order as hor.morphisms; src = top, tgt = bottom; composition is vertical
// pasting a/b). Horizontal pasting [a b] is beside(a, b).
class DoubleCategory {
public:
    FinCategory hor;
    FinCategory ver;
    FinCategory sq;
    std::vector<int> left, right; // per square
    std::vector<int> idh;         // vertical morphism -> horizontal identity square

    int num_objects() const { return hor.num_objects(); }
    int num_squares() const { return sq.num_morphisms(); }
    const std::vector<Id>& objects() const { return hor.objects; }
    const std::vector<Id>& squares() const { return sq.morphisms; }
    int top(int a) const { return sq.src[a]; }
    int bottom(int a) const { return sq.tgt[a]; }
    Boundary boundary(int a) const { return {sq.src[a], sq.tgt[a], left[a], right[a]}; }
    int idv(int f) const { return sq.ident[f]; }
    int above(int a, int b) const { return sq.then(a, b); } // a on top of b
    int beside(int a, int b) const
    {
        if (right[a] != left[b])
            return -1;
        return hcomp_[a][leftpos_[b]];
    }
    const std::vector<int>& with_left(int v) const { return byleft_[v]; }
    const std::vector<int>& with_top(int f) const { return sq.out(f); }
    std::vector<int> squares_with(const Boundary& b) const;
    int square(const Id& name) const { return sq.morphism(name); }

    void reset_beside();
    void set_beside(int a, int b, int c) { hcomp_[a][leftpos_[b]] = c; }
    bool operator==(const DoubleCategory& o) const;

private:
    std::vector<std::vector<int>> byleft_;
    std::vector<int> leftpos_;
    std::vector<std::vector<int>> hcomp_;
};

// Assemble a double category from its 1-categories, square boundaries and both
// square compositions. Identity-square composites are filled in automatically.
class DoubleBuilder {
public:
    DoubleBuilder(FinCategory hor, FinCategory ver);
    int add_square(const Id& name, const Boundary& b);
    void set_idv(int f, int a) { idv_[f] = a; }
    void set_idh(int v, int a) { idh_[v] = a; }
    void set_above(int a, int b, int c) { above_.emplace_back(a, b, c); }
    void set_beside(int a, int b, int c) { beside_.emplace_back(a, b, c); }
    // Creates identity squares named iv(f)/ih(v) for every morphism lacking one;
    // identities on objects are shared.
    void add_identity_squares();
    int num_squares() const { return int(names_.size()); }
    const Boundary& boundary(int a) const { return bd_[a]; }
    int idv(int f) const { return idv_[f]; }
    int idh(int v) const { return idh_[v]; }
    const FinCategory& hor() const { return hor_; }
    const FinCategory& ver() const { return ver_; }
    DoubleCategory build(bool require_total = true);

private:
    FinCategory hor_, ver_;
    std::vector<Id> names_;
    std::vector<Boundary> bd_;
    std::vector<int> idv_, idh_;
    std::vector<std::tuple<int, int, int>> above_, beside_;
};

struct DoubleFunctor {
    std::shared_ptr<const DoubleCategory> source, target;
    std::vector<int> obj, hor, ver, sq;
};

DoubleFunctor identity_double_functor(std::shared_ptr<const DoubleCategory> d);
DoubleFunctor compose(const DoubleFunctor& f, const DoubleFunctor& g); // f then g

// Horizontal natural transformation F => G: horizontal components on objects,
// square components on vertical morphisms.
struct HNatTransf {
    std::shared_ptr<const DoubleFunctor> source, target;
    std::vector<int> obj; // object -> horizontal morphism FA -> GA
    std::vector<int> ver; // vertical j -> square with top theta_A, bottom theta_B, left Fj, right Gj
};

// Vertical natural transformation F => G.
struct VNatTransf {
    std::shared_ptr<const DoubleFunctor> source, target;
    std::vector<int> obj; // object -> vertical morphism FA -> GA
    std::vector<int> hor; // horizontal f -> square with left sigma_A, right sigma_B, top Ff, bottom Gf
};

std::vector<std::string> validate(const DoubleGraph1Id& g);
std::vector<std::string> validate(const DoubleDerivationScheme& s);
std::vector<std::string> validate(const DoubleFunctor& f);
std::vector<std::string> validate(const HNatTransf& t);
std::vector<std::string> validate(const VNatTransf& t);

enum class Exec { serial, parallel };
// Checks every double-category axiom; the parallel variant splits the cubic
// associativity and interchange sweeps across OpenMP threads and reports the same
// diagnostics in the same order.
std::vector<std::string> validate(const DoubleCategory& d, Exec exec = Exec::parallel);

// Structural constructions.
DoubleCategory external_product(const FinCategory& a, const FinCategory& b);
DoubleFunctor external_product(const Functor& f, const Functor& g,
                               std::shared_ptr<const DoubleCategory> src = nullptr,
                               std::shared_ptr<const DoubleCategory> tgt = nullptr);
DoubleCategory transpose(const DoubleCategory& d);
DoubleFunctor transpose(const DoubleFunctor& f);
DoubleCategory embed_h(const FinCategory& c); // HC: horizontal copy of C
DoubleCategory embed_v(const FinCategory& c); // VC: vertical copy of C
FinCategory underlying_h0(const DoubleCategory& d);
FinCategory underlying_v0(const DoubleCategory& d);
DoubleCategory terminal_double();
// Squares are the commuting squares of c; both 1-categories are c.
DoubleCategory commutative_squares(const FinCategory& c);
DoubleCategory coproduct(const DoubleCategory& a, const DoubleCategory& b);
DoubleDerivationScheme underlying_scheme(const DoubleCategory& d);
DoubleGraph1Id underlying_double_graph(const DoubleDerivationScheme& s);
Functor functor_h(const DoubleFunctor& f); // horizontal 1-category part
Functor functor_v(const DoubleFunctor& f); // F0
Functor functor_1(const DoubleFunctor& f); // F1 on D1
DoubleFunctor embed_h(const Functor& f);
DoubleFunctor embed_v(const Functor& f);
// The unique double functor to the terminal double category.
DoubleFunctor to_terminal(std::shared_ptr<const DoubleCategory> d);

} // namespace dbl
