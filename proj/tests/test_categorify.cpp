#include "catch_amalgamated.hpp"
#include "categorify_support.hpp"

using namespace dbl;
using fx::share;

TEST_CASE("simplicial sets of simplex-like complexes")
{
    auto x = simplicial_set(delta(2), 3);
    CHECK(validate(x).empty());
    CHECK(x.level[1]->num_objects() == 6);
    CHECK(x.level[2]->num_objects() == 10);
    CHECK(validate(simplicial_set(horn(2, 0), 2)).empty());
}

TEST_CASE("fundamental category")
{
    for (int n = 0; n <= 3; ++n)
        CHECK(isomorphic(fundamental_category(simplicial_set(delta(n), 2)).cat, ordinal(n)));
    for (auto& f : fx::simplicial_fixtures()) {
        INFO(f.name);
        CHECK(isomorphic(fundamental_category(f.x).cat, f.c));
    }
    for (auto c : {ordinal(2), iso_category(), fx::square_poset(), coproduct(ordinal(1), iso_category())}) {
        auto r = fundamental_category(nerve_cat(c, 2));
        CHECK(isomorphic(r.cat, c));
        CHECK(r.cat.num_morphisms() == c.num_morphisms());
    }
    auto d = fundamental_category(nerve_cat(discrete({"a", "b"}), 2)).cat;
    CHECK(isomorphic(d, discrete({"a", "b"})));
}

TEST_CASE("fundamental category exceeds the budget on an infinite category")
{
    // one vertex, one loop, only degenerate 2-simplices besides: the free monoid
    CategoryBuilder b;
    int o = b.add_object("*");
    b.add_morphism("e", o, o);
    auto loop = b.build(false);
    SimplicialTruncation x;
    auto l0 = share(discrete({"*"}));
    auto l1 = share(discrete({"1", "e"}));
    auto l2 = share(discrete({"11", "1e", "e1"}));
    x.level = {l0, l1, l2};
    x.face = {{}, {Functor{l1, l0, {0, 0}, {0, 0}}, Functor{l1, l0, {0, 0}, {0, 0}}}, {}};
    // d0 drops the first edge, d1 composes (only with an identity), d2 drops the last
    x.face[2] = {Functor{l2, l1, {0, 1, 0}, {0, 1, 0}}, Functor{l2, l1, {0, 1, 1}, {0, 1, 1}},
                 Functor{l2, l1, {0, 0, 1}, {0, 0, 1}}};
    x.degen = {{Functor{l0, l1, {0}, {0}}}, {Functor{l1, l2, {0, 1}, {0, 1}}, Functor{l1, l2, {0, 2}, {0, 2}}}, {}};
    REQUIRE(validate(x).empty());
    Budget small;
    small.max_cells = 100;
    try {
        fundamental_category(x, small);
        FAIL("expected budget_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::budget_exceeded);
    }
    (void)loop;
}

TEST_CASE("horizontal categorification of a simplicial set")
{
    for (auto& f : fx::simplicial_fixtures()) {
        INFO(f.name);
        auto r = fundamental_double_category(f.x);
        CHECK(validate(r.dc).empty());
        CHECK(isomorphic(r.dc, embed_h(f.c)));
        CHECK(r.dc.ver.num_morphisms() == r.dc.ver.num_objects());
        CHECK(r.dc.num_squares() == r.dc.hor.num_morphisms());
    }
}

TEST_CASE("horizontal categorification of a constant times a simplicial set")
{
    for (auto a : {ordinal(1), iso_category(), fx::square_poset()})
        for (int n = 0; n <= 2; ++n) {
            auto x = product(constant_truncation(a, 2), simplicial_set(delta(n), 2));
            REQUIRE(validate(x).empty());
            auto r = fundamental_double_category(x);
            CHECK(validate(r.dc).empty());
            CHECK(isomorphic(r.dc, external_product(a, ordinal(n))));
            CHECK(isomorphic(r.dc.hor, fundamental_category(objects_of(x)).cat));
        }
}

TEST_CASE("vertical categorification is the transpose")
{
    auto x = product(constant_truncation(ordinal(1), 2), simplicial_set(delta(1), 2));
    auto v = fundamental_double_category_v(x);
    CHECK(isomorphic(v.dc, transpose(external_product(ordinal(1), ordinal(1)))));
}

TEST_CASE("counit is an isomorphism")
{
    for (auto& [name, d] : fx::corpus()) {
        INFO(name);
        auto pd = share(d);
        auto e = counit(pd);
        CHECK(validate(e).empty());
        CHECK(fx::bijective(e));
    }
}

TEST_CASE("adjunction bijection")
{
    auto v1 = embed_v(ordinal(1));
    auto sigma = constant_truncation(ordinal(1), 2);
    CHECK(adjunction_bijection_check(sigma, v1));
    {
        auto xt = share(truncate(sigma, 2));
        auto nerve = share(horizontal_nerve(v1, 2));
        CHECK(all_truncation_morphisms(xt, nerve).size() == 3);
    }
    CHECK(adjunction_bijection_check(constant_truncation(discrete({}), 2), v1));
    CHECK(adjunction_bijection_check(simplicial_set(delta(1), 2), embed_h(ordinal(1))));
    CHECK(adjunction_bijection_check(simplicial_set(boundary(2), 2), embed_h(ordinal(2))));
    CHECK(adjunction_bijection_check(simplicial_set(horn(2, 0), 2), external_product(ordinal(1), ordinal(1))));
    CHECK(adjunction_bijection_check(product(constant_truncation(ordinal(1), 2), simplicial_set(delta(1), 2)),
                                     external_product(iso_category(), ordinal(1))));
    CHECK(adjunction_bijection_check(horizontal_nerve(external_product(ordinal(1), ordinal(1)), 2),
                                     commutative_squares(ordinal(1))));
}
