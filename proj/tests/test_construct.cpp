#include <numeric>
#include <set>

#include "catch_amalgamated.hpp"
#include "construct_support.hpp"

using namespace dbl;
using fx::share;

namespace {

Budget small_budget()
{
    Budget b;
    b.max_cells = 500;
    b.max_path = 20;
    b.max_squares = 500;
    return b;
}

ReflexiveGraph reflexive(const std::vector<Id>& vs, const std::vector<std::tuple<Id, int, int>>& es)
{
    ReflexiveGraph g;
    g.graph.vertices = vs;
    for (std::size_t v = 0; v < vs.size(); ++v) {
        g.identity.push_back(int(g.graph.edges.size()));
        g.graph.edges.push_back({"1_" + vs[v], int(v), int(v)});
    }
    for (auto& [id, s, t] : es)
        g.graph.edges.push_back({id, s, t});
    return g;
}

FinCategory one_object() { return terminal_category(); }

} // namespace

TEST_CASE("category saturation: idempotent monoid")
{
    CatPresentation p;
    int o = p.add_object("*");
    int e = p.add_gen("e", o, o);
    p.relate({o, {e, e}}, {o, {e}});
    auto s = saturate(p);
    CHECK(s.cat.num_morphisms() == 2);
    CHECK(validate(s.cat).empty());
    CHECK(s.cat.then(s.gen_image[e], s.gen_image[e]) == s.gen_image[e]);
}

TEST_CASE("category saturation: cyclic group of order 3")
{
    CatPresentation p;
    int o = p.add_object("*");
    int g = p.add_gen("g", o, o);
    p.relate({o, {g, g, g}}, {o, {}});
    auto s = saturate(p);
    CHECK(s.cat.num_morphisms() == 3);
    CHECK(validate(s.cat).empty());
}

TEST_CASE("category saturation: a chain of generators presents an ordinal")
{
    for (int n = 1; n <= 5; ++n) {
        CatPresentation p;
        for (int i = 0; i <= n; ++i)
            p.add_object(std::to_string(i));
        for (int i = 0; i < n; ++i)
            p.add_gen("d" + std::to_string(i), i, i + 1);
        auto s = saturate(p);
        CHECK(s.cat.num_morphisms() == (n + 1) * (n + 2) / 2);
        CHECK(isomorphic(s.cat, ordinal(n)));
    }
}

TEST_CASE("category saturation: a relation identifies the long edge")
{
    CatPresentation p;
    for (auto n : {"a", "b", "c"})
        p.add_object(n);
    int f = p.add_gen("f", 0, 1), g = p.add_gen("g", 1, 2), h = p.add_gen("h", 0, 2);
    p.relate({0, {f, g}}, {0, {h}});
    auto s = saturate(p);
    CHECK(isomorphic(s.cat, ordinal(2)));
    CHECK(s.gen_image[h] == s.cat.then(s.gen_image[f], s.gen_image[g]));
    CHECK(s.words[s.gen_image[h]].gens.size() == 1);
}

TEST_CASE("category saturation errors")
{
    CatPresentation p;
    int o = p.add_object("*");
    p.add_gen("g", o, o);
    try {
        saturate(p, small_budget());
        FAIL("expected budget_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::budget_exceeded);
    }
    CatPresentation q;
    q.add_object("a");
    q.add_object("b");
    int f = q.add_gen("f", 0, 1);
    q.relate({0, {f}}, {0, {}});
    try {
        saturate(q);
        FAIL("expected not_parallel");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_parallel);
    }
}

TEST_CASE("free category on reflexive graphs")
{
    CHECK(free_category(reflexive({"a", "b"}, {{"f", 0, 1}})).num_morphisms() == 3);
    auto path = free_category(reflexive({"a", "b", "c"}, {{"f", 0, 1}, {"g", 1, 2}}));
    CHECK(path.num_morphisms() == 6);
    CHECK(validate(path).empty());
    CHECK(path.morphism("f;g") == path.then(path.morphism("f"), path.morphism("g")));
    // two parallel paths stay distinct
    auto tri = free_category(reflexive({"a", "b", "c"}, {{"f", 0, 1}, {"g", 1, 2}, {"h", 0, 2}}));
    CHECK(tri.num_morphisms() == 7);
    try {
        free_category(reflexive({"a"}, {{"l", 0, 0}}));
        FAIL("expected infinite");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::infinite);
    }
    Budget b;
    b.max_path = 2;
    try {
        free_category(reflexive({"a", "b", "c", "d"}, {{"f", 0, 1}, {"g", 1, 2}, {"h", 2, 3}}), b);
        FAIL("expected budget_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::budget_exceeded);
    }
}

TEST_CASE("free category on the underlying graph of a free category")
{
    for (int n = 0; n <= 4; ++n) {
        auto g = reflexive({}, {});
        for (int i = 0; i <= n; ++i) {
            g.graph.vertices.push_back(std::to_string(i));
            g.identity.push_back(int(g.graph.edges.size()));
            g.graph.edges.push_back({"1_" + std::to_string(i), i, i});
        }
        for (int i = 0; i < n; ++i)
            g.graph.edges.push_back({"d" + std::to_string(i), i, i + 1});
        CHECK(isomorphic(free_category(g), ordinal(n)));
    }
}

TEST_CASE("free derivation schemes")
{
    DoubleGraph1Id g;
    g.objects = {"a", "b"};
    g.hor = reflexive({"a", "b"}, {{"f", 0, 1}});
    g.ver = reflexive({"a", "b"}, {});
    auto s = free_dds(g);
    CHECK(isomorphic(s.hor, ordinal(1)));
    CHECK(s.squares.empty());

    auto p = external_product(ordinal(1), ordinal(1));
    auto q = free_dds(underlying_double_graph(underlying_scheme(p)));
    CHECK(isomorphic(q.hor, p.hor));
    CHECK(isomorphic(q.ver, p.ver));
    CHECK(q.squares.size() == std::size_t(p.num_squares()));
    CHECK(validate(q).empty());

    g.ver = reflexive({"a", "b"}, {{"l", 1, 1}});
    try {
        free_dds(g);
        FAIL("expected infinite");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::infinite);
    }
}

TEST_CASE("free double category on a single square")
{
    auto p = external_product(ordinal(1), ordinal(1));
    auto s = fx::generating_scheme(p);
    REQUIRE(s.squares.size() == 1);
    auto f = free_double_category(s);
    CHECK(validate(f.dc).empty());
    // 4 shared object identities, 2 horizontal and 2 vertical identities, sigma
    CHECK(f.dc.num_squares() == 9);
    CHECK(f.squares[f.gen_image[0]].kind == FreeSquare::Kind::tile);
    CHECK(isomorphic(f.dc, p));
}

TEST_CASE("free double category with no squares has identity squares only")
{
    auto p = external_product(ordinal(1), ordinal(1));
    DoubleDerivationScheme s{p.hor, p.ver, {}, {}};
    auto f = free_double_category(s);
    CHECK(validate(f.dc).empty());
    CHECK(f.dc.num_squares() == p.num_objects() + (p.hor.num_morphisms() - p.num_objects()) +
                                    (p.ver.num_morphisms() - p.num_objects()));
    for (auto& sq : f.squares)
        CHECK(sq.kind != FreeSquare::Kind::tile);
}

TEST_CASE("free double category on two horizontally composable squares")
{
    auto p = external_product(ordinal(1), ordinal(2));
    auto s = fx::generating_scheme(p);
    REQUIRE(s.squares.size() == 2);
    auto f = free_double_category(s);
    CHECK(validate(f.dc).empty());
    std::set<std::string> tiles;
    for (int a = 0; a < f.dc.num_squares(); ++a)
        if (f.squares[a].kind == FreeSquare::Kind::tile)
            tiles.insert(f.dc.squares()[a]);
    std::string x = s.squares[0], y = s.squares[1];
    if (f.dc.right[f.gen_image[0]] != f.dc.left[f.gen_image[1]])
        std::swap(x, y);
    CHECK(tiles == std::set<std::string>{x, y, "[" + x + " " + y + "]"});
    CHECK(isomorphic(f.dc, p));
}

TEST_CASE("free double category on a grid of generators recovers the external product")
{
    for (auto [m, n] : {std::pair{1, 3}, {2, 2}, {2, 3}}) {
        auto p = external_product(ordinal(m), ordinal(n));
        auto s = fx::generating_scheme(p);
        CHECK(s.squares.size() == std::size_t(m * n));
        auto f = free_double_category(s);
        CHECK(validate(f.dc).empty());
        CHECK(f.dc.num_squares() == p.num_squares());
        CHECK(isomorphic(f.dc, p));
    }
}

TEST_CASE("square saturation: idempotent square collapses its powers")
{
    // with s/s = s, interchange gives [s s] = [s/i i/s] = [s i]/[i s] = s/s = s
    SquarePresentation p;
    p.hor = one_object();
    p.ver = one_object();
    int s = p.add_gen("s", {0, 0, 0, 0});
    p.relate(SqTerm::above(SqTerm::gen(s), SqTerm::gen(s)), SqTerm::gen(s));
    auto r = saturate(p);
    CHECK(validate(r.dc).empty());
    CHECK(r.dc.num_squares() == 2);
    CHECK(r.dc.beside(r.gen_image[s], r.gen_image[s]) == r.gen_image[s]);
}

TEST_CASE("square saturation errors")
{
    SquarePresentation p;
    p.hor = one_object();
    p.ver = one_object();
    p.add_gen("s", {0, 0, 0, 0});
    try {
        saturate(p, small_budget());
        FAIL("expected budget_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::budget_exceeded);
    }
    auto q = external_product(ordinal(1), ordinal(1));
    SquarePresentation r;
    r.hor = q.hor;
    r.ver = q.ver;
    auto gens = fx::indecomposables(q);
    int a = r.add_gen("a", q.boundary(gens[0]));
    r.relate(SqTerm::gen(a), SqTerm::iv(0));
    try {
        saturate(r);
        FAIL("expected invalid");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::invalid);
    }
}

TEST_CASE("evaluating representative terms reproduces the squares")
{
    auto p = external_product(ordinal(2), ordinal(2));
    auto s = fx::generating_scheme(p);
    auto f = free_double_category(s);
    auto pres = presentation_of(s);
    std::vector<int> hor(p.hor.num_morphisms()), ver(p.ver.num_morphisms());
    std::iota(hor.begin(), hor.end(), 0);
    std::iota(ver.begin(), ver.end(), 0);
    for (int a = 0; a < f.dc.num_squares(); ++a)
        CHECK(evaluate(f.squares[a].term, f.dc, f.gen_image, hor, ver) == a);
    std::vector<int> into_p;
    for (auto& n : s.squares)
        into_p.push_back(p.square(n));
    std::set<int> hit;
    for (int a = 0; a < f.dc.num_squares(); ++a)
        hit.insert(evaluate(f.squares[a].term, p, into_p, hor, ver));
    CHECK(int(hit.size()) == p.num_squares());
}

TEST_CASE("free/forgetful: scheme maps extend uniquely")
{
    struct Case {
        DoubleCategory src, dst;
    };
    auto sp = fx::square_poset();
    std::vector<Case> cases{
        {external_product(ordinal(1), ordinal(1)), external_product(ordinal(1), ordinal(1))},
        {external_product(ordinal(1), ordinal(2)), external_product(ordinal(1), ordinal(1))},
        {external_product(ordinal(1), ordinal(2)), commutative_squares(sp)},
        {external_product(ordinal(2), ordinal(2)), commutative_squares(ordinal(2))},
    };
    for (auto& c : cases) {
        auto s = fx::generating_scheme(c.src);
        auto f = free_double_category(s);
        auto fd = share(f.dc);
        auto d = share(c.dst);
        auto functors = all_double_functors(fd, d);
        std::set<std::vector<int>> restrictions;
        for (auto& F : functors) {
            std::vector<int> key = F.obj;
            key.insert(key.end(), F.hor.begin(), F.hor.end());
            key.insert(key.end(), F.ver.begin(), F.ver.end());
            for (int g : f.gen_image)
                key.push_back(F.sq[g]);
            restrictions.insert(key);
        }
        CHECK(restrictions.size() == functors.size());
        CHECK(functors.size() == fx::count_scheme_maps(s, c.dst));
    }
}

TEST_CASE("congruence closure and quotients of categories")
{
    auto tri = free_category(reflexive({"a", "b", "c"}, {{"f", 0, 1}, {"g", 1, 2}, {"h", 0, 2}}));
    auto none = congruence_closure(tri, {});
    for (int m = 0; m < tri.num_morphisms(); ++m)
        CHECK(none.cls[m] == m);
    CHECK(isomorphic(quotient_category(tri, none), tri));

    int fg = tri.morphism("f;g"), h = tri.morphism("h");
    auto r = congruence_closure(tri, {{fg, h}});
    CHECK(validate(tri, r).empty());
    for (int m = 0; m < tri.num_morphisms(); ++m)
        for (int n = 0; n < tri.num_morphisms(); ++n)
            CHECK((r.cls[m] == r.cls[n]) == (m == n || (std::set{m, n} == std::set{fg, h})));
    auto q = quotient_category(tri, r);
    CHECK(isomorphic(q, ordinal(2)));
    CHECK(q.morphism("f;g") >= 0);
    auto qs = share(q);
    auto pr = quotient_projection(share(tri), qs, r);
    CHECK(validate(pr).empty());

    try {
        congruence_closure(tri, {{tri.morphism("f"), h}});
        FAIL("expected not_parallel");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_parallel);
    }
    CatCongruence bad{std::vector<int>(tri.num_morphisms(), 0)};
    try {
        quotient_category(tri, bad);
        FAIL("expected not_congruence");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_congruence);
    }
}

TEST_CASE("congruence closure propagates through composition")
{
    // a -> b -> c -> d; identifying two parallel b -> c edges forces their composites together
    auto g = free_category(reflexive({"a", "b", "c", "d"}, {{"f", 0, 1}, {"g", 1, 2}, {"g'", 1, 2}, {"h", 2, 3}}));
    auto r = congruence_closure(g, {{g.morphism("g"), g.morphism("g'")}});
    CHECK(r.cls[g.morphism("f;g")] == r.cls[g.morphism("f;g'")]);
    CHECK(r.cls[g.morphism("f;g;h")] == r.cls[g.morphism("f;g';h")]);
    CHECK(r.cls[g.morphism("g;h")] == r.cls[g.morphism("g';h")]);
    auto q = quotient_category(g, r);
    CHECK(isomorphic(q, ordinal(3)));
    // minimality: undoing any single merge drops the generating pair or breaks closure
    for (int m = 0; m < g.num_morphisms(); ++m) {
        if (r.cls[m] == m)
            continue;
        auto split = r;
        split.cls[m] = g.num_morphisms() + m;
        bool keeps_pair = split.cls[g.morphism("g")] == split.cls[g.morphism("g'")];
        CHECK((!keeps_pair || !validate(g, split).empty()));
    }
}

TEST_CASE("double congruences and quotients")
{
    auto p = external_product(ordinal(1), ordinal(1));
    auto total = congruence_closure(p, {});
    CHECK(validate(p, total).empty());
    CHECK(isomorphic(quotient_double(p, total), p));

    // commutative squares of a free square poset: the free double category on two
    // parallel squares, quotiented by identifying them, is the single-square category
    auto s = fx::generating_scheme(p);
    s.squares.push_back("tau");
    s.boundary.push_back(s.boundary[0]);
    auto f = free_double_category(s);
    CHECK(f.dc.num_squares() > p.num_squares());
    auto r = congruence_closure(f.dc, {{f.gen_image[0], f.gen_image[1]}});
    auto q = quotient_double(f.dc, r);
    CHECK(validate(q).empty());
    CHECK(isomorphic(q, p));
    auto pr = quotient_projection(share(f.dc), share(q), r);
    CHECK(validate(pr).empty());

    try {
        congruence_closure(p, {{fx::indecomposables(p)[0], p.idv(0)}});
        FAIL("expected not_parallel");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_parallel);
    }
}
