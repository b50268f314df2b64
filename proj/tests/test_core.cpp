#include <algorithm>
#include <numeric>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"

using namespace dbl;

namespace {

bool brute_iso(const FinCategory& x, const FinCategory& y)
{
    if (x.num_objects() != y.num_objects() || x.num_morphisms() != y.num_morphisms())
        return false;
    std::vector<int> po(x.num_objects()), pm(x.num_morphisms());
    std::iota(po.begin(), po.end(), 0);
    do {
        std::iota(pm.begin(), pm.end(), 0);
        do {
            bool ok = true;
            for (int f = 0; ok && f < x.num_morphisms(); ++f) {
                ok = y.src[pm[f]] == po[x.src[f]] && y.tgt[pm[f]] == po[x.tgt[f]];
                for (int g : x.out(x.tgt[f]))
                    ok = ok && y.then(pm[f], pm[g]) == pm[x.then(f, g)];
            }
            for (int a = 0; ok && a < x.num_objects(); ++a)
                ok = y.ident[po[a]] == pm[x.ident[a]];
            if (ok)
                return true;
        } while (std::next_permutation(pm.begin(), pm.end()));
    } while (std::next_permutation(po.begin(), po.end()));
    return false;
}

// Brute force over all sortwise bijections; only for tiny inputs.
bool brute_iso(const DoubleCategory& x, const DoubleCategory& y)
{
    if (x.num_objects() != y.num_objects() || x.hor.num_morphisms() != y.hor.num_morphisms() ||
        x.ver.num_morphisms() != y.ver.num_morphisms() || x.num_squares() != y.num_squares())
        return false;
    std::vector<int> po(x.num_objects()), ph(x.hor.num_morphisms()), pv(x.ver.num_morphisms()), ps(x.num_squares());
    std::iota(po.begin(), po.end(), 0);
    do {
        std::iota(ph.begin(), ph.end(), 0);
        do {
            std::iota(pv.begin(), pv.end(), 0);
            do {
                std::iota(ps.begin(), ps.end(), 0);
                do {
                    auto px = std::make_shared<DoubleCategory>(x);
                    auto py = std::make_shared<DoubleCategory>(y);
                    DoubleFunctor f{px, py, po, ph, pv, ps};
                    if (validate(f).empty())
                        return true;
                } while (std::next_permutation(ps.begin(), ps.end()));
            } while (std::next_permutation(pv.begin(), pv.end()));
        } while (std::next_permutation(ph.begin(), ph.end()));
    } while (std::next_permutation(po.begin(), po.end()));
    return false;
}

double search_space(const DoubleCategory& d)
{
    auto fact = [](int n) {
        double r = 1;
        for (int i = 2; i <= n; ++i)
            r *= i;
        return r;
    };
    return fact(d.num_objects()) * fact(d.hor.num_morphisms()) * fact(d.ver.num_morphisms()) * fact(d.num_squares());
}

int count_components(const FinCategory& c)
{
    std::vector<int> comp(c.num_objects(), -1);
    int n = 0;
    for (int s = 0; s < c.num_objects(); ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> st{s};
        comp[s] = n;
        while (!st.empty()) {
            int a = st.back();
            st.pop_back();
            for (int f = 0; f < c.num_morphisms(); ++f) {
                int o = c.src[f] == a ? c.tgt[f] : c.tgt[f] == a ? c.src[f] : -1;
                if (o >= 0 && comp[o] < 0) {
                    comp[o] = n;
                    st.push_back(o);
                }
            }
        }
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("standard categories validate")
{
    for (auto c : {ordinal(0), ordinal(3), iso_category(), terminal_category(), fx::square_poset(),
                   coproduct(ordinal(1), iso_category()), opposite(ordinal(2)), discrete({"a", "b"})})
        CHECK(validate(c).empty());
    CHECK(ordinal(2).num_morphisms() == 6);
    CHECK(iso_category().num_morphisms() == 4);
}

TEST_CASE("category validator reports broken associativity")
{
    CategoryBuilder b;
    b.add_object("x");
    int e = b.add_morphism("e", 0, 0);
    int f = b.add_morphism("f", 0, 0);
    // e;e = f, e;f = e, f;e = f, f;f = e is unital but not associative
    b.set_then(e, e, f);
    b.set_then(e, f, e);
    b.set_then(f, e, f);
    b.set_then(f, f, e);
    auto c = b.build();
    auto d = validate(c);
    REQUIRE_FALSE(d.empty());
    CHECK(d.front().rfind("associativity", 0) == 0);
}

TEST_CASE("terminal double category is valid")
{
    auto t = terminal_double();
    CHECK(validate(t).empty());
    CHECK(t.num_objects() == 1);
    CHECK(t.num_squares() == 1);
}

TEST_CASE("broken interchange is reported with witnesses")
{
    auto d = validate(fx::broken_interchange());
    REQUIRE_FALSE(d.empty());
    for (auto& m : d)
        CHECK(m.rfind("interchange: ", 0) == 0);
}

TEST_CASE("serial and parallel validation agree")
{
    auto bad = fx::broken_interchange();
    CHECK(validate(bad, Exec::serial) == validate(bad, Exec::parallel));
    for (auto& [name, d] : fx::corpus()) {
        INFO(name);
        CHECK(validate(d, Exec::serial).empty());
        CHECK(validate(d, Exec::parallel).empty());
    }
}

TEST_CASE("external product shapes")
{
    auto p = external_product(ordinal(1), ordinal(1));
    CHECK(validate(p).empty());
    CHECK(p.num_objects() == 4);
    CHECK(p.num_squares() == 9);
    int full = 0;
    for (int a = 0; a < p.num_squares(); ++a)
        if (!p.hor.is_identity(p.top(a)) && !p.ver.is_identity(p.left[a]))
            ++full;
    CHECK(full == 1);

    CHECK(isomorphic(external_product(terminal_category(), terminal_category()), terminal_double()));

    auto q = external_product(ordinal(1), ordinal(2));
    CHECK(q.num_objects() == 6);
    // squares with nonidentity sides that are not a horizontal paste of two such squares
    int gens = 0;
    for (int a = 0; a < q.num_squares(); ++a) {
        if (q.hor.is_identity(q.top(a)) || q.ver.is_identity(q.left[a]))
            continue;
        bool decomposes = false;
        for (int x = 0; x < q.num_squares(); ++x)
            for (int y : q.with_left(q.right[x]))
                if (q.beside(x, y) == a && x != a && y != a)
                    decomposes = true;
        gens += !decomposes;
    }
    CHECK(gens == 2);
}

TEST_CASE("external product is functorial")
{
    auto c1 = fx::share(ordinal(1));
    auto c2 = fx::share(ordinal(2));
    auto fs = all_functors(c1, c2);
    auto gs = all_functors(c2, c1);
    auto id1 = identity_functor(c1);
    auto p11 = fx::share(external_product(*c1, *c1));
    auto p21 = fx::share(external_product(*c2, *c1));
    for (auto& f : fs)
        for (auto& g : gs) {
            auto fg = compose(f, g);
            auto lhs = external_product(fg, id1, p11, p11);
            auto a = external_product(f, id1, p11, p21);
            auto b = external_product(g, id1, p21, p11);
            CHECK(validate(a).empty());
            auto rhs = compose(a, b);
            CHECK(lhs.obj == rhs.obj);
            CHECK(lhs.hor == rhs.hor);
            CHECK(lhs.ver == rhs.ver);
            CHECK(lhs.sq == rhs.sq);
        }
}

TEST_CASE("transpose is an involution")
{
    for (auto& [name, d] : fx::corpus()) {
        INFO(name);
        auto t = transpose(d);
        CHECK(validate(t).empty());
        CHECK(transpose(t) == d);
    }
    CHECK(isomorphic(transpose(external_product(ordinal(1), ordinal(2))), external_product(ordinal(2), ordinal(1))));
    CHECK(transpose(embed_h(ordinal(2))) == embed_v(ordinal(2)));
}

TEST_CASE("embeddings and underlying categories")
{
    auto c = fx::square_poset();
    CHECK(underlying_v0(embed_v(c)) == c);
    CHECK(underlying_h0(embed_h(c)) == c);
    auto h = embed_h(ordinal(1));
    CHECK(h.num_objects() == 2);
    CHECK(h.hor.num_morphisms() - h.num_objects() == 1);
    CHECK(h.ver.num_morphisms() - h.num_objects() == 0);
    auto h0 = underlying_h0(external_product(ordinal(1), ordinal(2)));
    CHECK(h0.num_objects() == 6);
    CHECK(count_components(h0) == 2);
    CHECK(h0.num_morphisms() == 2 * ordinal(2).num_morphisms());
}

TEST_CASE("iso search")
{
    auto p = fx::share(external_product(ordinal(1), ordinal(1)));
    auto w = iso_search(p, p);
    REQUIRE(w);
    CHECK(validate(*w).empty());
    CHECK(iso_search(p, fx::share(transpose(*p))).has_value());
    CHECK_FALSE(isomorphic(embed_h(ordinal(1)), embed_v(ordinal(1))));
}

TEST_CASE("iso search agrees with brute force on categories")
{
    std::vector<FinCategory> cs{ordinal(0), ordinal(1), ordinal(2), iso_category(), opposite(ordinal(2)),
                                discrete({"a", "b"}), coproduct(ordinal(0), ordinal(1)), fx::square_poset()};
    for (auto& x : cs)
        for (auto& y : cs) {
            if (x.num_morphisms() > 8 || y.num_morphisms() > 8)
                continue;
            CHECK(isomorphic(x, y) == brute_iso(x, y));
        }
}

TEST_CASE("iso search agrees with brute force on small double categories")
{
    std::vector<DoubleCategory> ds;
    for (auto& [name, d] : fx::corpus())
        if (search_space(d) <= 2e5)
            ds.push_back(d);
    REQUIRE(ds.size() >= 4);
    for (auto& x : ds)
        for (auto& y : ds)
            CHECK(isomorphic(x, y) == brute_iso(x, y));
}

TEST_CASE("functor enumeration")
{
    auto c1 = fx::share(ordinal(1));
    auto c2 = fx::share(ordinal(2));
    CHECK(all_functors(c1, c1).size() == 3);
    // monotone maps [1] -> [2]
    CHECK(all_functors(c1, c2).size() == 6);
    CHECK(all_functors(fx::share(iso_category()), c1).size() == 2);
    for (auto& f : all_functors(c2, fx::share(iso_category())))
        CHECK(validate(f).empty());
}

TEST_CASE("hom double category")
{
    auto one = fx::share(terminal_double());
    for (auto& [name, e] : fx::corpus()) {
        if (e.num_squares() > 20)
            continue;
        INFO(name);
        auto E = fx::share(e);
        auto h = hom_double_category(one, E);
        CHECK(validate(h.dc).empty());
        CHECK(isomorphic(h.dc, e));
        CHECK(isomorphic(hom_double_category(E, one).dc, terminal_double()));
    }
    auto h1 = fx::share(embed_h(ordinal(1)));
    auto hh = hom_double_category(h1, h1);
    CHECK(hh.dc.num_objects() == 3);
    CHECK(validate(hh.dc).empty());
}

TEST_CASE("budget parsing")
{
    auto b = Budget::defaults();
    CHECK(b.max_cells > 0);
    CHECK(b.max_path > 0);
}
