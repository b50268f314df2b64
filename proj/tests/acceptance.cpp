#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "arrange_support.hpp"
#include "categorify_support.hpp"
#include "colim_support.hpp"
#include "model_support.hpp"
#include "dbl/nerve.hpp"

using namespace dbl;
using fx::share;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

bool hom_bijective(const Functor& f)
{
    const FinCategory& a = *f.source;
    const FinCategory& b = *f.target;
    for (int x = 0; x < a.num_objects(); ++x)
        for (int y = 0; y < a.num_objects(); ++y) {
            std::set<int> img;
            for (int m : a.hom(x, y))
                img.insert(f.mor[m]);
            if (img.size() != a.hom(x, y).size() || img.size() != b.hom(f.obj[x], f.obj[y]).size())
                return false;
        }
    return true;
}

bool bijective(const Functor& f)
{
    auto perm = [](const std::vector<int>& v, int n) {
        return int(v.size()) == n && int(std::set<int>(v.begin(), v.end()).size()) == n;
    };
    return perm(f.obj, f.target->num_objects()) && perm(f.mor, f.target->num_morphisms());
}

void allowability(Outcome& o)
{
    auto subs = all_subdivisions(7);
    int mismatches = 0;
    for (auto& s : subs)
        if (is_allowable(s) != fx::merge_oracle(s))
            ++mismatches;
    o.require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
    o.require(!is_allowable(pinwheel()), "pinwheel accepted");
    int grids = 0;
    for (int c = 1; c <= 5; ++c)
        for (int r = 1; r <= 5; ++r, ++grids)
            o.require(is_allowable(grid(c, r)), "grid rejected");
    o.detail << subs.size() << " subdivisions, " << mismatches << " mismatches, " << grids << " grids";
}

void any_cut(Outcome& o)
{
    std::mt19937 rng(2026);
    int cuts = 0, bad = 0;
    for (int i = 0; i < 200; ++i) {
        auto s = random_allowable(1 + i % 9, rng);
        o.require(is_allowable(s), "generator produced a non-allowable subdivision");
        auto check = [&](const std::pair<Subdivision, Subdivision>& p) {
            ++cuts;
            if (!is_allowable(p.first) || !is_allowable(p.second))
                ++bad;
        };
        for (int y : full_horizontal_cuts(s))
            check(split_horizontal(s, y));
        for (int x : full_vertical_cuts(s))
            check(split_vertical(s, x));
    }
    o.require(bad == 0, std::to_string(bad) + " counterexamples");
    o.detail << cuts << " cuts, " << bad << " counterexamples";
}

void determinism(Outcome& o)
{
    auto d = commutative_squares(product(ordinal(3), ordinal(3)));
    std::mt19937 rng(3);
    std::size_t trees = 0;
    for (int i = 0; i < 100; ++i) {
        auto s = random_allowable(1 + i % 9, rng);
        auto a = fx::poset_arrangement(d, 3, s, rng);
        o.require(validate(a, d).empty(), "invalid arrangement");
        int c = compose_arrangement(d, a);
        for (auto& t : all_binary_cut_trees(s)) {
            ++trees;
            o.require(fold(d, a, t) == c, "cut trees disagree");
        }
    }
    o.detail << "100 arrangements, " << trees << " cut trees";
}

struct PushoutFixture {
    std::string name;
    FullInclusion inc;
    std::shared_ptr<const FinCategory> c;
    fx::PushoutCase target;
};

std::vector<PushoutFixture> pushout_fixtures()
{
    std::vector<PushoutFixture> r;
    std::vector<std::string> names{"point-into-I", "horn(1,0)", "horn(1,1)", "horn(2,0)", "horn(2,1)", "horn(2,2)"};
    auto incs = fx::supported_inclusions();
    for (std::size_t j = 0; j < incs.size(); ++j)
        for (int n = 0; n <= 2; ++n) {
            auto c = share(ordinal(n));
            for (auto& t : fx::pushout_targets(incs[j], c))
                r.push_back({names[j] + " C=[" + std::to_string(n) + "] " + t.name, incs[j], c, t});
        }
    return r;
}

void pushout_formula(Outcome& o)
{
    int n = 0;
    for (auto& p : pushout_fixtures()) {
        auto formula = pushout_dblcat_formula(p.inc, p.c, p.target.f);
        auto engine = colimit_dblcat(pushout_diagram(p.inc, p.c, p.target.f));
        const auto& d = *p.target.f.target;
        int expected = d.num_objects() + (p.inc.b->num_objects() - p.inc.a->num_objects()) * p.c->num_objects();
        o.require(formula.apex->num_objects() == expected, p.name + ": object count");
        o.require(iso_search(formula.apex, engine.apex).has_value(), p.name + ": formula and engine differ");
        ++n;
    }
    auto inc = point_into_I();
    auto c0 = share(ordinal(0));
    auto r = pushout_dblcat_formula(inc, c0, to_terminal(share(external_product(*inc.a, *c0))));
    o.require(r.apex->num_objects() == 2, "point-into-I over the terminal target");
    o.detail << n << " fixtures; point-into-I, C=[0], D=1 has " << r.apex->num_objects() << " objects";
}

void nerve_pushout(Outcome& o)
{
    const int top = 3;
    int maps = 0;
    for (auto& p : pushout_fixtures()) {
        auto diag = pushout_diagram(p.inc, p.c, p.target.f);
        auto formula = pushout_dblcat_formula(p.inc, p.c, p.target.f);
        std::vector<std::shared_ptr<const SimplicialTruncation>> nodes;
        for (auto& d : diag.nodes)
            nodes.push_back(share(horizontal_nerve(*d, top)));
        auto np = share(horizontal_nerve(*formula.apex, top));
        const Functor* i = nullptr;
        const Functor* f = nullptr;
        std::vector<TruncationMorphism> legs, arrows;
        for (int u = 0; u < diag.index.num_morphisms(); ++u)
            arrows.push_back(horizontal_nerve(diag.arrows[u], nodes[diag.index.src[u]], nodes[diag.index.tgt[u]]));
        for (int x = 0; x < 3; ++x)
            legs.push_back(horizontal_nerve(formula.cocone[x], nodes[x], np));
        for (int k = 0; k <= top; ++k) {
            for (int u = 0; u < diag.index.num_morphisms(); ++u) {
                if (diag.index.is_identity(u))
                    continue;
                (diag.index.morphisms[u] == "i" ? i : f) = &arrows[u].level[k];
            }
            auto col = colimit_cat(span_diagram(*i, *f));
            std::vector<Functor> cocone;
            for (int x = 0; x < 3; ++x)
                cocone.push_back(legs[x].level[k]);
            auto m = mediating_functor(col, cocone);
            o.require(m.has_value(), p.name + ": no mediating functor at level " + std::to_string(k));
            if (!m)
                continue;
            o.require(bijective(*m), p.name + ": comparison not bijective at level " + std::to_string(k));
            if (k == 2)
                o.require(hom_bijective(*m), p.name + ": comparison not fully faithful at level 2");
            ++maps;
        }
    }
    o.detail << maps << " levelwise comparisons are isomorphisms";
}

void categorification(Outcome& o)
{
    int checks = 0;
    for (auto& f : fx::simplicial_fixtures()) {
        auto r = fundamental_double_category(f.x);
        o.require(validate(r.dc).empty() && isomorphic(r.dc, embed_h(f.c)), "c_h of " + f.name);
        ++checks;
    }
    std::vector<std::pair<std::string, FinCategory>> as{
        {"[1]", ordinal(1)}, {"I", iso_category()}, {"[1]x[1]", fx::square_poset()}};
    for (auto& [name, a] : as)
        for (int n = 0; n <= 2; ++n) {
            auto x = product(constant_truncation(a, 2), simplicial_set(delta(n), 2));
            auto r = fundamental_double_category(x);
            o.require(isomorphic(r.dc, external_product(a, ordinal(n))), "c_h of sigma " + name + " x delta");
            ++checks;
        }
    std::vector<std::pair<SimplicialTruncation, DoubleCategory>> pairs{
        {constant_truncation(ordinal(1), 2), embed_v(ordinal(1))},
        {constant_truncation(discrete({}), 2), embed_v(ordinal(1))},
        {simplicial_set(delta(1), 2), embed_h(ordinal(1))},
        {simplicial_set(boundary(2), 2), embed_h(ordinal(2))},
        {simplicial_set(horn(2, 0), 2), external_product(ordinal(1), ordinal(1))},
        {product(constant_truncation(ordinal(1), 2), simplicial_set(delta(1), 2)),
         external_product(iso_category(), ordinal(1))},
        {horizontal_nerve(external_product(ordinal(1), ordinal(1)), 2), commutative_squares(ordinal(1))},
        {simplicial_set(delta(2), 2), embed_h(iso_category())},
        {simplicial_set(horn(2, 1), 2), external_product(ordinal(1), ordinal(1))},
        {constant_truncation(iso_category(), 2), embed_v(iso_category())},
    };
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        o.require(adjunction_bijection_check(pairs[j].first, pairs[j].second),
                  "adjunction pair " + std::to_string(j));
        ++checks;
    }
    for (auto& [name, d] : fx::corpus()) {
        o.require(fx::bijective(counit(share(d))), "counit on " + name);
        ++checks;
    }
    o.detail << checks << " checks";
}

void coskeletal(Outcome& o)
{
    int n = 0;
    for (auto& [name, d] : fx::corpus())
        for (int level : {3, 4}) {
            o.require(check_2coskeletal(d, level), name + " at level " + std::to_string(level));
            ++n;
        }
    o.detail << n << " checks";
}

void topology_suite(Outcome& o)
{
    std::vector<std::shared_ptr<const FinCategory>> cats = {
        share(terminal_category()), share(ordinal(1)), share(ordinal(2)), share(iso_category()),
        share(fx::square_poset()), share(discrete({"a", "b"})), share(coproduct(ordinal(1), iso_category())),
        share(fx::free_dag(3, {{0, 1}, {0, 1}, {1, 2}}))};
    std::mt19937 rng(20261017);
    int tested = 0;
    while (tested < 50) {
        auto a = cats[rng() % cats.size()];
        auto b = cats[rng() % cats.size()];
        auto fs = all_functors(a, b);
        if (fs.empty())
            continue;
        auto& f = fs[rng() % fs.size()];
        auto tp = is_epi(f, Topology::tau_prime);
        auto t = is_epi(f, Topology::tau);
        o.require(verify_witness(f, Topology::tau_prime, tp) && verify_witness(f, Topology::tau, t),
                  "epi witness rejected");
        o.require(!tp.holds || t.holds, "tau'-epi that is not tau-epi");
        ++tested;
    }

    auto docs = fx::small_corpus(4);
    int n = int(docs.size());
    std::vector<std::vector<std::vector<DoubleFunctor>>> fun(n, std::vector<std::vector<DoubleFunctor>>(n));
    std::vector<std::vector<std::vector<std::pair<bool, bool>>>> we(n, std::vector<std::vector<std::pair<bool, bool>>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fun[i][j] = all_double_functors(docs[i].second, docs[j].second);
            for (auto& f : fun[i][j]) {
                bool a = is_weak_equivalence(f, Topology::tau), b = is_weak_equivalence(f, Topology::tau_prime);
                o.require(!b || a, "we(tau') not contained in we(tau)");
                we[i][j].push_back({a, b});
            }
        }
    long pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (std::size_t x = 0; x < fun[i][j].size(); ++x)
                    for (std::size_t y = 0; y < fun[j][k].size(); ++y) {
                        auto fg = compose(fun[i][j][x], fun[j][k][y]);
                        auto [fa, fb] = we[i][j][x];
                        auto [ga, gb] = we[j][k][y];
                        bool ca = is_weak_equivalence(fg, Topology::tau);
                        bool cb = is_weak_equivalence(fg, Topology::tau_prime);
                        o.require(int(fa) + int(ga) + int(ca) != 2, "2-out-of-3 fails for tau");
                        o.require(int(fb) + int(gb) + int(cb) != 2, "2-out-of-3 fails for tau'");
                        ++pairs;
                    }
    int trivial = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (auto& f : fun[i][j]) {
                o.require(is_weak_equivalence(f, Topology::trivial) == fx::brute_equivalence(f),
                          "trivial we differs from brute force on " + docs[i].first + " -> " + docs[j].first);
                ++trivial;
            }
    o.detail << tested << " random functors, " << pairs << " composable pairs, " << trivial
             << " trivial-topology comparisons";
}

void fibrancy(Outcome& o)
{
    int n = 0;
    for (auto& [name, d] : fx::corpus())
        for (auto t : {Topology::tau, Topology::tau_prime, Topology::trivial}) {
            o.require(is_fibration(to_terminal(share(d)), t), name + " -> 1 under " + to_string(t));
            ++n;
        }
    std::vector<std::pair<std::string, FinCategory>> bases{
        {"V[1]", ordinal(1)},
        {"V([1]x[1])", fx::square_poset()},
        {"V(dag a)", fx::free_dag(3, {{0, 1}, {1, 2}, {0, 2}})},
        {"V(dag b)", fx::free_dag(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})},
        {"V(dag c)", fx::free_dag(3, {{0, 1}, {0, 1}, {1, 2}})},
    };
    for (auto& [name, c] : bases) {
        auto b = share(embed_v(c));
        auto r = cofibrant_replacement(b, Topology::tau_prime);
        o.require(r.materialized, name + " replacement not materialized");
        if (!r.materialized)
            continue;
        o.require(is_fully_faithful(r.k), name + ": K not fully faithful");
        o.require(is_epi(functor_v(r.k), Topology::tau_prime).holds, name + ": K0 not tau'-epi");
        o.require(is_free_on_graph(r.e->ver), name + ": E not free");
        ++n;
    }
    o.require(is_cofibrant(embed_v(iso_category()), Topology::tau_prime) == Tri::no, "VI cofibrant");
    o.require(is_cofibrant(embed_v(ordinal(1)), Topology::tau_prime) == Tri::yes, "V[1] not cofibrant");
    o.detail << n << " fibrancy and replacement checks";
}

void no_reedy(Outcome& o)
{
    o.require(!segal_pseudo_comparison(fx::no_reedy()), "four-object fixture accepted");
    o.require(segal_pseudo_comparison(external_product(ordinal(1), ordinal(1))), "[1]x[1] rejected");
    int n = 0;
    for (auto& [name, d] : fx::corpus()) {
        bool only_identities = true;
        for (int v = 0; v < d.ver.num_morphisms(); ++v)
            if (!d.ver.is_identity(v) && fx::brute_iso(d.ver, v))
                only_identities = false;
        if (!only_identities)
            continue;
        o.require(segal_pseudo_comparison(d), name + " rejected");
        ++n;
    }
    o.detail << n << " corpus members with identity-only vertical isos";
}

// Chains of the face poset, by enumerating every subset of simplices.
long chains_by_subsets(const std::vector<std::vector<int>>& simp)
{
    auto below = [](const std::vector<int>& a, const std::vector<int>& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    int n = int(simp.size());
    long count = 0;
    for (long mask = 1; mask < (1L << n); ++mask) {
        bool chain = true;
        for (int a = 0; a < n && chain; ++a)
            for (int b = a + 1; b < n && chain; ++b)
                if ((mask >> a & 1) && (mask >> b & 1))
                    chain = below(simp[a], simp[b]) || below(simp[b], simp[a]);
        count += chain;
    }
    return count;
}

void sd2_sizes(Outcome& o)
{
    auto d1 = csd2(delta(1));
    o.require(d1.num_objects() == 5, "csd2(delta(1)) objects");
    o.require(d1.num_morphisms() - d1.num_objects() == 4, "csd2(delta(1)) nonidentity morphisms");
    for (auto x : {horn(1, 0), delta(0)}) {
        auto c = csd2(x);
        o.require(c.num_objects() == 1 && c.num_morphisms() == 1, "csd2 not terminal");
    }
    long oracle = chains_by_subsets(delta(2).simplices());
    auto d2 = csd2(delta(2));
    o.require(d2.num_objects() == oracle, "csd2(delta(2)) count");
    auto start = std::chrono::steady_clock::now();
    for (int m = 0; m <= 3; ++m) {
        csd2(delta(m));
        if (m == 0)
            continue;
        csd2(boundary(m));
        for (int k = 0; k <= m; ++k)
            csd2(horn(m, k));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 60, "m <= 3 took too long");
    o.detail << "csd2(delta(2)) has " << d2.num_objects() << " objects, oracle " << oracle << "; m <= 3 in " << secs
             << " s";
}

void filtered(Outcome& o)
{
    std::vector<std::pair<std::string, std::vector<std::shared_ptr<const DoubleCategory>>>> chains;
    std::vector<std::shared_ptr<const DoubleCategory>> h, v, p;
    for (int n = 0; n <= 2; ++n) {
        h.push_back(share(embed_h(ordinal(n))));
        v.push_back(share(embed_v(ordinal(n))));
        p.push_back(share(external_product(ordinal(1), ordinal(n))));
    }
    chains = {{"H[0..2]", h}, {"V[0..2]", v}, {"[1]x[0..2]", p}};
    auto index = ordinal(2);
    const int top = 3;
    for (auto& [name, nodes] : chains) {
        DblDiagram d{index, nodes, {}};
        for (int u = 0; u < index.num_morphisms(); ++u)
            d.arrows.push_back(fx::inclusion_by_name(nodes[index.src[u]], nodes[index.tgt[u]]));
        auto fast = filtered_colimit_dblcat(d);
        auto slow = colimit_dblcat(d);
        o.require(validate(*fast.apex).empty(), name + ": invalid colimit");
        o.require(isomorphic(*fast.apex, *slow.apex), name + ": fast path differs from the engine");
        std::vector<std::shared_ptr<const SimplicialTruncation>> nn;
        for (auto& x : nodes)
            nn.push_back(share(horizontal_nerve(*x, top)));
        std::vector<TruncationMorphism> na;
        for (int u = 0; u < index.num_morphisms(); ++u)
            na.push_back(horizontal_nerve(d.arrows[u], nn[index.src[u]], nn[index.tgt[u]]));
        auto nc = horizontal_nerve(*fast.apex, top);
        for (int k = 0; k <= top; ++k) {
            CatDiagram dk{index, {}, {}};
            for (auto& x : nn)
                dk.nodes.push_back(x->level[k]);
            for (auto& a : na)
                dk.arrows.push_back(a.level[k]);
            auto col = colimit_cat(dk);
            o.require(isomorphic(*col.apex, *nc.level[k]), name + ": nerve does not commute at level " +
                                                              std::to_string(k));
        }
    }
    o.detail << chains.size() << " chains, levels 0-" << top;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"allowability oracle", allowability},
        {"any-cut halves", any_cut},
        {"composition determinism", determinism},
        {"pushout formula vs engine", pushout_formula},
        {"nerve preserves pushouts", nerve_pushout},
        {"categorification laws", categorification},
        {"2-coskeletality", coskeletal},
        {"topology predicates", topology_suite},
        {"fibrancy and replacement", fibrancy},
        {"Segal comparison", no_reedy},
        {"Sd2 sizes", sd2_sizes},
        {"filtered colimits", filtered},
    };
    int failed = 0;
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[j].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("%s %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", j + 1, criteria[j].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
