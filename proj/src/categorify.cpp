#include "dbl/categorify.hpp"

#include <map>
#include <set>

#include "dbl/saturate.hpp"
#include "dbl/search.hpp"

namespace dbl {

namespace {

std::vector<int> key_of(const TruncationMorphism& g)
{
    std::vector<int> k;
    for (auto& f : g.level) {
        k.insert(k.end(), f.obj.begin(), f.obj.end());
        k.push_back(-1);
        k.insert(k.end(), f.mor.begin(), f.mor.end());
        k.push_back(-2);
    }
    return k;
}

std::vector<int> key_of(const DoubleFunctor& g)
{
    std::vector<int> k;
    for (auto* v : {&g.obj, &g.hor, &g.ver, &g.sq}) {
        k.insert(k.end(), v->begin(), v->end());
        k.push_back(-1);
    }
    return k;
}

// Level-2 part determined by the level-1 part: a 2-cell goes to the pair of its d2 and d0 faces.
std::optional<Functor> level2(const SimplicialTruncation& x, const SimplicialTruncation& nerve, const Functor& g1)
{
    std::map<std::vector<int>, int> oi, mi;
    for (int i = 0; i < int(nerve.obj_cells[2].size()); ++i)
        oi.emplace(nerve.obj_cells[2][i], i);
    for (int i = 0; i < int(nerve.mor_cells[2].size()); ++i)
        mi.emplace(nerve.mor_cells[2][i], i);
    Functor g{x.level[2], nerve.level[2], {}, {}};
    const auto& d0 = x.face[2][0];
    const auto& d2 = x.face[2][2];
    for (int t = 0; t < x.level[2]->num_objects(); ++t) {
        auto it = oi.find({g1.obj[d2.obj[t]], g1.obj[d0.obj[t]]});
        if (it == oi.end())
            return std::nullopt;
        g.obj.push_back(it->second);
    }
    for (int t = 0; t < x.level[2]->num_morphisms(); ++t) {
        auto it = mi.find({g1.mor[d2.mor[t]], g1.mor[d0.mor[t]]});
        if (it == mi.end())
            return std::nullopt;
        g.mor.push_back(it->second);
    }
    return g;
}

} // namespace

SSet2Trunc objects_of(const SCat2Trunc& x)
{
    int n = std::min(2, x.max_level());
    SimplicialTruncation r;
    for (int k = 0; k <= n; ++k)
        r.level.push_back(std::make_shared<const FinCategory>(discrete(x.level[k]->objects)));
    r.face.assign(n + 1, {});
    r.degen.assign(n + 1, {});
    auto op = [&](const Functor& f, int from, int to) { return Functor{r.level[from], r.level[to], f.obj, f.obj}; };
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            r.face[k].push_back(op(x.face[k][i], k, k - 1));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            r.degen[k].push_back(op(x.degen[k][i], k, k + 1));
    return r;
}

FundamentalCategory fundamental_category(const SSet2Trunc& x, const Budget& budget)
{
    if (x.max_level() < 1)
        throw Error(ErrorKind::invalid, "fundamental_category: needs levels 0 and 1");
    const auto& l0 = *x.level[0];
    const auto& l1 = *x.level[1];
    const auto& s0 = x.degen[0][0].obj;
    const auto& src = x.face[1][1].obj;
    const auto& tgt = x.face[1][0].obj;
    std::vector<int> degenerate_at(l1.num_objects(), -1), gen(l1.num_objects(), -1);
    for (int v = 0; v < l0.num_objects(); ++v)
        degenerate_at[s0[v]] = v;
    CatPresentation p;
    for (auto& o : l0.objects)
        p.add_object(o);
    for (int e = 0; e < l1.num_objects(); ++e)
        if (degenerate_at[e] < 0)
            gen[e] = p.add_gen(l1.objects[e], src[e], tgt[e]);
    auto path = [&](int e) { return gen[e] < 0 ? Path{src[e], {}} : Path{src[e], {gen[e]}}; };
    if (x.max_level() >= 2) {
        for (int t = 0; t < x.level[2]->num_objects(); ++t) {
            auto a = path(x.face[2][2].obj[t]);
            auto b = path(x.face[2][0].obj[t]);
            a.gens.insert(a.gens.end(), b.gens.begin(), b.gens.end());
            p.relate(a, path(x.face[2][1].obj[t]));
        }
    }
    auto sat = saturate(p, budget);
    FundamentalCategory r{std::move(sat.cat), {}};
    for (int e = 0; e < l1.num_objects(); ++e)
        r.edge_image.push_back(gen[e] < 0 ? r.cat.ident[src[e]] : sat.gen_image[gen[e]]);
    return r;
}

FundamentalDouble fundamental_double_category(const SCat2Trunc& x, const Budget& budget)
{
    if (x.max_level() < 2)
        throw Error(ErrorKind::invalid, "fundamental_double_category: needs levels 0 to 2");
    auto fc = fundamental_category(objects_of(x), budget);
    const auto& l0 = *x.level[0];
    const auto& l1 = *x.level[1];
    const auto& l2 = *x.level[2];
    SquarePresentation sp;
    sp.hor = fc.cat;
    sp.ver = l0;
    for (int a = 0; a < l1.num_morphisms(); ++a)
        sp.add_gen(l1.morphisms[a], {fc.edge_image[l1.src[a]], fc.edge_image[l1.tgt[a]], x.face[1][1].mor[a],
                                     x.face[1][0].mor[a]});
    for (int a = 0; a < l1.num_morphisms(); ++a)
        for (int b : l1.out(l1.tgt[a]))
            sp.relate(SqTerm::above(SqTerm::gen(a), SqTerm::gen(b)), SqTerm::gen(l1.then(a, b)));
    for (int t = 0; t < l2.num_morphisms(); ++t)
        sp.relate(SqTerm::beside(SqTerm::gen(x.face[2][2].mor[t]), SqTerm::gen(x.face[2][0].mor[t])),
                  SqTerm::gen(x.face[2][1].mor[t]));
    for (int j = 0; j < l0.num_morphisms(); ++j)
        sp.relate(SqTerm::ih(j), SqTerm::gen(x.degen[0][0].mor[j]));
    for (int f = 0; f < l1.num_objects(); ++f)
        sp.relate(SqTerm::iv(fc.edge_image[f]), SqTerm::gen(l1.ident[f]));
    auto sat = saturate(sp, budget);
    return {std::move(sat.dc), std::move(fc.edge_image), std::move(sat.gen_image)};
}

FundamentalDouble fundamental_double_category_v(const SCat2Trunc& x, const Budget& budget)
{
    auto r = fundamental_double_category(x, budget);
    r.dc = transpose(r.dc);
    return r;
}

TruncationMorphism adjunct(const FundamentalDouble& c, std::shared_ptr<const SCat2Trunc> x,
                           std::shared_ptr<const SimplicialTruncation> nerve, const DoubleFunctor& g)
{
    TruncationMorphism r{x, nerve, {}};
    r.level.push_back(Functor{x->level[0], nerve->level[0], g.obj, g.ver});
    Functor g1{x->level[1], nerve->level[1], {}, {}};
    for (int f : c.hor_image)
        g1.obj.push_back(g.hor[f]);
    for (int a : c.sq_image)
        g1.mor.push_back(g.sq[a]);
    auto g2 = level2(*x, *nerve, g1);
    if (!g2)
        throw Error(ErrorKind::invalid, "adjunct: image is not a composable pair");
    r.level.push_back(std::move(g1));
    r.level.push_back(std::move(*g2));
    return r;
}

std::optional<DoubleFunctor> adjunct(std::shared_ptr<const DoubleCategory> c, const FundamentalDouble& fc,
                                     std::shared_ptr<const DoubleCategory> d, const TruncationMorphism& g)
{
    std::vector<int> hor(c->hor.num_morphisms(), -1), sq(c->num_squares(), -1);
    const auto& g1 = g.level.at(1);
    for (std::size_t f = 0; f < fc.hor_image.size(); ++f) {
        int& h = hor[fc.hor_image[f]];
        if (h >= 0 && h != g1.obj[f])
            return std::nullopt;
        h = g1.obj[f];
    }
    for (std::size_t a = 0; a < fc.sq_image.size(); ++a) {
        int& s = sq[fc.sq_image[a]];
        if (s >= 0 && s != g1.mor[a])
            return std::nullopt;
        s = g1.mor[a];
    }
    auto r = extend_double_functor(c, d, g.level[0].obj, std::move(hor), g.level[0].mor, std::move(sq));
    if (r && !validate(*r).empty())
        return std::nullopt;
    return r;
}

std::vector<TruncationMorphism> all_truncation_morphisms(std::shared_ptr<const SCat2Trunc> x,
                                                         std::shared_ptr<const SimplicialTruncation> nerve,
                                                         const Budget& budget)
{
    std::vector<TruncationMorphism> out;
    auto g0s = all_functors(x->level[0], nerve->level[0], budget);
    if (g0s.empty())
        return out;
    auto g1s = all_functors(x->level[1], nerve->level[1], budget);
    auto same = [](const Functor& a, const Functor& b) { return a.obj == b.obj && a.mor == b.mor; };
    for (auto& g0 : g0s)
        for (auto& g1 : g1s) {
            bool ok = true;
            for (int i = 0; i <= 1 && ok; ++i)
                ok = same(compose(x->face[1][i], g0), compose(g1, nerve->face[1][i]));
            ok = ok && same(compose(x->degen[0][0], g1), compose(g0, nerve->degen[0][0]));
            if (!ok)
                continue;
            auto g2 = level2(*x, *nerve, g1);
            if (!g2)
                continue;
            TruncationMorphism t{x, nerve, {g0, g1, *g2}};
            if (validate(t).empty())
                out.push_back(std::move(t));
        }
    return out;
}

bool adjunction_bijection_check(const SCat2Trunc& x, const DoubleCategory& d, const Budget& budget)
{
    auto xt = std::make_shared<const SimplicialTruncation>(truncate(x, 2));
    auto fc = fundamental_double_category(*xt, budget);
    auto c = std::make_shared<const DoubleCategory>(fc.dc);
    auto dd = std::make_shared<const DoubleCategory>(d);
    auto nerve = std::make_shared<const SimplicialTruncation>(horizontal_nerve(d, 2));
    auto left = all_double_functors(c, dd, budget);
    auto right = all_truncation_morphisms(xt, nerve, budget);
    if (left.size() != right.size())
        return false;
    std::set<std::vector<int>> lkeys, rkeys, images;
    for (auto& g : left)
        lkeys.insert(key_of(g));
    for (auto& t : right)
        rkeys.insert(key_of(t));
    for (auto& g : left) {
        auto t = adjunct(fc, xt, nerve, g);
        if (!validate(t).empty() || !rkeys.count(key_of(t)))
            return false;
        auto back = adjunct(c, fc, dd, t);
        if (!back || key_of(*back) != key_of(g))
            return false;
        images.insert(key_of(t));
    }
    if (images.size() != right.size())
        return false;
    for (auto& t : right) {
        auto g = adjunct(c, fc, dd, t);
        if (!g || !lkeys.count(key_of(*g)) || key_of(adjunct(fc, xt, nerve, *g)) != key_of(t))
            return false;
    }
    return true;
}

DoubleFunctor counit(std::shared_ptr<const DoubleCategory> d, const Budget& budget)
{
    auto nerve = std::make_shared<const SimplicialTruncation>(horizontal_nerve(*d, 2));
    auto fc = fundamental_double_category(*nerve, budget);
    auto c = std::make_shared<const DoubleCategory>(fc.dc);
    TruncationMorphism id{nerve, nerve, {}};
    for (auto& l : nerve->level)
        id.level.push_back(identity_functor(l));
    auto g = adjunct(c, fc, d, id);
    if (!g)
        throw Error(ErrorKind::invalid, "counit: identity does not descend");
    return *g;
}

} // namespace dbl
