#include "dbl/colim.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "union_find.hpp"

namespace dbl {

using detail::UnionFind;

std::vector<std::string> validate(const SchemeMorphism& m)
{
    const auto &s = *m.source, &t = *m.target;
    std::vector<std::string> d;
    if (int(m.obj.size()) != s.hor.num_objects() || int(m.hor.size()) != s.hor.num_morphisms() ||
        int(m.ver.size()) != s.ver.num_morphisms() || m.sq.size() != s.squares.size())
        return {"shape: component tables do not match the source"};
    Functor h{std::shared_ptr<const FinCategory>(m.source, &s.hor), std::shared_ptr<const FinCategory>(m.target, &t.hor),
              m.obj, m.hor};
    Functor v{std::shared_ptr<const FinCategory>(m.source, &s.ver), std::shared_ptr<const FinCategory>(m.target, &t.ver),
              m.obj, m.ver};
    for (auto& x : validate(h))
        d.push_back("horizontal: " + x);
    for (auto& x : validate(v))
        d.push_back("vertical: " + x);
    if (!d.empty())
        return d;
    for (std::size_t a = 0; a < s.squares.size(); ++a) {
        auto& b = s.boundary[a];
        Boundary want{m.hor[b.top], m.hor[b.bottom], m.ver[b.left], m.ver[b.right]};
        if (m.sq[a] < 0 || m.sq[a] >= int(t.squares.size()) || t.boundary[m.sq[a]] != want)
            d.push_back("square " + s.squares[a] + ": boundary not preserved");
    }
    return d;
}

namespace {

template <class Node, class Arrow>
std::vector<std::string> validate_shape(const Diagram<Node, Arrow>& d)
{
    std::vector<std::string> r;
    for (auto& x : validate(d.index))
        r.push_back("index: " + x);
    if (!r.empty())
        return r;
    if (int(d.nodes.size()) != d.index.num_objects())
        return {"shape: one node per index object required"};
    if (int(d.arrows.size()) != d.index.num_morphisms())
        return {"shape: one arrow per index morphism required"};
    for (int u = 0; u < d.index.num_morphisms(); ++u) {
        auto& a = d.arrows[u];
        auto name = d.index.morphisms[u];
        if (a.source.get() != d.nodes[d.index.src[u]].get() || a.target.get() != d.nodes[d.index.tgt[u]].get()) {
            if (!a.source || !a.target || !(*a.source == *d.nodes[d.index.src[u]]) ||
                !(*a.target == *d.nodes[d.index.tgt[u]]))
                r.push_back("arrow " + name + ": endpoints do not match its nodes");
        }
    }
    return r;
}

bool same(const DoubleDerivationScheme& a, const DoubleDerivationScheme& b)
{
    return a.hor == b.hor && a.ver == b.ver && a.squares == b.squares && a.boundary == b.boundary;
}

std::vector<std::string> validate_shape(const DdsDiagram& d)
{
    std::vector<std::string> r;
    for (auto& x : validate(d.index))
        r.push_back("index: " + x);
    if (!r.empty())
        return r;
    if (int(d.nodes.size()) != d.index.num_objects())
        return {"shape: one node per index object required"};
    if (int(d.arrows.size()) != d.index.num_morphisms())
        return {"shape: one arrow per index morphism required"};
    for (int u = 0; u < d.index.num_morphisms(); ++u) {
        auto& a = d.arrows[u];
        if (!a.source || !a.target || !same(*a.source, *d.nodes[d.index.src[u]]) ||
            !same(*a.target, *d.nodes[d.index.tgt[u]]))
            r.push_back("arrow " + d.index.morphisms[u] + ": endpoints do not match its nodes");
    }
    return r;
}

// Functoriality of the node assignment: identities go to identity maps and composites
// to composites.
template <class Arrow, class Compose, class IsId>
void check_functoriality(const FinCategory& index, const std::vector<Arrow>& arrows, Compose compose, IsId is_id,
                         std::vector<std::string>& r)
{
    for (int u = 0; u < index.num_morphisms(); ++u)
        if (index.is_identity(u) && !is_id(arrows[u]))
            r.push_back("arrow " + index.morphisms[u] + ": identity index morphism must map to an identity");
    for (int u = 0; u < index.num_morphisms(); ++u)
        for (int v : index.out(index.tgt[u]))
            if (!compose(arrows[u], arrows[v], arrows[index.then(u, v)]))
                r.push_back("arrows " + index.morphisms[u] + ", " + index.morphisms[v] + ": composite not preserved");
}

} // namespace

std::vector<std::string> validate(const CatDiagram& d)
{
    auto r = validate_shape(d);
    if (!r.empty())
        return r;
    for (auto& a : d.arrows)
        for (auto& x : validate(a))
            r.push_back(x);
    if (!r.empty())
        return r;
    check_functoriality(
        d.index, d.arrows,
        [](const Functor& f, const Functor& g, const Functor& h) {
            auto c = compose(f, g);
            return c.obj == h.obj && c.mor == h.mor;
        },
        [](const Functor& f) {
            for (int a = 0; a < f.source->num_objects(); ++a)
                if (f.obj[a] != a)
                    return false;
            for (int m = 0; m < f.source->num_morphisms(); ++m)
                if (f.mor[m] != m)
                    return false;
            return true;
        },
        r);
    return r;
}

std::vector<std::string> validate(const DdsDiagram& d)
{
    auto r = validate_shape(d);
    if (!r.empty())
        return r;
    for (auto& a : d.arrows)
        for (auto& x : validate(a))
            r.push_back(x);
    if (!r.empty())
        return r;
    check_functoriality(
        d.index, d.arrows,
        [](const SchemeMorphism& f, const SchemeMorphism& g, const SchemeMorphism& h) {
            auto map = [](const std::vector<int>& x, const std::vector<int>& y) {
                std::vector<int> z;
                for (int v : x)
                    z.push_back(y[v]);
                return z;
            };
            return map(f.obj, g.obj) == h.obj && map(f.hor, g.hor) == h.hor && map(f.ver, g.ver) == h.ver &&
                   map(f.sq, g.sq) == h.sq;
        },
        [](const SchemeMorphism& f) {
            auto id = [](const std::vector<int>& x) {
                for (int i = 0; i < int(x.size()); ++i)
                    if (x[i] != i)
                        return false;
                return true;
            };
            return id(f.obj) && id(f.hor) && id(f.ver) && id(f.sq);
        },
        r);
    return r;
}

std::vector<std::string> validate(const DblDiagram& d)
{
    auto r = validate_shape(d);
    if (!r.empty())
        return r;
    for (auto& a : d.arrows)
        for (auto& x : validate(a))
            r.push_back(x);
    if (!r.empty())
        return r;
    check_functoriality(
        d.index, d.arrows,
        [](const DoubleFunctor& f, const DoubleFunctor& g, const DoubleFunctor& h) {
            auto c = compose(f, g);
            return c.obj == h.obj && c.hor == h.hor && c.ver == h.ver && c.sq == h.sq;
        },
        [](const DoubleFunctor& f) {
            auto id = [](const std::vector<int>& x) {
                for (int i = 0; i < int(x.size()); ++i)
                    if (x[i] != i)
                        return false;
                return true;
            };
            return id(f.obj) && id(f.hor) && id(f.ver) && id(f.sq);
        },
        r);
    return r;
}

namespace {

// Qualified names per node: the first node using a local name keeps it.
std::vector<std::vector<Id>> qualified(const FinCategory& index, const std::vector<const std::vector<Id>*>& local)
{
    std::set<Id> used;
    std::vector<std::vector<Id>> out(local.size());
    for (std::size_t n = 0; n < local.size(); ++n) {
        std::set<Id> mine;
        for (auto& x : *local[n]) {
            if (!used.count(x)) {
                out[n].push_back(x);
                mine.insert(x);
            } else
                out[n].push_back(index.objects[n] + ":" + x);
        }
        used.insert(mine.begin(), mine.end());
    }
    return out;
}

// Elements of all nodes laid out consecutively, classes ordered by least member.
struct Glued {
    std::vector<int> offset;
    UnionFind uf;
    std::vector<int> cls; // global element -> class
    std::vector<int> rep; // class -> least global element
    int node_of(int g) const { return int(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin()) - 1; }

    explicit Glued(const std::vector<int>& sizes) : offset(sizes.size() + 1, 0)
    {
        for (std::size_t n = 0; n < sizes.size(); ++n)
            offset[n + 1] = offset[n] + sizes[n];
        uf = UnionFind(offset.back());
    }
    void unite(int n, int a, int m, int b) { uf.unite(offset[n] + a, offset[m] + b); }
    void finish()
    {
        cls.assign(uf.size(), -1);
        for (int g = 0; g < uf.size(); ++g) {
            int r = uf.find(g);
            if (r == g) {
                cls[g] = int(rep.size());
                rep.push_back(g);
            } else
                cls[g] = cls[r];
        }
    }
    int of(int n, int a) const { return cls[offset[n] + a]; }
};

template <class T>
std::shared_ptr<const FinCategory> alias(const std::shared_ptr<const T>& p, const FinCategory& c)
{
    return std::shared_ptr<const FinCategory>(p, &c);
}

} // namespace

CatColimit colimit_cat(const CatDiagram& d, const Budget& budget)
{
    auto diag = validate(d);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    int nn = int(d.nodes.size());
    std::vector<int> sizes;
    std::vector<const std::vector<Id>*> on, mn;
    for (auto& n : d.nodes) {
        sizes.push_back(n->num_objects());
        on.push_back(&n->objects);
        mn.push_back(&n->morphisms);
    }
    Glued objs(sizes);
    for (int u = 0; u < d.index.num_morphisms(); ++u)
        for (int a = 0; a < d.nodes[d.index.src[u]]->num_objects(); ++a)
            objs.unite(d.index.src[u], a, d.index.tgt[u], d.arrows[u].obj[a]);
    objs.finish();
    auto oname = qualified(d.index, on), mname = qualified(d.index, mn);

    CatPresentation p;
    for (int g : objs.rep) {
        int n = objs.node_of(g), a = g - objs.offset[n];
        p.add_object(oname[n][a], mname[n][d.nodes[n]->ident[a]]);
    }
    std::vector<std::vector<int>> gen(nn);
    for (int n = 0; n < nn; ++n) {
        auto& c = *d.nodes[n];
        gen[n].assign(c.num_morphisms(), -1);
        for (int m = 0; m < c.num_morphisms(); ++m)
            if (!c.is_identity(m))
                gen[n][m] = p.add_gen(mname[n][m], objs.of(n, c.src[m]), objs.of(n, c.tgt[m]));
    }
    auto path = [&](int n, int m) {
        Path w{objs.of(n, d.nodes[n]->src[m]), {}};
        if (gen[n][m] >= 0)
            w.gens.push_back(gen[n][m]);
        return w;
    };
    for (int n = 0; n < nn; ++n) {
        auto& c = *d.nodes[n];
        for (int f = 0; f < c.num_morphisms(); ++f)
            for (int g : c.out(c.tgt[f]))
                if (gen[n][f] >= 0 && gen[n][g] >= 0)
                    p.relate({objs.of(n, c.src[f]), {gen[n][f], gen[n][g]}}, path(n, c.then(f, g)));
    }
    for (int u = 0; u < d.index.num_morphisms(); ++u) {
        if (d.index.is_identity(u))
            continue;
        int s = d.index.src[u], t = d.index.tgt[u];
        for (int m = 0; m < d.nodes[s]->num_morphisms(); ++m)
            if (gen[s][m] >= 0)
                p.relate(path(s, m), path(t, d.arrows[u].mor[m]));
    }
    auto sat = saturate(p, budget);
    CatColimit r;
    auto apex = std::make_shared<FinCategory>(std::move(sat.cat));
    r.apex = apex;
    for (int n = 0; n < nn; ++n) {
        auto& c = *d.nodes[n];
        Functor f{d.nodes[n], apex, {}, {}};
        for (int a = 0; a < c.num_objects(); ++a)
            f.obj.push_back(objs.of(n, a));
        for (int m = 0; m < c.num_morphisms(); ++m)
            f.mor.push_back(gen[n][m] >= 0 ? sat.gen_image[gen[n][m]] : apex->ident[objs.of(n, c.src[m])]);
        r.cocone.push_back(std::move(f));
    }
    return r;
}

namespace {

template <class Node, class Arrow, class Part>
CatDiagram part_diagram(const Diagram<Node, Arrow>& d, Part part)
{
    CatDiagram c;
    c.index = d.index;
    for (auto& n : d.nodes)
        c.nodes.push_back(alias(n, part.cat(*n)));
    for (int u = 0; u < d.index.num_morphisms(); ++u)
        c.arrows.push_back({c.nodes[d.index.src[u]], c.nodes[d.index.tgt[u]], d.arrows[u].obj, part.mor(d.arrows[u])});
    return c;
}

struct HorPart {
    const FinCategory& cat(const DoubleDerivationScheme& s) const { return s.hor; }
    const FinCategory& cat(const DoubleCategory& s) const { return s.hor; }
    template <class A>
    const std::vector<int>& mor(const A& a) const { return a.hor; }
};
struct VerPart {
    const FinCategory& cat(const DoubleDerivationScheme& s) const { return s.ver; }
    const FinCategory& cat(const DoubleCategory& s) const { return s.ver; }
    template <class A>
    const std::vector<int>& mor(const A& a) const { return a.ver; }
};

} // namespace

DdsColimit colimit_dds(const DdsDiagram& d, const Budget& budget)
{
    auto diag = validate(d);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    auto hc = colimit_cat(part_diagram(d, HorPart{}), budget);
    auto vc = colimit_cat(part_diagram(d, VerPart{}), budget);
    int nn = int(d.nodes.size());
    std::vector<int> sizes;
    std::vector<const std::vector<Id>*> sn;
    for (auto& n : d.nodes) {
        sizes.push_back(int(n->squares.size()));
        sn.push_back(&n->squares);
    }
    Glued sq(sizes);
    for (int u = 0; u < d.index.num_morphisms(); ++u)
        for (std::size_t a = 0; a < d.nodes[d.index.src[u]]->squares.size(); ++a)
            sq.unite(d.index.src[u], int(a), d.index.tgt[u], d.arrows[u].sq[a]);
    sq.finish();
    auto names = qualified(d.index, sn);
    auto s = std::make_shared<DoubleDerivationScheme>();
    s->hor = *hc.apex;
    s->ver = *vc.apex;
    for (int g : sq.rep) {
        int n = sq.node_of(g), a = g - sq.offset[n];
        auto& b = d.nodes[n]->boundary[a];
        s->squares.push_back(names[n][a]);
        s->boundary.push_back({hc.cocone[n].mor[b.top], hc.cocone[n].mor[b.bottom], vc.cocone[n].mor[b.left],
                               vc.cocone[n].mor[b.right]});
    }
    DdsColimit r;
    r.apex = s;
    for (int n = 0; n < nn; ++n) {
        SchemeMorphism m{d.nodes[n], s, hc.cocone[n].obj, hc.cocone[n].mor, vc.cocone[n].mor, {}};
        for (std::size_t a = 0; a < d.nodes[n]->squares.size(); ++a)
            m.sq.push_back(sq.of(n, int(a)));
        r.cocone.push_back(std::move(m));
    }
    return r;
}

DblColimit colimit_dblcat(const DblDiagram& d, const Budget& budget)
{
    auto diag = validate(d);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    auto hc = colimit_cat(part_diagram(d, HorPart{}), budget);
    auto vc = colimit_cat(part_diagram(d, VerPart{}), budget);
    int nn = int(d.nodes.size());
    std::vector<int> sizes;
    std::vector<const std::vector<Id>*> sn;
    for (auto& n : d.nodes) {
        sizes.push_back(n->num_squares());
        sn.push_back(&n->squares());
    }
    Glued sq(sizes);
    for (int u = 0; u < d.index.num_morphisms(); ++u)
        for (int a = 0; a < d.nodes[d.index.src[u]]->num_squares(); ++a)
            sq.unite(d.index.src[u], a, d.index.tgt[u], d.arrows[u].sq[a]);
    sq.finish();
    auto names = qualified(d.index, sn);

    SquarePresentation p;
    p.hor = *hc.apex;
    p.ver = *vc.apex;
    std::vector<int> gen;
    for (int g : sq.rep) {
        int n = sq.node_of(g), a = g - sq.offset[n];
        auto b = d.nodes[n]->boundary(a);
        gen.push_back(p.add_gen(names[n][a], {hc.cocone[n].mor[b.top], hc.cocone[n].mor[b.bottom],
                                              vc.cocone[n].mor[b.left], vc.cocone[n].mor[b.right]}));
    }
    auto term = [&](int n, int a) { return SqTerm::gen(gen[sq.of(n, a)]); };
    for (int n = 0; n < nn; ++n) {
        auto& x = *d.nodes[n];
        std::vector<char> is_idv(x.num_squares(), 0), is_idh(x.num_squares(), 0);
        for (int f = 0; f < x.hor.num_morphisms(); ++f) {
            is_idv[x.idv(f)] = 1;
            p.relate(term(n, x.idv(f)), SqTerm::iv(hc.cocone[n].mor[f]));
        }
        for (int v = 0; v < x.ver.num_morphisms(); ++v) {
            is_idh[x.idh[v]] = 1;
            p.relate(term(n, x.idh[v]), SqTerm::ih(vc.cocone[n].mor[v]));
        }
        for (int a = 0; a < x.num_squares(); ++a) {
            if (!is_idv[a])
                for (int b : x.with_top(x.bottom(a)))
                    if (!is_idv[b])
                        p.relate(SqTerm::above(term(n, a), term(n, b)), term(n, x.above(a, b)));
            if (!is_idh[a])
                for (int b : x.with_left(x.right[a]))
                    if (!is_idh[b])
                        p.relate(SqTerm::beside(term(n, a), term(n, b)), term(n, x.beside(a, b)));
        }
    }
    auto sat = saturate(p, budget);
    DblColimit r;
    auto apex = std::make_shared<DoubleCategory>(std::move(sat.dc));
    r.apex = apex;
    for (int n = 0; n < nn; ++n) {
        DoubleFunctor f{d.nodes[n], apex, hc.cocone[n].obj, hc.cocone[n].mor, vc.cocone[n].mor, {}};
        for (int a = 0; a < d.nodes[n]->num_squares(); ++a)
            f.sq.push_back(sat.gen_image[gen[sq.of(n, a)]]);
        r.cocone.push_back(std::move(f));
    }
    return r;
}

bool is_directed(const FinCategory& I)
{
    if (I.num_objects() == 0)
        return false;
    for (int i = 0; i < I.num_objects(); ++i)
        for (int j = 0; j < I.num_objects(); ++j) {
            bool ok = false;
            for (int k = 0; k < I.num_objects() && !ok; ++k)
                ok = !I.hom(i, k).empty() && !I.hom(j, k).empty();
            if (!ok)
                return false;
        }
    for (int i = 0; i < I.num_objects(); ++i)
        for (int j = 0; j < I.num_objects(); ++j) {
            auto h = I.hom(i, j);
            for (int u : h)
                for (int v : h) {
                    bool ok = false;
                    for (int w : I.out(j))
                        ok = ok || I.then(u, w) == I.then(v, w);
                    if (!ok)
                        return false;
                }
        }
    return true;
}

DblColimit filtered_colimit_dblcat(const DblDiagram& d)
{
    auto diag = validate(d);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    if (!is_directed(d.index))
        throw Error(ErrorKind::not_directed, "index category is not filtered");
    int nn = int(d.nodes.size());
    std::vector<int> so, sh, sv, ss;
    std::vector<const std::vector<Id>*> no, nh, nv, ns;
    for (auto& n : d.nodes) {
        so.push_back(n->num_objects());
        sh.push_back(n->hor.num_morphisms());
        sv.push_back(n->ver.num_morphisms());
        ss.push_back(n->num_squares());
        no.push_back(&n->objects());
        nh.push_back(&n->hor.morphisms);
        nv.push_back(&n->ver.morphisms);
        ns.push_back(&n->squares());
    }
    Glued go(so), gh(sh), gv(sv), gs(ss);
    for (int u = 0; u < d.index.num_morphisms(); ++u) {
        int s = d.index.src[u], t = d.index.tgt[u];
        auto& a = d.arrows[u];
        for (int x = 0; x < so[s]; ++x)
            go.unite(s, x, t, a.obj[x]);
        for (int x = 0; x < sh[s]; ++x)
            gh.unite(s, x, t, a.hor[x]);
        for (int x = 0; x < sv[s]; ++x)
            gv.unite(s, x, t, a.ver[x]);
        for (int x = 0; x < ss[s]; ++x)
            gs.unite(s, x, t, a.sq[x]);
    }
    go.finish();
    gh.finish();
    gv.finish();
    gs.finish();
    auto on = qualified(d.index, no), hn = qualified(d.index, nh), vn = qualified(d.index, nv),
         sn = qualified(d.index, ns);

    auto build_cat = [&](Glued& g, const std::vector<std::vector<Id>>& names, auto cat_of) {
        CategoryBuilder b;
        std::vector<int> mor(g.rep.size(), -1);
        for (int x : go.rep) {
            int n = go.node_of(x), a = x - go.offset[n];
            int id = cat_of(*d.nodes[n]).ident[a];
            int o = b.add_object(on[n][a], names[n][id]);
            mor[g.of(n, id)] = b.identity(o);
        }
        for (std::size_t c = 0; c < g.rep.size(); ++c) {
            if (mor[c] >= 0)
                continue;
            int n = g.node_of(g.rep[c]), m = g.rep[c] - g.offset[n];
            auto& cat = cat_of(*d.nodes[n]);
            mor[c] = b.add_morphism(names[n][m], go.of(n, cat.src[m]), go.of(n, cat.tgt[m]));
        }
        for (int n = 0; n < nn; ++n) {
            auto& cat = cat_of(*d.nodes[n]);
            for (int f = 0; f < cat.num_morphisms(); ++f)
                for (int h : cat.out(cat.tgt[f]))
                    b.set_then(mor[g.of(n, f)], mor[g.of(n, h)], mor[g.of(n, cat.then(f, h))]);
        }
        return std::pair{b.build(), mor};
    };
    auto [hor, hmor] = build_cat(gh, hn, [](const DoubleCategory& x) -> const FinCategory& { return x.hor; });
    auto [ver, vmor] = build_cat(gv, vn, [](const DoubleCategory& x) -> const FinCategory& { return x.ver; });
    DoubleBuilder b(hor, ver);
    std::vector<int> smor(gs.rep.size(), -1);
    for (std::size_t c = 0; c < gs.rep.size(); ++c) {
        int n = gs.node_of(gs.rep[c]), a = gs.rep[c] - gs.offset[n];
        auto bd = d.nodes[n]->boundary(a);
        smor[c] = b.add_square(sn[n][a], {hmor[gh.of(n, bd.top)], hmor[gh.of(n, bd.bottom)], vmor[gv.of(n, bd.left)],
                                           vmor[gv.of(n, bd.right)]});
    }
    for (int n = 0; n < nn; ++n) {
        auto& x = *d.nodes[n];
        for (int f = 0; f < x.hor.num_morphisms(); ++f)
            b.set_idv(hmor[gh.of(n, f)], smor[gs.of(n, x.idv(f))]);
        for (int v = 0; v < x.ver.num_morphisms(); ++v)
            b.set_idh(vmor[gv.of(n, v)], smor[gs.of(n, x.idh[v])]);
        for (int a = 0; a < x.num_squares(); ++a) {
            for (int c : x.with_top(x.bottom(a)))
                b.set_above(smor[gs.of(n, a)], smor[gs.of(n, c)], smor[gs.of(n, x.above(a, c))]);
            for (int c : x.with_left(x.right[a]))
                b.set_beside(smor[gs.of(n, a)], smor[gs.of(n, c)], smor[gs.of(n, x.beside(a, c))]);
        }
    }
    DblColimit r;
    auto apex = std::make_shared<DoubleCategory>(b.build());
    r.apex = apex;
    for (int n = 0; n < nn; ++n) {
        auto& x = *d.nodes[n];
        DoubleFunctor f{d.nodes[n], apex, {}, {}, {}, {}};
        for (int a = 0; a < x.num_objects(); ++a)
            f.obj.push_back(go.of(n, a));
        for (int h = 0; h < x.hor.num_morphisms(); ++h)
            f.hor.push_back(hmor[gh.of(n, h)]);
        for (int v = 0; v < x.ver.num_morphisms(); ++v)
            f.ver.push_back(vmor[gv.of(n, v)]);
        for (int a = 0; a < x.num_squares(); ++a)
            f.sq.push_back(smor[gs.of(n, a)]);
        r.cocone.push_back(std::move(f));
    }
    auto check = validate(*apex);
    if (!check.empty())
        throw Error(ErrorKind::invalid, "filtered colimit: " + check.front());
    return r;
}

namespace {

FinCategory span_index()
{
    CategoryBuilder b;
    int a = b.add_object("a"), bb = b.add_object("b"), d = b.add_object("d");
    b.add_morphism("i", a, bb);
    b.add_morphism("f", a, d);
    return b.build();
}

template <class Node, class Arrow, class Identity>
Diagram<Node, Arrow> make_span(const Arrow& i, const Arrow& f, Identity identity)
{
    Diagram<Node, Arrow> d;
    d.index = span_index();
    d.nodes = {i.source, i.target, f.target};
    for (int u = 0; u < d.index.num_morphisms(); ++u) {
        if (d.index.is_identity(u))
            d.arrows.push_back(identity(d.nodes[d.index.src[u]]));
        else
            d.arrows.push_back(d.index.morphisms[u] == "i" ? i : f);
    }
    return d;
}

} // namespace

CatDiagram span_diagram(const Functor& i, const Functor& f)
{
    return make_span<FinCategory>(i, f, [](auto c) { return identity_functor(c); });
}

DblDiagram span_diagram(const DoubleFunctor& i, const DoubleFunctor& f)
{
    return make_span<DoubleCategory>(i, f, [](auto c) { return identity_double_functor(c); });
}

namespace {

class NameSet {
public:
    Id take(Id x)
    {
        while (!used_.insert(x).second)
            x += "'";
        return x;
    }

private:
    std::set<Id> used_;
};

// Pushout of a full subcategory A of B (given by a mask on objects) along F: A -> D.
// Elements are the normal forms: a morphism of B between objects outside A, or a path
// f1; d; f2 with d in D and f1 (f2) either absent or a morphism of B leaving (entering)
// A. Paths are identified by sliding morphisms of A into d.
class FullPushout {
public:
    struct Elem {
        bool plain = false; // a morphism of B outside A
        int f1 = -1, d = -1, f2 = -1;
        auto operator<=>(const Elem&) const = default;
    };

    const FinCategory& B;
    const FinCategory& D;
    std::vector<char> in_a;
    std::vector<int> fobj, fmor; // F on objects / morphisms of A, -1 elsewhere

    std::vector<int> pobj_of_b; // B object -> P object
    std::vector<Elem> elems;
    std::vector<int> esrc, etgt;
    UnionFind uf;
    FinCategory cat;
    std::vector<int> elem_mor; // element -> morphism of cat
    std::vector<int> from_b, from_d;

    FullPushout(const FinCategory& b, const FinCategory& d, std::vector<char> in_a, std::vector<int> fobj,
                std::vector<int> fmor)
        : B(b), D(d), in_a(std::move(in_a)), fobj(std::move(fobj)), fmor(std::move(fmor))
    {
    }

    int find(const Elem& e) const
    {
        auto it = index_.find(e);
        if (it == index_.end())
            throw Error(ErrorKind::invalid, "pushout formula: normal form missing");
        return it->second;
    }

    void run()
    {
        int nd = D.num_objects();
        pobj_of_b.assign(B.num_objects(), -1);
        int next = nd;
        for (int b = 0; b < B.num_objects(); ++b)
            pobj_of_b[b] = in_a[b] ? fobj[b] : next++;
        nobj_ = next;
        enumerate();
        slide();
        close();
        build();
    }

    Id elem_name(const Elem& e) const
    {
        if (e.plain)
            return B.morphisms[e.f1];
        std::string s;
        auto add = [&](const Id& x) { s += (s.empty() ? "" : ";") + x; };
        if (e.f1 >= 0)
            add(B.morphisms[e.f1]);
        if (!(D.is_identity(e.d) && (e.f1 >= 0 || e.f2 >= 0)))
            add(D.morphisms[e.d]);
        if (e.f2 >= 0)
            add(B.morphisms[e.f2]);
        return s;
    }

private:
    std::map<Elem, int> index_;
    int nobj_ = 0;
    std::map<std::pair<int, int>, int> table_;

    int add(const Elem& e)
    {
        auto [it, fresh] = index_.emplace(e, int(elems.size()));
        if (fresh) {
            elems.push_back(e);
            uf.add();
            if (e.plain) {
                esrc.push_back(pobj_of_b[B.src[e.f1]]);
                etgt.push_back(pobj_of_b[B.tgt[e.f1]]);
            } else {
                esrc.push_back(e.f1 >= 0 ? pobj_of_b[B.src[e.f1]] : D.src[e.d]);
                etgt.push_back(e.f2 >= 0 ? pobj_of_b[B.tgt[e.f2]] : D.tgt[e.d]);
            }
        }
        return it->second;
    }

    void enumerate()
    {
        std::vector<std::vector<int>> leave(D.num_objects()), enter(D.num_objects());
        for (int f = 0; f < B.num_morphisms(); ++f) {
            bool s = in_a[B.src[f]], t = in_a[B.tgt[f]];
            if (!s && !t)
                add({true, f, -1, -1});
            else if (!s && t)
                leave[fobj[B.tgt[f]]].push_back(f);
            else if (s && !t)
                enter[fobj[B.src[f]]].push_back(f);
        }
        for (int d = 0; d < D.num_morphisms(); ++d) {
            std::vector<int> l{-1}, r{-1};
            l.insert(l.end(), leave[D.src[d]].begin(), leave[D.src[d]].end());
            r.insert(r.end(), enter[D.tgt[d]].begin(), enter[D.tgt[d]].end());
            for (int f1 : l)
                for (int f2 : r)
                    add({false, f1, d, f2});
        }
    }

    void slide()
    {
        int n = int(elems.size());
        for (int e = 0; e < n; ++e) {
            Elem x = elems[e];
            if (x.plain) {
                int f = x.f1;
                for (int l : B.out(B.src[f]))
                    if (in_a[B.tgt[l]])
                        for (int r : B.in(B.tgt[f]))
                            if (in_a[B.src[r]])
                                for (int a : B.hom(B.tgt[l], B.src[r]))
                                    if (B.then(B.then(l, a), r) == f)
                                        uf.unite(e, find({false, l, fmor[a], r}));
                continue;
            }
            if (x.f1 >= 0)
                for (int l : B.out(B.src[x.f1]))
                    if (in_a[B.tgt[l]])
                        for (int a : B.hom(B.tgt[l], B.tgt[x.f1]))
                            if (B.then(l, a) == x.f1)
                                uf.unite(e, find({false, l, D.then(fmor[a], x.d), x.f2}));
            if (x.f2 >= 0)
                for (int r : B.in(B.tgt[x.f2]))
                    if (in_a[B.src[r]])
                        for (int a : B.hom(B.src[x.f2], B.src[r]))
                            if (B.then(a, r) == x.f2)
                                uf.unite(e, find({false, x.f1, D.then(x.d, fmor[a]), r}));
        }
    }

    int compose(int i, int j) const
    {
        const Elem &x = elems[i], &y = elems[j];
        if (x.plain && y.plain)
            return find({true, B.then(x.f1, y.f1), -1, -1});
        if (x.plain)
            return find({false, B.then(x.f1, y.f1), y.d, y.f2});
        if (y.plain)
            return find({false, x.f1, x.d, B.then(x.f2, y.f1)});
        int mid = x.f2 >= 0 ? D.then(D.then(x.d, fmor[B.then(x.f2, y.f1)]), y.d) : D.then(x.d, y.d);
        return find({false, x.f1, mid, y.f2});
    }

    void close()
    {
        std::vector<std::vector<int>> by_src(nobj_), by_tgt(nobj_);
        for (int e = 0; e < int(elems.size()); ++e) {
            by_src[esrc[e]].push_back(e);
            by_tgt[etgt[e]].push_back(e);
        }
        for (bool again = true; again;) {
            again = false;
            table_.clear();
            for (int o = 0; o < nobj_; ++o)
                for (int x : by_tgt[o])
                    for (int y : by_src[o]) {
                        int z = compose(x, y);
                        auto [it, fresh] = table_.emplace(std::pair{uf.find(x), uf.find(y)}, z);
                        if (!fresh && uf.unite(it->second, z))
                            again = true;
                    }
        }
    }

    void build()
    {
        // class representative: a bare morphism of D, then a morphism of B, then paths
        std::map<int, int> best;
        auto rank = [&](int e) {
            const Elem& x = elems[e];
            int k = x.plain ? 1 : (x.f1 < 0 && x.f2 < 0 ? 0 : 2);
            return std::pair{k, elem_name(x)};
        };
        for (int e = 0; e < int(elems.size()); ++e) {
            auto [it, fresh] = best.emplace(uf.find(e), e);
            if (!fresh && rank(e) < rank(it->second))
                it->second = e;
        }
        NameSet names;
        CategoryBuilder b;
        std::map<int, int> mor; // root -> morphism
        for (int o = 0; o < D.num_objects(); ++o) {
            int root = uf.find(find({false, -1, D.ident[o], -1}));
            mor[root] = b.identity(b.add_object(names.take(D.objects[o]), names.take(elem_name(elems[best[root]]))));
        }
        for (int x = 0; x < B.num_objects(); ++x)
            if (!in_a[x]) {
                int root = uf.find(find({true, B.ident[x], -1, -1}));
                mor[root] =
                    b.identity(b.add_object(names.take(B.objects[x]), names.take(elem_name(elems[best[root]]))));
            }
        for (auto& [root, e] : best)
            if (!mor.count(root))
                mor[root] = b.add_morphism(names.take(elem_name(elems[e])), esrc[e], etgt[e]);
        for (auto& [k, z] : table_)
            b.set_then(mor.at(k.first), mor.at(k.second), mor.at(uf.find(z)));
        cat = b.build();
        elem_mor.resize(elems.size());
        for (int e = 0; e < int(elems.size()); ++e)
            elem_mor[e] = mor.at(uf.find(e));
        for (int f = 0; f < B.num_morphisms(); ++f) {
            bool s = in_a[B.src[f]], t = in_a[B.tgt[f]];
            Elem e = !s && !t ? Elem{true, f, -1, -1}
                     : s && t ? Elem{false, -1, fmor[f], -1}
                     : !s     ? Elem{false, f, D.ident[fobj[B.tgt[f]]], -1}
                              : Elem{false, -1, D.ident[fobj[B.src[f]]], f};
            from_b.push_back(elem_mor[find(e)]);
        }
        for (int d = 0; d < D.num_morphisms(); ++d)
            from_d.push_back(elem_mor[find({false, -1, d, -1})]);
    }
};

// Inverse of an injective map, -1 off the image.
std::vector<int> inverse(const std::vector<int>& f, int n)
{
    std::vector<int> r(n, -1);
    for (int i = 0; i < int(f.size()); ++i)
        r[f[i]] = i;
    return r;
}

void check_full_inclusion(const Functor& i)
{
    auto diag = validate(i);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, "inclusion: " + diag.front());
    const auto &A = *i.source, &B = *i.target;
    std::set<int> objs(i.obj.begin(), i.obj.end()), mors(i.mor.begin(), i.mor.end());
    if (int(objs.size()) != A.num_objects() || int(mors.size()) != A.num_morphisms())
        throw Error(ErrorKind::invalid, "inclusion is not injective");
    for (int f = 0; f < B.num_morphisms(); ++f)
        if (objs.count(B.src[f]) && objs.count(B.tgt[f]) && !mors.count(f))
            throw Error(ErrorKind::invalid, "inclusion is not full: " + B.morphisms[f] + " is missing");
}

} // namespace

CatColimit pushout_cat_formula(const Functor& i, const Functor& f)
{
    check_full_inclusion(i);
    auto diag = validate(f);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, "functor: " + diag.front());
    if (!(*f.source == *i.source))
        throw Error(ErrorKind::invalid, "shape mismatch: the functor must start at the included category");
    const auto &B = *i.target, &D = *f.target;
    auto ao = inverse(i.obj, B.num_objects()), am = inverse(i.mor, B.num_morphisms());
    std::vector<char> in_a(B.num_objects());
    std::vector<int> fobj(B.num_objects(), -1), fmor(B.num_morphisms(), -1);
    for (int b = 0; b < B.num_objects(); ++b)
        if ((in_a[b] = ao[b] >= 0))
            fobj[b] = f.obj[ao[b]];
    for (int m = 0; m < B.num_morphisms(); ++m)
        if (am[m] >= 0)
            fmor[m] = f.mor[am[m]];
    FullPushout p(B, D, in_a, fobj, fmor);
    p.run();
    CatColimit r;
    auto apex = std::make_shared<FinCategory>(p.cat);
    r.apex = apex;
    Functor bl{i.target, apex, p.pobj_of_b, p.from_b};
    Functor dl{f.target, apex, {}, p.from_d};
    for (int o = 0; o < D.num_objects(); ++o)
        dl.obj.push_back(o);
    r.cocone = {compose(i, bl), bl, dl};
    return r;
}

CatColimit pushout_discrete_times_formula(const Functor& i, std::shared_ptr<const FinCategory> c, const Functor& f)
{
    const auto &A = *i.source, &B = *i.target, &C = *c, &D = *f.target;
    if (A.num_morphisms() != A.num_objects() || B.num_morphisms() != B.num_objects())
        throw Error(ErrorKind::invalid, "shape mismatch: the inclusion must be between discrete categories");
    check_full_inclusion(i);
    auto diag = validate(f);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, "functor: " + diag.front());
    if (!(*f.source == product(A, C)))
        throw Error(ErrorKind::invalid, "shape mismatch: the functor must start at A x C");
    auto ao = inverse(i.obj, B.num_objects());
    int nc = C.num_objects(), mc = C.num_morphisms();
    NameSet names;
    CategoryBuilder pb;
    std::vector<int> dmor(D.num_morphisms(), -1), bmor(B.num_objects() * mc, -1), bobj(B.num_objects() * nc, -1);
    for (int o = 0; o < D.num_objects(); ++o)
        dmor[D.ident[o]] = pb.identity(pb.add_object(names.take(D.objects[o]), names.take(D.morphisms[D.ident[o]])));
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int x = 0; x < nc; ++x) {
                bobj[b * nc + x] = pb.add_object(names.take("(" + B.objects[b] + "," + C.objects[x] + ")"),
                                                 names.take("(" + B.morphisms[B.ident[b]] + "," + C.morphisms[C.ident[x]] + ")"));
                bmor[b * mc + C.ident[x]] = pb.identity(bobj[b * nc + x]);
            }
    for (int m = 0; m < D.num_morphisms(); ++m)
        if (dmor[m] < 0)
            dmor[m] = pb.add_morphism(names.take(D.morphisms[m]), D.src[m], D.tgt[m]);
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int g = 0; g < mc; ++g)
                if (!C.is_identity(g))
                    bmor[b * mc + g] = pb.add_morphism(names.take("(" + B.objects[b] + "," + C.morphisms[g] + ")"),
                                                       bobj[b * nc + C.src[g]], bobj[b * nc + C.tgt[g]]);
    for (int m = 0; m < D.num_morphisms(); ++m)
        for (int n : D.out(D.tgt[m]))
            pb.set_then(dmor[m], dmor[n], dmor[D.then(m, n)]);
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int g = 0; g < mc; ++g)
                for (int h : C.out(C.tgt[g]))
                    pb.set_then(bmor[b * mc + g], bmor[b * mc + h], bmor[b * mc + C.then(g, h)]);
    CatColimit r;
    auto apex = std::make_shared<FinCategory>(pb.build());
    r.apex = apex;
    auto bc = std::make_shared<FinCategory>(product(B, C));
    Functor bl{bc, apex, {}, {}};
    for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < nc; ++x)
            bl.obj.push_back(ao[b] >= 0 ? f.obj[ao[b] * nc + x] : bobj[b * nc + x]);
    // product morphisms are laid out (identity of b) * mc + g
    bl.mor.assign(bc->num_morphisms(), -1);
    for (int b = 0; b < B.num_objects(); ++b)
        for (int g = 0; g < mc; ++g) {
            int m = bc->morphism("(" + B.morphisms[B.ident[b]] + "," + C.morphisms[g] + ")");
            if (ao[b] >= 0) {
                int am = f.source->morphism("(" + A.morphisms[A.ident[ao[b]]] + "," + C.morphisms[g] + ")");
                bl.mor[m] = dmor[f.mor[am]];
            } else
                bl.mor[m] = bmor[b * mc + g];
        }
    Functor il{f.source, bc, {}, {}};
    for (int a = 0; a < A.num_objects(); ++a)
        for (int x = 0; x < nc; ++x)
            il.obj.push_back(i.obj[a] * nc + x);
    il.mor.assign(f.source->num_morphisms(), -1);
    for (int a = 0; a < A.num_objects(); ++a)
        for (int g = 0; g < mc; ++g)
            il.mor[f.source->morphism("(" + A.morphisms[A.ident[a]] + "," + C.morphisms[g] + ")")] =
                bc->morphism("(" + B.morphisms[B.ident[i.obj[a]]] + "," + C.morphisms[g] + ")");
    Functor dl{f.target, apex, {}, dmor};
    for (int o = 0; o < D.num_objects(); ++o)
        dl.obj.push_back(o);
    r.cocone = {compose(il, bl), bl, dl};
    return r;
}

FullInclusion point_into_I()
{
    FullInclusion r;
    r.kind = FullInclusion::Kind::point_into_I;
    auto b = std::make_shared<FinCategory>(iso_category());
    CategoryBuilder ab;
    ab.add_object("1", b->morphisms[b->ident[1]]);
    r.a = std::make_shared<FinCategory>(ab.build());
    r.b = b;
    r.i = Functor{r.a, r.b, {1}, {b->ident[1]}};
    return r;
}

namespace {

// B x X_disc, named like external products.
FinCategory times_discrete(const FinCategory& B, const std::vector<Id>& labels)
{
    CategoryBuilder b;
    int n = int(labels.size());
    std::vector<int> mor(B.num_morphisms() * n, -1);
    for (int x = 0; x < B.num_objects(); ++x)
        for (int k = 0; k < n; ++k)
            mor[B.ident[x] * n + k] = b.identity(
                b.add_object("(" + B.objects[x] + "," + labels[k] + ")", "(" + B.morphisms[B.ident[x]] + "," + labels[k] + ")"));
    for (int f = 0; f < B.num_morphisms(); ++f)
        for (int k = 0; k < n; ++k)
            if (mor[f * n + k] < 0)
                mor[f * n + k] = b.add_morphism("(" + B.morphisms[f] + "," + labels[k] + ")", B.src[f] * n + k,
                                                B.tgt[f] * n + k);
    for (int f = 0; f < B.num_morphisms(); ++f)
        for (int g : B.out(B.tgt[f]))
            for (int k = 0; k < n; ++k)
                b.set_then(mor[f * n + k], mor[g * n + k], mor[B.then(f, g) * n + k]);
    return b.build();
}

} // namespace

DblDiagram pushout_diagram(const FullInclusion& inc, std::shared_ptr<const FinCategory> c, const DoubleFunctor& f)
{
    auto bc = std::make_shared<DoubleCategory>(external_product(*inc.b, *c));
    auto i = external_product(inc.i, identity_functor(c), f.source, bc);
    return span_diagram(i, f);
}

DblColimit pushout_dblcat_formula(const FullInclusion& inc, std::shared_ptr<const FinCategory> c,
                                  const DoubleFunctor& F)
{
    if (inc.kind == FullInclusion::Kind::other)
        throw Error(ErrorKind::unsupported, "only the horn and point-into-I inclusions are supported");
    check_full_inclusion(inc.i);
    auto diag = validate(F);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, "double functor: " + diag.front());
    const auto &A = *inc.a, &B = *inc.b, &C = *c;
    const auto& AC = *F.source;
    const auto& D = *F.target;
    if (!(AC == external_product(A, C)))
        throw Error(ErrorKind::invalid, "shape mismatch: the double functor must start at A x C");
    int nc = C.num_objects(), mc = C.num_morphisms();
    auto ao = inverse(inc.i.obj, B.num_objects()), am = inverse(inc.i.mor, B.num_morphisms());
    auto hname = [&](int a, int g) { return "(" + A.objects[a] + "," + C.morphisms[g] + ")"; };
    auto vname = [&](int fa, int x) { return "(" + A.morphisms[fa] + "," + C.objects[x] + ")"; };

    // vertical 1-category: B x Obj C pushed out along F0
    auto bo = times_discrete(B, C.objects);
    std::vector<char> in_o(bo.num_objects());
    std::vector<int> fo_obj(bo.num_objects(), -1), fo_mor(bo.num_morphisms(), -1);
    auto bo_obj = [&](int b, int x) { return bo.object("(" + B.objects[b] + "," + C.objects[x] + ")"); };
    auto bo_mor = [&](int f, int x) { return bo.morphism("(" + B.morphisms[f] + "," + C.objects[x] + ")"); };
    for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < nc; ++x)
            if ((in_o[bo_obj(b, x)] = ao[b] >= 0))
                fo_obj[bo_obj(b, x)] = F.obj[ao[b] * nc + x];
    for (int f = 0; f < B.num_morphisms(); ++f)
        if (am[f] >= 0)
            for (int x = 0; x < nc; ++x)
                fo_mor[bo_mor(f, x)] = F.ver[AC.ver.morphism(vname(am[f], x))];
    FullPushout vp(bo, D.ver, in_o, fo_obj, fo_mor);
    vp.run();

    // squares under vertical pasting: B x Mor C pushed out along F1
    auto bm = times_discrete(B, C.morphisms);
    std::vector<char> in_m(bm.num_objects());
    std::vector<int> fm_obj(bm.num_objects(), -1), fm_mor(bm.num_morphisms(), -1);
    auto bm_obj = [&](int b, int g) { return bm.object("(" + B.objects[b] + "," + C.morphisms[g] + ")"); };
    auto bm_mor = [&](int f, int g) { return bm.morphism("(" + B.morphisms[f] + "," + C.morphisms[g] + ")"); };
    std::vector<std::pair<int, int>> bm_obj_parts(bm.num_objects()), bm_mor_parts(bm.num_morphisms());
    std::vector<std::pair<int, int>> bo_mor_parts(bo.num_morphisms());
    for (int b = 0; b < B.num_objects(); ++b)
        for (int g = 0; g < mc; ++g) {
            int o = bm_obj(b, g);
            bm_obj_parts[o] = {b, g};
            if ((in_m[o] = ao[b] >= 0))
                fm_obj[o] = F.hor[AC.hor.morphism(hname(ao[b], g))];
        }
    for (int f = 0; f < B.num_morphisms(); ++f) {
        for (int g = 0; g < mc; ++g) {
            int m = bm_mor(f, g);
            bm_mor_parts[m] = {f, g};
            if (am[f] >= 0)
                fm_mor[m] = F.sq[am[f] * mc + g];
        }
        for (int x = 0; x < nc; ++x)
            bo_mor_parts[bo_mor(f, x)] = {f, x};
    }
    FullPushout sp(bm, D.sq, in_m, fm_obj, fm_mor);
    sp.run();

    // horizontal 1-category: D's plus (B \ A) x C
    NameSet names;
    CategoryBuilder hb;
    std::vector<int> h_of_d(D.hor.num_morphisms(), -1), h_of_bg(B.num_objects() * mc, -1);
    for (int o = 0; o < vp.cat.num_objects(); ++o) {
        Id idn;
        if (o < D.num_objects())
            idn = D.hor.morphisms[D.hor.ident[o]];
        else
            for (int b = 0; b < B.num_objects(); ++b)
                for (int x = 0; x < nc; ++x)
                    if (ao[b] < 0 && vp.pobj_of_b[bo_obj(b, x)] == o)
                        idn = "(" + B.objects[b] + "," + C.morphisms[C.ident[x]] + ")";
        int id = hb.identity(hb.add_object(vp.cat.objects[o], names.take(idn)));
        if (o < D.num_objects())
            h_of_d[D.hor.ident[o]] = id;
    }
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int x = 0; x < nc; ++x)
                h_of_bg[b * mc + C.ident[x]] = hb.identity(vp.pobj_of_b[bo_obj(b, x)]);
    for (int h = 0; h < D.hor.num_morphisms(); ++h)
        if (h_of_d[h] < 0)
            h_of_d[h] = hb.add_morphism(names.take(D.hor.morphisms[h]), D.hor.src[h], D.hor.tgt[h]);
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int g = 0; g < mc; ++g)
                if (!C.is_identity(g))
                    h_of_bg[b * mc + g] =
                        hb.add_morphism(names.take("(" + B.objects[b] + "," + C.morphisms[g] + ")"),
                                        vp.pobj_of_b[bo_obj(b, C.src[g])], vp.pobj_of_b[bo_obj(b, C.tgt[g])]);
    for (int h = 0; h < D.hor.num_morphisms(); ++h)
        for (int k : D.hor.out(D.hor.tgt[h]))
            hb.set_then(h_of_d[h], h_of_d[k], h_of_d[D.hor.then(h, k)]);
    for (int b = 0; b < B.num_objects(); ++b)
        if (ao[b] < 0)
            for (int g = 0; g < mc; ++g)
                for (int k : C.out(C.tgt[g]))
                    hb.set_then(h_of_bg[b * mc + g], h_of_bg[b * mc + k], h_of_bg[b * mc + C.then(g, k)]);
    auto hor = hb.build();
    // squares' horizontal sides: objects of the square pushout are horizontal morphisms
    std::vector<int> h_of_sobj(sp.cat.num_objects(), -1);
    for (int h = 0; h < D.hor.num_morphisms(); ++h)
        h_of_sobj[h] = h_of_d[h];
    for (int o = 0; o < bm.num_objects(); ++o)
        if (!in_m[o]) {
            auto [b, g] = bm_obj_parts[o];
            h_of_sobj[sp.pobj_of_b[o]] = h_of_bg[b * mc + g];
        }

    // vertical sides of square normal forms, read off componentwise
    using Elem = FullPushout::Elem;
    auto side = [&](const Elem& e, bool right) {
        auto end = [&](int sqm) {
            auto [f, g] = bm_mor_parts[sqm];
            return bo_mor(f, right ? C.tgt[g] : C.src[g]);
        };
        Elem v;
        if (e.plain)
            v = {true, end(e.f1), -1, -1};
        else
            v = {false, e.f1 >= 0 ? end(e.f1) : -1, right ? D.right[e.d] : D.left[e.d], e.f2 >= 0 ? end(e.f2) : -1};
        return vp.elem_mor[vp.find(v)];
    };
    int ns = sp.cat.num_morphisms();
    std::vector<int> left(ns, -1), right(ns, -1);
    for (int e = 0; e < int(sp.elems.size()); ++e) {
        int m = sp.elem_mor[e];
        int l = side(sp.elems[e], false), r = side(sp.elems[e], true);
        if ((left[m] >= 0 && left[m] != l) || (right[m] >= 0 && right[m] != r))
            throw Error(ErrorKind::invalid, "pushout formula: vertical sides of a square are not well defined");
        left[m] = l;
        right[m] = r;
    }

    // horizontal pasting: match normal forms whose shared sides agree componentwise
    auto sig = [&](const Elem& e, bool right) {
        auto part = [&](int sqm) {
            if (sqm < 0)
                return std::pair{-1, -1};
            auto [f, g] = bm_mor_parts[sqm];
            return std::pair{f, right ? C.tgt[g] : C.src[g]};
        };
        auto [a, b] = part(e.f1);
        auto [x, y] = e.plain ? std::pair{-1, -1} : part(e.f2);
        return std::array<int, 6>{e.plain ? 1 : 0, a, b, e.plain ? -1 : (right ? D.right[e.d] : D.left[e.d]), x, y};
    };
    std::map<std::array<int, 6>, std::vector<int>> by_left;
    for (int e = 0; e < int(sp.elems.size()); ++e)
        by_left[sig(sp.elems[e], false)].push_back(e);
    std::map<std::pair<int, int>, int> beside;
    auto glue = [&](int sx, int sy) {
        if (sx < 0)
            return -1;
        auto [f, g] = bm_mor_parts[sx];
        return bm_mor(f, C.then(g, bm_mor_parts[sy].second));
    };
    for (int x = 0; x < int(sp.elems.size()); ++x) {
        auto it = by_left.find(sig(sp.elems[x], true));
        if (it == by_left.end())
            continue;
        for (int y : it->second) {
            const Elem &ex = sp.elems[x], &ey = sp.elems[y];
            Elem z = ex.plain ? Elem{true, glue(ex.f1, ey.f1), -1, -1}
                              : Elem{false, glue(ex.f1, ey.f1), D.beside(ex.d, ey.d), glue(ex.f2, ey.f2)};
            int m = sp.elem_mor[sp.find(z)];
            auto [jt, fresh] = beside.emplace(std::pair{sp.elem_mor[x], sp.elem_mor[y]}, m);
            if (!fresh && jt->second != m)
                throw Error(ErrorKind::invalid, "pushout formula: horizontal composite is not well defined");
        }
    }

    DoubleBuilder db(hor, vp.cat);
    for (int m = 0; m < ns; ++m)
        db.add_square(sp.cat.morphisms[m],
                      {h_of_sobj[sp.cat.src[m]], h_of_sobj[sp.cat.tgt[m]], left[m], right[m]});
    for (int o = 0; o < sp.cat.num_objects(); ++o)
        db.set_idv(h_of_sobj[o], sp.cat.ident[o]);
    std::vector<int> ver_rep(vp.cat.num_morphisms(), -1);
    for (int e = 0; e < int(vp.elems.size()); ++e)
        if (ver_rep[vp.elem_mor[e]] < 0)
            ver_rep[vp.elem_mor[e]] = e;
    for (int v = 0; v < vp.cat.num_morphisms(); ++v) {
        const Elem& e = vp.elems[ver_rep[v]];
        auto unit = [&](int vm) {
            if (vm < 0)
                return -1;
            auto [f, x] = bo_mor_parts[vm];
            return bm_mor(f, C.ident[x]);
        };
        Elem s = e.plain ? Elem{true, unit(e.f1), -1, -1} : Elem{false, unit(e.f1), D.idh[e.d], unit(e.f2)};
        db.set_idh(v, sp.elem_mor[sp.find(s)]);
    }
    for (int m = 0; m < ns; ++m)
        for (int k : sp.cat.out(sp.cat.tgt[m]))
            db.set_above(m, k, sp.cat.then(m, k));
    for (int m = 0; m < ns; ++m)
        for (int k = 0; k < ns; ++k)
            if (right[m] == left[k]) {
                auto it = beside.find({m, k});
                if (it == beside.end())
                    throw Error(ErrorKind::unsupported, "pushout formula: no normal forms realise the composite of " +
                                                            sp.cat.morphisms[m] + " and " + sp.cat.morphisms[k]);
                db.set_beside(m, k, it->second);
            }
    auto apex = std::make_shared<DoubleCategory>(db.build());

    // cocone
    auto bc = std::make_shared<DoubleCategory>(external_product(B, C));
    DoubleFunctor bl{bc, apex, {}, {}, {}, {}};
    for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < nc; ++x)
            bl.obj.push_back(vp.pobj_of_b[bo_obj(b, x)]);
    bl.hor.assign(bc->hor.num_morphisms(), -1);
    for (int b = 0; b < B.num_objects(); ++b)
        for (int g = 0; g < mc; ++g) {
            int h = bc->hor.morphism("(" + B.objects[b] + "," + C.morphisms[g] + ")");
            bl.hor[h] = ao[b] >= 0 ? h_of_d[F.hor[AC.hor.morphism(hname(ao[b], g))]] : h_of_bg[b * mc + g];
        }
    bl.ver.assign(bc->ver.num_morphisms(), -1);
    for (int f = 0; f < B.num_morphisms(); ++f)
        for (int x = 0; x < nc; ++x)
            bl.ver[bc->ver.morphism("(" + B.morphisms[f] + "," + C.objects[x] + ")")] = vp.from_b[bo_mor(f, x)];
    for (int f = 0; f < B.num_morphisms(); ++f)
        for (int g = 0; g < mc; ++g)
            bl.sq.push_back(sp.from_b[bm_mor(f, g)]);
    DoubleFunctor dl{F.target, apex, {}, h_of_d, vp.from_d, sp.from_d};
    for (int o = 0; o < D.num_objects(); ++o)
        dl.obj.push_back(o);
    auto il = external_product(inc.i, identity_functor(c), F.source, bc);
    DblColimit r;
    r.apex = apex;
    r.cocone = {compose(il, bl), bl, dl};
    return r;
}

std::optional<Functor> extend_functor(std::shared_ptr<const FinCategory> src, std::shared_ptr<const FinCategory> tgt,
                                      std::vector<int> obj, std::vector<int> mor)
{
    const auto& a = *src;
    const auto& b = *tgt;
    for (int x = 0; x < a.num_objects(); ++x) {
        int id = b.ident[obj[x]];
        if (mor[a.ident[x]] >= 0 && mor[a.ident[x]] != id)
            return std::nullopt;
        mor[a.ident[x]] = id;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int f = 0; f < a.num_morphisms(); ++f) {
            if (mor[f] < 0)
                continue;
            for (int g : a.out(a.tgt[f])) {
                if (mor[g] < 0)
                    continue;
                int h = a.then(f, g);
                int v = b.then(mor[f], mor[g]);
                if (v < 0)
                    return std::nullopt;
                if (mor[h] < 0) {
                    mor[h] = v;
                    changed = true;
                } else if (mor[h] != v)
                    return std::nullopt;
            }
        }
    }
    for (int f = 0; f < a.num_morphisms(); ++f)
        if (mor[f] < 0 || b.src[mor[f]] != obj[a.src[f]] || b.tgt[mor[f]] != obj[a.tgt[f]])
            return std::nullopt;
    return Functor{src, tgt, std::move(obj), std::move(mor)};
}

std::optional<DoubleFunctor> extend_double_functor(std::shared_ptr<const DoubleCategory> src,
                                                   std::shared_ptr<const DoubleCategory> tgt, std::vector<int> obj,
                                                   std::vector<int> hor, std::vector<int> ver, std::vector<int> sq)
{
    const auto& a = *src;
    const auto& b = *tgt;
    auto h = extend_functor(std::make_shared<const FinCategory>(a.hor), std::make_shared<const FinCategory>(b.hor), obj,
                            std::move(hor));
    auto v = extend_functor(std::make_shared<const FinCategory>(a.ver), std::make_shared<const FinCategory>(b.ver), obj,
                            std::move(ver));
    if (!h || !v)
        return std::nullopt;
    auto put = [&](int x, int val) {
        if (val < 0 || (sq[x] >= 0 && sq[x] != val))
            return false;
        sq[x] = val;
        return true;
    };
    for (int f = 0; f < a.hor.num_morphisms(); ++f)
        if (!put(a.idv(f), b.idv(h->mor[f])))
            return std::nullopt;
    for (int j = 0; j < a.ver.num_morphisms(); ++j)
        if (!put(a.idh[j], b.idh[v->mor[j]]))
            return std::nullopt;
    for (bool changed = true; changed;) {
        changed = false;
        for (int x = 0; x < a.num_squares(); ++x) {
            if (sq[x] < 0)
                continue;
            for (int y : a.with_top(a.bottom(x)))
                if (sq[y] >= 0) {
                    int c = a.above(x, y);
                    bool fresh = sq[c] < 0;
                    if (!put(c, b.above(sq[x], sq[y])))
                        return std::nullopt;
                    changed = changed || fresh;
                }
            for (int y : a.with_left(a.right[x]))
                if (sq[y] >= 0) {
                    int c = a.beside(x, y);
                    bool fresh = sq[c] < 0;
                    if (!put(c, b.beside(sq[x], sq[y])))
                        return std::nullopt;
                    changed = changed || fresh;
                }
        }
    }
    for (int x = 0; x < a.num_squares(); ++x) {
        if (sq[x] < 0)
            return std::nullopt;
        auto bd = b.boundary(sq[x]);
        auto ad = a.boundary(x);
        if (bd.top != h->mor[ad.top] || bd.bottom != h->mor[ad.bottom] || bd.left != v->mor[ad.left] ||
            bd.right != v->mor[ad.right])
            return std::nullopt;
    }
    return DoubleFunctor{src, tgt, std::move(obj), std::move(h->mor), std::move(v->mor), std::move(sq)};
}

std::optional<Functor> mediating_functor(const CatColimit& col, const std::vector<Functor>& cocone)
{
    const auto& p = *col.apex;
    auto tgt = cocone.at(0).target;
    std::vector<int> obj(p.num_objects(), -1), mor(p.num_morphisms(), -1);
    for (std::size_t n = 0; n < cocone.size(); ++n) {
        const auto& leg = col.cocone[n];
        const auto& g = cocone[n];
        for (std::size_t x = 0; x < leg.obj.size(); ++x) {
            if (obj[leg.obj[x]] >= 0 && obj[leg.obj[x]] != g.obj[x])
                return std::nullopt;
            obj[leg.obj[x]] = g.obj[x];
        }
        for (std::size_t f = 0; f < leg.mor.size(); ++f) {
            if (mor[leg.mor[f]] >= 0 && mor[leg.mor[f]] != g.mor[f])
                return std::nullopt;
            mor[leg.mor[f]] = g.mor[f];
        }
    }
    for (int o : obj)
        if (o < 0)
            return std::nullopt;
    return extend_functor(col.apex, tgt, std::move(obj), std::move(mor));
}

} // namespace dbl
