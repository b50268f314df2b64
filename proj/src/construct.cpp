#include "dbl/construct.hpp"

#include "union_find.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace dbl {

FinCategory free_category(const ReflexiveGraph& g, const Budget& budget)
{
    auto diag = validate(g);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    int nv = int(g.graph.vertices.size());
    std::vector<char> is_id(g.graph.edges.size(), 0);
    for (int e : g.identity)
        is_id[e] = 1;
    std::vector<std::vector<int>> out(nv);
    for (int e = 0; e < int(g.graph.edges.size()); ++e)
        if (!is_id[e])
            out[g.graph.edges[e].src].push_back(e);
    // cycle check
    std::vector<int> state(nv, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int e : out[v]) {
            int w = g.graph.edges[e].tgt;
            if (state[w] == 1)
                throw Error(ErrorKind::infinite, "edge " + g.graph.edges[e].id + " lies on a cycle");
            if (state[w] == 0)
                dfs(w);
        }
        state[v] = 2;
    };
    for (int v = 0; v < nv; ++v)
        if (!state[v])
            dfs(v);

    CategoryBuilder b;
    for (int v = 0; v < nv; ++v)
        b.add_object(g.graph.vertices[v], g.graph.edges[g.identity[v]].id);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    std::function<void(int, int)> walk = [&](int start, int v) {
        for (int e : out[v]) {
            cur.push_back(e);
            if (cur.size() > budget.max_path)
                throw Error(ErrorKind::budget_exceeded, "path longer than max_path=" + std::to_string(budget.max_path));
            if (paths.size() >= budget.max_cells)
                throw Error(ErrorKind::budget_exceeded,
                            "more than max_cells=" + std::to_string(budget.max_cells) + " paths");
            std::string name;
            for (int x : cur)
                name += (name.empty() ? "" : ";") + g.graph.edges[x].id;
            index[cur] = b.add_morphism(name, start, g.graph.edges[e].tgt);
            paths.push_back(cur);
            walk(start, g.graph.edges[e].tgt);
            cur.pop_back();
        }
    };
    for (int v = 0; v < nv; ++v)
        walk(v, v);
    for (auto& p : paths)
        for (auto& q : paths)
            if (g.graph.edges[p.back()].tgt == g.graph.edges[q.front()].src) {
                auto r = p;
                r.insert(r.end(), q.begin(), q.end());
                b.set_then(index[p], index[q], index.at(r));
            }
    return b.build();
}

DoubleDerivationScheme free_dds(const DoubleGraph1Id& g, const Budget& budget)
{
    auto diag = validate(g);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    DoubleDerivationScheme s;
    s.hor = free_category(g.hor, budget);
    s.ver = free_category(g.ver, budget);
    s.squares = g.squares;
    for (auto& b : g.boundary)
        s.boundary.push_back({s.hor.morphism(g.hor.graph.edges[b.top].id), s.hor.morphism(g.hor.graph.edges[b.bottom].id),
                              s.ver.morphism(g.ver.graph.edges[b.left].id), s.ver.morphism(g.ver.graph.edges[b.right].id)});
    return s;
}

SquarePresentation presentation_of(const DoubleDerivationScheme& s)
{
    SquarePresentation p;
    p.hor = s.hor;
    p.ver = s.ver;
    for (std::size_t i = 0; i < s.squares.size(); ++i)
        p.add_gen(s.squares[i], s.boundary[i]);
    return p;
}

FreeDoubleCategory free_double_category(const DoubleDerivationScheme& s, const Budget& budget)
{
    auto diag = validate(s);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    auto sat = saturate(presentation_of(s), budget);
    FreeDoubleCategory r;
    r.dc = std::move(sat.dc);
    r.gen_image = std::move(sat.gen_image);
    for (auto& t : sat.terms) {
        FreeSquare f;
        f.term = t;
        if (t.kind == SqTerm::Kind::idv) {
            f.kind = FreeSquare::Kind::idv;
            f.index = t.index;
        } else if (t.kind == SqTerm::Kind::idh) {
            f.kind = FreeSquare::Kind::idh;
            f.index = t.index;
        }
        r.squares.push_back(std::move(f));
    }
    return r;
}

namespace {

using detail::UnionFind;

std::vector<int> normalize_classes(UnionFind& u, int n)
{
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i)
        cls[i] = u.find(i);
    return cls;
}

} // namespace

std::vector<std::string> validate(const FinCategory& c, const CatCongruence& r)
{
    if (int(r.cls.size()) != c.num_morphisms())
        return {"shape: one class per morphism required"};
    std::vector<std::string> d;
    std::map<int, int> rep;
    for (int f = 0; f < c.num_morphisms(); ++f) {
        auto [it, fresh] = rep.emplace(r.cls[f], f);
        if (!fresh && (c.src[f] != c.src[it->second] || c.tgt[f] != c.tgt[it->second]))
            d.push_back("parallel: " + c.morphisms[f] + " ~ " + c.morphisms[it->second]);
    }
    if (!d.empty())
        return d;
    std::map<std::pair<int, int>, std::pair<int, int>> seen;
    for (int f = 0; f < c.num_morphisms(); ++f)
        for (int g : c.out(c.tgt[f])) {
            int h = c.then(f, g);
            auto [it, fresh] = seen.emplace(std::pair{r.cls[f], r.cls[g]}, std::pair{r.cls[h], h});
            if (!fresh && it->second.first != r.cls[h])
                d.push_back("closure: " + c.morphisms[h] + " and " + c.morphisms[it->second.second] +
                            " are composites of related pairs");
        }
    return d;
}

std::vector<std::string> validate(const DoubleCategory& dc, const DblCongruence& r)
{
    if (int(r.cls.size()) != dc.num_squares())
        return {"shape: one class per square required"};
    std::vector<std::string> d;
    std::map<int, int> rep;
    for (int a = 0; a < dc.num_squares(); ++a) {
        auto [it, fresh] = rep.emplace(r.cls[a], a);
        if (!fresh && dc.boundary(a) != dc.boundary(it->second))
            d.push_back("parallel: " + dc.squares()[a] + " ~ " + dc.squares()[it->second]);
    }
    if (!d.empty())
        return d;
    for (int dir = 0; dir < 2; ++dir) {
        std::map<std::pair<int, int>, std::pair<int, int>> seen;
        for (int a = 0; a < dc.num_squares(); ++a)
            for (int b : dir ? dc.with_top(dc.bottom(a)) : dc.with_left(dc.right[a])) {
                int h = dir ? dc.above(a, b) : dc.beside(a, b);
                auto [it, fresh] = seen.emplace(std::pair{r.cls[a], r.cls[b]}, std::pair{r.cls[h], h});
                if (!fresh && it->second.first != r.cls[h])
                    d.push_back(std::string(dir ? "vertical" : "horizontal") + "-closure: " + dc.squares()[h] +
                                " and " + dc.squares()[it->second.second]);
            }
    }
    return d;
}

namespace {

// class -> least-named member
std::map<int, int> least_members(const std::vector<int>& cls, const std::vector<Id>& names)
{
    std::map<int, int> rep;
    for (int i = 0; i < int(cls.size()); ++i) {
        auto [it, fresh] = rep.emplace(cls[i], i);
        if (!fresh && names[i] < names[it->second])
            it->second = i;
    }
    return rep;
}

} // namespace

FinCategory quotient_category(const FinCategory& c, const CatCongruence& r)
{
    auto d = validate(c, r);
    if (!d.empty())
        throw Error(ErrorKind::not_congruence, d.front());
    auto rep = least_members(r.cls, c.morphisms);
    CategoryBuilder b;
    std::vector<int> img(c.num_morphisms(), -1);
    for (int a = 0; a < c.num_objects(); ++a)
        b.add_object(c.objects[a], c.morphisms[rep.at(r.cls[c.ident[a]])]);
    for (int a = 0; a < c.num_objects(); ++a)
        img[rep.at(r.cls[c.ident[a]])] = b.identity(a);
    for (int f = 0; f < c.num_morphisms(); ++f) {
        int m = rep.at(r.cls[f]);
        if (img[m] < 0)
            img[m] = b.add_morphism(c.morphisms[m], c.src[m], c.tgt[m]);
    }
    for (int f = 0; f < c.num_morphisms(); ++f)
        for (int g : c.out(c.tgt[f]))
            b.set_then(img[rep.at(r.cls[f])], img[rep.at(r.cls[g])], img[rep.at(r.cls[c.then(f, g)])]);
    return b.build();
}

DoubleCategory quotient_double(const DoubleCategory& dc, const DblCongruence& r)
{
    auto d = validate(dc, r);
    if (!d.empty())
        throw Error(ErrorKind::not_congruence, d.front());
    auto rep = least_members(r.cls, dc.squares());
    DoubleBuilder b(dc.hor, dc.ver);
    std::vector<int> img(dc.num_squares(), -1);
    for (int a = 0; a < dc.num_squares(); ++a) {
        int m = rep.at(r.cls[a]);
        if (img[m] < 0)
            img[m] = b.add_square(dc.squares()[m], dc.boundary(m));
    }
    auto im = [&](int a) { return img[rep.at(r.cls[a])]; };
    for (int f = 0; f < dc.hor.num_morphisms(); ++f)
        b.set_idv(f, im(dc.idv(f)));
    for (int v = 0; v < dc.ver.num_morphisms(); ++v)
        b.set_idh(v, im(dc.idh[v]));
    for (int a = 0; a < dc.num_squares(); ++a) {
        for (int c : dc.with_top(dc.bottom(a)))
            b.set_above(im(a), im(c), im(dc.above(a, c)));
        for (int c : dc.with_left(dc.right[a]))
            b.set_beside(im(a), im(c), im(dc.beside(a, c)));
    }
    return b.build();
}

Functor quotient_projection(std::shared_ptr<const FinCategory> c, std::shared_ptr<const FinCategory> q,
                            const CatCongruence& r)
{
    auto rep = least_members(r.cls, c->morphisms);
    Functor f;
    f.source = c;
    f.target = q;
    for (int a = 0; a < c->num_objects(); ++a)
        f.obj.push_back(a);
    for (int m = 0; m < c->num_morphisms(); ++m)
        f.mor.push_back(q->morphism(c->morphisms[rep.at(r.cls[m])]));
    return f;
}

DoubleFunctor quotient_projection(std::shared_ptr<const DoubleCategory> d, std::shared_ptr<const DoubleCategory> q,
                                  const DblCongruence& r)
{
    auto rep = least_members(r.cls, d->squares());
    DoubleFunctor f;
    f.source = d;
    f.target = q;
    for (int a = 0; a < d->num_objects(); ++a)
        f.obj.push_back(a);
    for (int h = 0; h < d->hor.num_morphisms(); ++h)
        f.hor.push_back(h);
    for (int v = 0; v < d->ver.num_morphisms(); ++v)
        f.ver.push_back(v);
    for (int a = 0; a < d->num_squares(); ++a)
        f.sq.push_back(q->square(d->squares()[rep.at(r.cls[a])]));
    return f;
}

CatCongruence congruence_closure(const FinCategory& c, const std::vector<std::pair<int, int>>& pairs)
{
    UnionFind u(c.num_morphisms());
    for (auto [a, b] : pairs) {
        if (c.src[a] != c.src[b] || c.tgt[a] != c.tgt[b])
            throw Error(ErrorKind::not_parallel, c.morphisms[a] + " and " + c.morphisms[b] + " are not parallel");
        u.unite(a, b);
    }
    for (bool again = true; again;) {
        again = false;
        std::map<std::pair<int, int>, int> seen;
        for (int f = 0; f < c.num_morphisms(); ++f)
            for (int g : c.out(c.tgt[f])) {
                int h = c.then(f, g);
                auto [it, fresh] = seen.emplace(std::pair{u.find(f), u.find(g)}, h);
                if (!fresh)
                    again |= u.unite(it->second, h);
            }
    }
    return {normalize_classes(u, c.num_morphisms())};
}

DblCongruence congruence_closure(const DoubleCategory& d, const std::vector<std::pair<int, int>>& pairs)
{
    UnionFind u(d.num_squares());
    for (auto [a, b] : pairs) {
        if (d.boundary(a) != d.boundary(b))
            throw Error(ErrorKind::not_parallel, d.squares()[a] + " and " + d.squares()[b] + " have different boundaries");
        u.unite(a, b);
    }
    for (bool again = true; again;) {
        again = false;
        for (int dir = 0; dir < 2; ++dir) {
            std::map<std::pair<int, int>, int> seen;
            for (int a = 0; a < d.num_squares(); ++a)
                for (int b : dir ? d.with_top(d.bottom(a)) : d.with_left(d.right[a])) {
                    int h = dir ? d.above(a, b) : d.beside(a, b);
                    auto [it, fresh] = seen.emplace(std::pair{u.find(a), u.find(b)}, h);
                    if (!fresh)
                        again |= u.unite(it->second, h);
                }
        }
    }
    return {normalize_classes(u, d.num_squares())};
}

} // namespace dbl
