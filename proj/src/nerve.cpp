#include "dbl/nerve.hpp"

#include <algorithm>
#include <functional>
#include <array>
#include <map>
#include <set>

namespace dbl {

namespace {

using Cells = std::vector<std::vector<int>>;
using Index = std::map<std::vector<int>, int>;

// A category-like graph whose composable strings make up one sort of a nerve.
struct Part {
    int nv = 0;
    std::vector<int> src, tgt, id;
    std::function<int(int, int)> comp;
    std::vector<std::vector<int>> out;

    void finish()
    {
        out.assign(nv, {});
        for (int e = 0; e < int(src.size()); ++e)
            out[src[e]].push_back(e);
    }
};

Cells strings(const Part& p, int k)
{
    Cells r;
    if (k == 0) {
        for (int v = 0; v < p.nv; ++v)
            r.push_back({v});
        return r;
    }
    std::vector<int> cur;
    std::function<void(int)> go = [&](int v) {
        if (int(cur.size()) == k) {
            r.push_back(cur);
            return;
        }
        for (int e : p.out[v]) {
            cur.push_back(e);
            go(p.tgt[e]);
            cur.pop_back();
        }
    };
    for (int e = 0; e < int(p.src.size()); ++e) {
        cur = {e};
        go(p.tgt[e]);
    }
    return r;
}

std::vector<int> face_of(const Part& p, const std::vector<int>& s, int k, int i)
{
    if (k == 1)
        return {i == 0 ? p.tgt[s[0]] : p.src[s[0]]};
    std::vector<int> r;
    for (int a = 0; a < k; ++a) {
        if ((i == 0 && a == 0) || (i == k && a == k - 1))
            continue;
        if (i > 0 && i < k && a == i - 1) {
            r.push_back(p.comp(s[a], s[a + 1]));
            ++a;
            continue;
        }
        r.push_back(s[a]);
    }
    return r;
}

std::vector<int> degen_of(const Part& p, const std::vector<int>& s, int k, int i)
{
    if (k == 0)
        return {p.id[s[0]]};
    int v = i < k ? p.src[s[i]] : p.tgt[s[k - 1]];
    auto r = s;
    r.insert(r.begin() + i, p.id[v]);
    return r;
}

Index index_of(const Cells& c)
{
    Index m;
    for (int i = 0; i < int(c.size()); ++i)
        m.emplace(c[i], i);
    return m;
}

int lookup(const Index& m, const std::vector<int>& s)
{
    auto it = m.find(s);
    if (it == m.end())
        throw Error(ErrorKind::invalid, "nerve: cell outside the target level");
    return it->second;
}

Id string_name(const std::vector<Id>& names, const std::vector<int>& s, int k)
{
    if (k <= 1)
        return names[s[0]];
    Id r = "(";
    for (std::size_t a = 0; a < s.size(); ++a)
        r += (a ? ", " : "") + names[s[a]];
    return r + ")";
}

std::vector<int> compose_maps(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = b[a[i]];
    return r;
}

std::vector<int> iota(int n)
{
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = i;
    return r;
}

// Faces and degeneracies from the cell strings of every level.
void add_operators(SimplicialTruncation& x, const Part& o, const Part& m)
{
    int n = x.max_level();
    std::vector<Index> oi, mi;
    for (int k = 0; k <= n; ++k) {
        oi.push_back(index_of(x.obj_cells[k]));
        mi.push_back(index_of(x.mor_cells[k]));
    }
    auto op = [&](int k, int to, auto fn) {
        Functor f{x.level[k], x.level[to], {}, {}};
        for (auto& s : x.obj_cells[k])
            f.obj.push_back(lookup(oi[to], fn(o, s)));
        for (auto& s : x.mor_cells[k])
            f.mor.push_back(lookup(mi[to], fn(m, s)));
        return f;
    };
    x.face.assign(n + 1, {});
    x.degen.assign(n + 1, {});
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            x.face[k].push_back(op(k, k - 1, [&](const Part& p, const std::vector<int>& s) { return face_of(p, s, k, i); }));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            x.degen[k].push_back(op(k, k + 1, [&](const Part& p, const std::vector<int>& s) { return degen_of(p, s, k, i); }));
}

void check_identities(int n, const std::function<const std::vector<int>&(int, int)>& F,
                      const std::function<const std::vector<int>&(int, int)>& S, const std::function<int(int)>& size,
                      const std::string& tag, std::vector<std::string>& out)
{
    auto eq = [&](const std::vector<int>& a, const std::vector<int>& b, const std::string& what) {
        if (a != b)
            out.push_back(tag + ": " + what);
    };
    for (int k = 2; k <= n; ++k)
        for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
                eq(compose_maps(F(k, j), F(k - 1, i)), compose_maps(F(k, i), F(k - 1, j - 1)),
                   "d" + std::to_string(i) + "d" + std::to_string(j) + " at level " + std::to_string(k));
    for (int k = 0; k + 1 <= n; ++k)
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i <= k + 1; ++i) {
                auto lhs = compose_maps(S(k, j), F(k + 1, i));
                std::string what = "d" + std::to_string(i) + "s" + std::to_string(j) + " at level " + std::to_string(k);
                if (i == j || i == j + 1)
                    eq(lhs, iota(size(k)), what);
                else if (i < j)
                    eq(lhs, compose_maps(F(k, i), S(k - 1, j - 1)), what);
                else
                    eq(lhs, compose_maps(F(k, i - 1), S(k - 1, j)), what);
            }
    for (int k = 0; k + 2 <= n; ++k)
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i <= j; ++i)
                eq(compose_maps(S(k, j), S(k + 1, i)), compose_maps(S(k, i), S(k + 1, j + 1)),
                   "s" + std::to_string(i) + "s" + std::to_string(j) + " at level " + std::to_string(k));
}

// Nerve levels from an object part (vertices: level-0 objects) and a morphism part
// (vertices: level-0 morphisms). Levels 0 and 1 are supplied.
struct NerveInput {
    std::shared_ptr<const FinCategory> l0, l1;
    Part o, m;
    std::vector<int> top, bottom, idv; // morphism-part edges -> object-part edges
    std::function<int(int, int)> above;
};

SimplicialTruncation build_nerve(const NerveInput& in, int n)
{
    SimplicialTruncation x;
    const auto& l0 = *in.l0;
    const auto& l1 = *in.l1;
    x.level.push_back(in.l0);
    x.obj_cells.push_back(strings(in.o, 0));
    x.mor_cells.push_back(strings(in.m, 0));
    if (n >= 1) {
        x.level.push_back(in.l1);
        x.obj_cells.push_back(strings(in.o, 1));
        x.mor_cells.push_back(strings(in.m, 1));
    }
    for (int k = 2; k <= n; ++k) {
        auto os = strings(in.o, k);
        auto ms = strings(in.m, k);
        auto oi = index_of(os);
        CategoryBuilder b;
        for (auto& s : os) {
            std::vector<int> ids;
            for (int f : s)
                ids.push_back(in.idv[f]);
            b.add_object(string_name(l1.objects, s, k), string_name(l1.morphisms, ids, k));
        }
        std::vector<int> mor_index(ms.size());
        std::vector<std::vector<int>> by_top(os.size());
        for (std::size_t t = 0; t < ms.size(); ++t) {
            std::vector<int> tp, bt;
            bool ident = true;
            for (int a : ms[t]) {
                tp.push_back(in.top[a]);
                bt.push_back(in.bottom[a]);
                ident = ident && in.idv[in.top[a]] == a;
            }
            int s = lookup(oi, tp);
            if (ident)
                mor_index[t] = b.identity(s);
            else
                mor_index[t] = b.add_morphism(string_name(l1.morphisms, ms[t], k), s, lookup(oi, bt));
            by_top[s].push_back(int(t));
        }
        // cells in builder order
        Cells mc(b.num_morphisms());
        for (std::size_t t = 0; t < ms.size(); ++t)
            mc[mor_index[t]] = ms[t];
        auto mi = index_of(mc);
        for (std::size_t t = 0; t < ms.size(); ++t) {
            std::vector<int> bt;
            for (int a : ms[t])
                bt.push_back(in.bottom[a]);
            for (int u : by_top[lookup(oi, bt)]) {
                std::vector<int> c;
                for (int a = 0; a < k; ++a)
                    c.push_back(in.above(ms[t][a], ms[u][a]));
                b.set_then(mor_index[t], mor_index[u], lookup(mi, c));
            }
        }
        x.level.push_back(std::make_shared<const FinCategory>(b.build()));
        x.obj_cells.push_back(std::move(os));
        x.mor_cells.push_back(std::move(mc));
    }
    (void)l0;
    add_operators(x, in.o, in.m);
    return x;
}

Part hor_part(const DoubleCategory& d)
{
    Part p;
    p.nv = d.num_objects();
    p.src = d.hor.src;
    p.tgt = d.hor.tgt;
    p.id = d.hor.ident;
    p.comp = [&h = d.hor](int a, int b) { return h.then(a, b); };
    p.finish();
    return p;
}

} // namespace

bool SimplicialTruncation::set_valued() const
{
    for (auto& l : level)
        if (l->num_morphisms() != l->num_objects())
            return false;
    return true;
}

std::vector<std::string> validate(const SimplicialTruncation& x)
{
    std::vector<std::string> out;
    int n = x.max_level();
    if (n < 0)
        return {"truncation: no levels"};
    if (int(x.face.size()) != n + 1 || int(x.degen.size()) != n + 1)
        return {"truncation: operator table has the wrong shape"};
    for (int k = 0; k <= n; ++k) {
        if (int(x.face[k].size()) != (k ? k + 1 : 0) || int(x.degen[k].size()) != (k < n ? k + 1 : 0))
            return {"truncation: wrong operator count at level " + std::to_string(k)};
        for (int i = 0; i < int(x.face[k].size()); ++i) {
            auto& f = x.face[k][i];
            if (f.source != x.level[k] || f.target != x.level[k - 1])
                out.push_back("face d" + std::to_string(i) + " at level " + std::to_string(k) + " has wrong ends");
            for (auto& m : validate(f))
                out.push_back("face d" + std::to_string(i) + " at level " + std::to_string(k) + ": " + m);
        }
        for (int i = 0; i < int(x.degen[k].size()); ++i) {
            auto& f = x.degen[k][i];
            if (f.source != x.level[k] || f.target != x.level[k + 1])
                out.push_back("degeneracy s" + std::to_string(i) + " at level " + std::to_string(k) + " has wrong ends");
            for (auto& m : validate(f))
                out.push_back("degeneracy s" + std::to_string(i) + " at level " + std::to_string(k) + ": " + m);
        }
    }
    if (!out.empty())
        return out;
    check_identities(
        n, [&](int k, int i) -> const std::vector<int>& { return x.face[k][i].obj; },
        [&](int k, int i) -> const std::vector<int>& { return x.degen[k][i].obj; },
        [&](int k) { return x.level[k]->num_objects(); }, "objects", out);
    check_identities(
        n, [&](int k, int i) -> const std::vector<int>& { return x.face[k][i].mor; },
        [&](int k, int i) -> const std::vector<int>& { return x.degen[k][i].mor; },
        [&](int k) { return x.level[k]->num_morphisms(); }, "morphisms", out);
    return out;
}

std::vector<std::string> validate(const TruncationMorphism& f)
{
    std::vector<std::string> out;
    const auto& x = *f.source;
    const auto& y = *f.target;
    int n = x.max_level();
    if (y.max_level() < n || int(f.level.size()) != n + 1)
        return {"truncation morphism: level count mismatch"};
    for (int k = 0; k <= n; ++k) {
        for (auto& m : validate(f.level[k]))
            out.push_back("level " + std::to_string(k) + ": " + m);
        if (f.level[k].source != x.level[k] || f.level[k].target != y.level[k])
            out.push_back("level " + std::to_string(k) + ": wrong ends");
    }
    if (!out.empty())
        return out;
    auto same = [](const Functor& a, const Functor& b) { return a.obj == b.obj && a.mor == b.mor; };
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            if (!same(compose(x.face[k][i], f.level[k - 1]), compose(f.level[k], y.face[k][i])))
                out.push_back("does not commute with d" + std::to_string(i) + " at level " + std::to_string(k));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            if (!same(compose(x.degen[k][i], f.level[k + 1]), compose(f.level[k], y.degen[k][i])))
                out.push_back("does not commute with s" + std::to_string(i) + " at level " + std::to_string(k));
    return out;
}

SimplicialTruncation nerve_cat(const FinCategory& c, int n)
{
    Part o;
    o.nv = c.num_objects();
    o.src = c.src;
    o.tgt = c.tgt;
    o.id = c.ident;
    auto cp = std::make_shared<const FinCategory>(c);
    o.comp = [cp](int a, int b) { return cp->then(a, b); };
    o.finish();
    SimplicialTruncation x;
    for (int k = 0; k <= n; ++k) {
        auto os = strings(o, k);
        std::vector<Id> names;
        for (auto& s : os)
            names.push_back(string_name(k == 0 ? c.objects : c.morphisms, s, k));
        x.level.push_back(std::make_shared<const FinCategory>(discrete(names)));
        x.mor_cells.push_back(Cells(os.size()));
        x.obj_cells.push_back(std::move(os));
    }
    // discrete levels: morphisms follow objects
    x.face.assign(n + 1, {});
    x.degen.assign(n + 1, {});
    std::vector<Index> oi;
    for (int k = 0; k <= n; ++k)
        oi.push_back(index_of(x.obj_cells[k]));
    auto op = [&](int k, int to, auto fn) {
        Functor f{x.level[k], x.level[to], {}, {}};
        for (auto& s : x.obj_cells[k])
            f.obj.push_back(lookup(oi[to], fn(s)));
        for (int a : f.obj)
            f.mor.push_back(x.level[to]->ident[a]);
        return f;
    };
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            x.face[k].push_back(op(k, k - 1, [&](const std::vector<int>& s) { return face_of(o, s, k, i); }));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            x.degen[k].push_back(op(k, k + 1, [&](const std::vector<int>& s) { return degen_of(o, s, k, i); }));
    for (int k = 0; k <= n; ++k)
        for (int a = 0; a < x.level[k]->num_objects(); ++a)
            x.mor_cells[k][x.level[k]->ident[a]] = x.obj_cells[k][a];
    return x;
}

SimplicialTruncation horizontal_nerve(const DoubleCategory& d, int n)
{
    auto dp = std::make_shared<const DoubleCategory>(d);
    NerveInput in;
    in.l0 = std::make_shared<const FinCategory>(dp->ver);
    in.l1 = std::make_shared<const FinCategory>(dp->sq);
    in.o = hor_part(*dp);
    in.m.nv = dp->ver.num_morphisms();
    in.m.src = dp->left;
    in.m.tgt = dp->right;
    in.m.id = dp->idh;
    in.m.comp = [dp](int a, int b) { return dp->beside(a, b); };
    in.m.finish();
    for (int a = 0; a < dp->num_squares(); ++a) {
        in.top.push_back(dp->top(a));
        in.bottom.push_back(dp->bottom(a));
    }
    for (int f = 0; f < dp->hor.num_morphisms(); ++f)
        in.idv.push_back(dp->idv(f));
    in.above = [dp](int a, int b) { return dp->above(a, b); };
    return build_nerve(in, n);
}

SimplicialTruncation vertical_nerve(const DoubleCategory& d, int n) { return horizontal_nerve(transpose(d), n); }

TruncationMorphism horizontal_nerve(const DoubleFunctor& f, std::shared_ptr<const SimplicialTruncation> src,
                                    std::shared_ptr<const SimplicialTruncation> tgt)
{
    TruncationMorphism r{src, tgt, {}};
    for (int k = 0; k <= src->max_level(); ++k) {
        auto oi = index_of(tgt->obj_cells[k]);
        auto mi = index_of(tgt->mor_cells[k]);
        const auto& om = k == 0 ? f.obj : f.hor;
        const auto& mm = k == 0 ? f.ver : f.sq;
        Functor g{src->level[k], tgt->level[k], {}, {}};
        for (auto& s : src->obj_cells[k]) {
            std::vector<int> t;
            for (int a : s)
                t.push_back(om[a]);
            g.obj.push_back(lookup(oi, t));
        }
        for (auto& s : src->mor_cells[k]) {
            std::vector<int> t;
            for (int a : s)
                t.push_back(mm[a]);
            g.mor.push_back(lookup(mi, t));
        }
        r.level.push_back(std::move(g));
    }
    return r;
}

SimplicialTruncation truncate(const SimplicialTruncation& x, int n)
{
    if (n > x.max_level())
        throw Error(ErrorKind::invalid, "truncate: level above the truncation");
    SimplicialTruncation r;
    r.level.assign(x.level.begin(), x.level.begin() + n + 1);
    r.face.assign(x.face.begin(), x.face.begin() + n + 1);
    r.degen.assign(x.degen.begin(), x.degen.begin() + n + 1);
    r.degen[n].clear();
    if (!x.obj_cells.empty()) {
        r.obj_cells.assign(x.obj_cells.begin(), x.obj_cells.begin() + n + 1);
        r.mor_cells.assign(x.mor_cells.begin(), x.mor_cells.begin() + n + 1);
    }
    return r;
}

SimplicialTruncation constant_truncation(const FinCategory& a, int n)
{
    auto ap = std::make_shared<const FinCategory>(a);
    SimplicialTruncation x;
    x.level.assign(n + 1, ap);
    x.face.assign(n + 1, {});
    x.degen.assign(n + 1, {});
    for (int k = 1; k <= n; ++k)
        x.face[k].assign(k + 1, identity_functor(ap));
    for (int k = 0; k < n; ++k)
        x.degen[k].assign(k + 1, identity_functor(ap));
    return x;
}

SimplicialTruncation product(const SimplicialTruncation& x, const SimplicialTruncation& y)
{
    int n = std::min(x.max_level(), y.max_level());
    SimplicialTruncation r;
    std::vector<std::vector<int>> morid;
    for (int k = 0; k <= n; ++k) {
        const auto& a = *x.level[k];
        const auto& b = *y.level[k];
        auto p = std::make_shared<const FinCategory>(product(a, b));
        std::vector<int> ids(a.num_morphisms() * b.num_morphisms());
        for (int f = 0; f < a.num_morphisms(); ++f)
            for (int g = 0; g < b.num_morphisms(); ++g)
                ids[f * b.num_morphisms() + g] = p->morphism("(" + a.morphisms[f] + "," + b.morphisms[g] + ")");
        r.level.push_back(p);
        morid.push_back(std::move(ids));
    }
    auto pair_functor = [&](const Functor& f, const Functor& g, int from, int to) {
        Functor h{r.level[from], r.level[to], {}, {}};
        int nb = y.level[from]->num_objects(), nbt = y.level[to]->num_objects();
        int mb = y.level[from]->num_morphisms(), mbt = y.level[to]->num_morphisms();
        for (int u = 0; u < r.level[from]->num_objects(); ++u)
            h.obj.push_back(f.obj[u / nb] * nbt + g.obj[u % nb]);
        std::vector<int> inv(r.level[from]->num_morphisms());
        for (int u = 0; u < int(morid[from].size()); ++u)
            inv[morid[from][u]] = u;
        for (int m = 0; m < r.level[from]->num_morphisms(); ++m) {
            int u = inv[m];
            h.mor.push_back(morid[to][f.mor[u / mb] * mbt + g.mor[u % mb]]);
        }
        return h;
    };
    r.face.assign(n + 1, {});
    r.degen.assign(n + 1, {});
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            r.face[k].push_back(pair_functor(x.face[k][i], y.face[k][i], k, k - 1));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            r.degen[k].push_back(pair_functor(x.degen[k][i], y.degen[k][i], k, k + 1));
    return r;
}

SimplicialTruncation simplicial_set(const SimplexLikeComplex& c, int n)
{
    auto simp = c.simplices();
    std::set<std::vector<int>> allowed(simp.begin(), simp.end());
    SimplicialTruncation x;
    std::vector<Cells> seqs;
    for (int k = 0; k <= n; ++k) {
        Cells level;
        std::vector<int> cur;
        std::function<void(int)> go = [&](int lo) {
            if (int(cur.size()) == k + 1) {
                std::vector<int> sup = cur;
                sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
                if (allowed.count(sup))
                    level.push_back(cur);
                return;
            }
            for (int v = lo; v <= c.m; ++v) {
                cur.push_back(v);
                go(v);
                cur.pop_back();
            }
        };
        go(0);
        std::vector<Id> names;
        for (auto& s : level) {
            Id nm;
            for (int v : s)
                nm += std::to_string(v);
            names.push_back(nm);
        }
        x.level.push_back(std::make_shared<const FinCategory>(discrete(names)));
        seqs.push_back(std::move(level));
    }
    x.face.assign(n + 1, {});
    x.degen.assign(n + 1, {});
    auto op = [&](int k, int to, auto fn) {
        auto idx = index_of(seqs[to]);
        Functor f{x.level[k], x.level[to], {}, {}};
        for (auto& s : seqs[k])
            f.obj.push_back(lookup(idx, fn(s)));
        f.mor = f.obj;
        return f;
    };
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            x.face[k].push_back(op(k, k - 1, [i](std::vector<int> s) {
                s.erase(s.begin() + i);
                return s;
            }));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            x.degen[k].push_back(op(k, k + 1, [i](std::vector<int> s) {
                s.insert(s.begin() + i, s[i]);
                return s;
            }));
    return x;
}

std::vector<std::string> validate(const BisimplicialTruncation& x)
{
    std::vector<std::string> out;
    int m = x.max_p, n = x.max_q;
    for (int q = 0; q <= n; ++q)
        check_identities(
            m, [&](int k, int i) -> const std::vector<int>& { return x.vface[k][q][i]; },
            [&](int k, int i) -> const std::vector<int>& { return x.vdegen[k][q][i]; },
            [&](int k) { return x.size(k, q); }, "vertical, column degree " + std::to_string(q), out);
    for (int p = 0; p <= m; ++p)
        check_identities(
            n, [&](int k, int i) -> const std::vector<int>& { return x.hface[p][k][i]; },
            [&](int k, int i) -> const std::vector<int>& { return x.hdegen[p][k][i]; },
            [&](int k) { return x.size(p, k); }, "horizontal, row degree " + std::to_string(p), out);
    auto eq = [&](const std::vector<int>& a, const std::vector<int>& b, const std::string& what) {
        if (a != b)
            out.push_back("interchange: " + what);
    };
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= n; ++q) {
            auto at = " at (" + std::to_string(p) + "," + std::to_string(q) + ")";
            for (int i = 0; p > 0 && i <= p; ++i)
                for (int j = 0; q > 0 && j <= q; ++j)
                    eq(compose_maps(x.vface[p][q][i], x.hface[p - 1][q][j]),
                       compose_maps(x.hface[p][q][j], x.vface[p][q - 1][i]), "faces" + at);
            for (int i = 0; p < m && i <= p; ++i)
                for (int j = 0; q < n && j <= q; ++j)
                    eq(compose_maps(x.vdegen[p][q][i], x.hdegen[p + 1][q][j]),
                       compose_maps(x.hdegen[p][q][j], x.vdegen[p][q + 1][i]), "degeneracies" + at);
            for (int i = 0; p > 0 && i <= p; ++i)
                for (int j = 0; q < n && j <= q; ++j)
                    eq(compose_maps(x.vface[p][q][i], x.hdegen[p - 1][q][j]),
                       compose_maps(x.hdegen[p][q][j], x.vface[p][q + 1][i]), "vertical face, horizontal degeneracy" + at);
            for (int i = 0; p < m && i <= p; ++i)
                for (int j = 0; q > 0 && j <= q; ++j)
                    eq(compose_maps(x.vdegen[p][q][i], x.hface[p + 1][q][j]),
                       compose_maps(x.hface[p][q][j], x.vdegen[p][q - 1][i]), "horizontal face, vertical degeneracy" + at);
        }
    return out;
}

BisimplicialTruncation double_nerve(const DoubleCategory& d, int m, int n)
{
    auto h = horizontal_nerve(d, n);
    std::vector<SimplicialTruncation> rows;
    for (int q = 0; q <= n; ++q)
        rows.push_back(nerve_cat(*h.level[q], m));
    BisimplicialTruncation x;
    x.max_p = m;
    x.max_q = n;
    x.names.assign(m + 1, std::vector<std::vector<Id>>(n + 1));
    x.vface.assign(m + 1, std::vector<std::vector<std::vector<int>>>(n + 1));
    x.hface = x.vdegen = x.hdegen = x.vface;
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= n; ++q) {
            const auto& r = rows[q];
            x.names[p][q] = r.level[p]->objects;
            for (auto& f : r.face[p])
                x.vface[p][q].push_back(f.obj);
            for (auto& f : r.degen[p])
                x.vdegen[p][q].push_back(f.obj);
            auto horiz = [&](const Functor& g, int to) {
                auto idx = index_of(rows[to].obj_cells[p]);
                std::vector<int> res;
                for (auto& s : r.obj_cells[p]) {
                    std::vector<int> t;
                    for (int a : s)
                        t.push_back(p == 0 ? g.obj[a] : g.mor[a]);
                    res.push_back(lookup(idx, t));
                }
                return res;
            };
            for (int j = 0; q > 0 && j <= q; ++j)
                x.hface[p][q].push_back(horiz(h.face[q][j], q - 1));
            for (int j = 0; q < n && j <= q; ++j)
                x.hdegen[p][q].push_back(horiz(h.degen[q][j], q + 1));
        }
    return x;
}

SimplicialTruncation diag_nerve(const DoubleCategory& d, int k)
{
    auto b = double_nerve(d, k, k);
    SimplicialTruncation x;
    for (int j = 0; j <= k; ++j)
        x.level.push_back(std::make_shared<const FinCategory>(discrete(b.names[j][j])));
    x.face.assign(k + 1, {});
    x.degen.assign(k + 1, {});
    auto op = [&](int from, int to, std::vector<int> map) {
        Functor f{x.level[from], x.level[to], map, map};
        return f;
    };
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i <= j; ++i)
            x.face[j].push_back(op(j, j - 1, compose_maps(b.hface[j][j][i], b.vface[j][j - 1][i])));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i <= j; ++i)
            x.degen[j].push_back(op(j, j + 1, compose_maps(b.hdegen[j][j][i], b.vdegen[j][j + 1][i])));
    return x;
}

namespace {

// Faces of level-n elements on every triple i < j < k, for one sort.
bool coskeletal_sort(int n, const std::function<const std::vector<int>&(int, int)>& F, int size_n, int size_2)
{
    std::vector<std::array<int, 3>> triples;
    for (int k = 2; k <= n; ++k)
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i)
                triples.push_back({i, j, k});
    std::set<std::vector<int>> images;
    std::vector<std::vector<int>> per_triple;
    for (auto& t : triples) {
        std::vector<int> cur = iota(size_n);
        int lvl = n;
        for (int v = n; v >= 0; --v) {
            if (v == t[0] || v == t[1] || v == t[2])
                continue;
            cur = compose_maps(cur, F(lvl, v));
            --lvl;
        }
        per_triple.push_back(std::move(cur));
    }
    for (int e = 0; e < size_n; ++e) {
        std::vector<int> fam;
        for (auto& p : per_triple)
            fam.push_back(p[e]);
        images.insert(fam);
    }
    if (int(images.size()) != size_n)
        return false; // not injective
    const auto& d0 = F(2, 0);
    const auto& d1 = F(2, 1);
    const auto& d2 = F(2, 2);
    std::map<int, std::vector<int>> by_d2;
    for (int t = 0; t < size_2; ++t)
        by_d2[d2[t]].push_back(t);
    std::vector<std::vector<int>> edge(n + 1, std::vector<int>(n + 1, -1));
    long count = 0;
    std::function<bool(std::size_t)> go = [&](std::size_t pos) {
        if (pos == triples.size())
            return ++count <= size_n;
        auto [i, j, k] = triples[pos];
        auto visit = [&](int t) {
            int& eij = edge[i][j];
            int& eik = edge[i][k];
            int& ejk = edge[j][k];
            if ((eij >= 0 && eij != d2[t]) || (eik >= 0 && eik != d1[t]) || (ejk >= 0 && ejk != d0[t]))
                return true;
            int s0 = eij, s1 = eik, s2 = ejk;
            eij = d2[t];
            eik = d1[t];
            ejk = d0[t];
            bool ok = go(pos + 1);
            eij = s0;
            eik = s1;
            ejk = s2;
            return ok;
        };
        if (edge[i][j] >= 0) {
            auto it = by_d2.find(edge[i][j]);
            if (it != by_d2.end())
                for (int t : it->second)
                    if (!visit(t))
                        return false;
        } else {
            for (int t = 0; t < size_2; ++t)
                if (!visit(t))
                    return false;
        }
        return true;
    };
    go(0);
    return count == size_n;
}

} // namespace

bool check_2coskeletal(const SimplicialTruncation& x, int n)
{
    if (n < 3 || x.max_level() < n)
        throw Error(ErrorKind::invalid, "check_2coskeletal: needs 3 <= n <= max level");
    return coskeletal_sort(
               n, [&](int k, int i) -> const std::vector<int>& { return x.face[k][i].obj; },
               x.level[n]->num_objects(), x.level[2]->num_objects()) &&
           coskeletal_sort(
               n, [&](int k, int i) -> const std::vector<int>& { return x.face[k][i].mor; },
               x.level[n]->num_morphisms(), x.level[2]->num_morphisms());
}

bool check_2coskeletal(const DoubleCategory& d, int n) { return check_2coskeletal(horizontal_nerve(d, n), n); }

} // namespace dbl
