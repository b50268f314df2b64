#include "dbl/double.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dbl {

std::vector<int> DoubleCategory::squares_with(const Boundary& b) const
{
    std::vector<int> r;
    for (int a : sq.out(b.top))
        if (sq.tgt[a] == b.bottom && left[a] == b.left && right[a] == b.right)
            r.push_back(a);
    return r;
}

void DoubleCategory::reset_beside()
{
    int nv = ver.num_morphisms(), ns = num_squares();
    byleft_.assign(nv, {});
    leftpos_.assign(ns, -1);
    for (int a = 0; a < ns; ++a) {
        leftpos_[a] = int(byleft_[left[a]].size());
        byleft_[left[a]].push_back(a);
    }
    hcomp_.assign(ns, {});
    for (int a = 0; a < ns; ++a)
        hcomp_[a].assign(byleft_[right[a]].size(), -1);
}

bool DoubleCategory::operator==(const DoubleCategory& o) const
{
    return hor == o.hor && ver == o.ver && sq == o.sq && left == o.left && right == o.right && idh == o.idh &&
           hcomp_ == o.hcomp_;
}

DoubleBuilder::DoubleBuilder(FinCategory hor, FinCategory ver)
    : hor_(std::move(hor)), ver_(std::move(ver)), idv_(hor_.num_morphisms(), -1), idh_(ver_.num_morphisms(), -1)
{
}

int DoubleBuilder::add_square(const Id& name, const Boundary& b)
{
    names_.push_back(name);
    bd_.push_back(b);
    return int(names_.size()) - 1;
}

void DoubleBuilder::add_identity_squares()
{
    for (int a = 0; a < hor_.num_objects(); ++a) {
        int h = hor_.ident[a], v = ver_.ident[a];
        if (idv_[h] >= 0 && idh_[v] < 0)
            idh_[v] = idv_[h];
        else if (idh_[v] >= 0 && idv_[h] < 0)
            idv_[h] = idh_[v];
        else if (idv_[h] < 0) {
            int s = add_square("i(" + hor_.objects[a] + ")", {h, h, v, v});
            idv_[h] = idh_[v] = s;
        }
    }
    for (int f = 0; f < hor_.num_morphisms(); ++f)
        if (idv_[f] < 0)
            idv_[f] = add_square("iv(" + hor_.morphisms[f] + ")",
                                 {f, f, ver_.ident[hor_.src[f]], ver_.ident[hor_.tgt[f]]});
    for (int v = 0; v < ver_.num_morphisms(); ++v)
        if (idh_[v] < 0)
            idh_[v] = add_square("ih(" + ver_.morphisms[v] + ")",
                                 {hor_.ident[ver_.src[v]], hor_.ident[ver_.tgt[v]], v, v});
}

DoubleCategory DoubleBuilder::build(bool require_total)
{
    DoubleCategory d;
    d.hor = hor_;
    d.ver = ver_;
    FinCategory& s = d.sq;
    s.objects = hor_.morphisms;
    s.morphisms = names_;
    for (auto& b : bd_) {
        s.src.push_back(b.top);
        s.tgt.push_back(b.bottom);
        d.left.push_back(b.left);
        d.right.push_back(b.right);
    }
    for (int f = 0; f < hor_.num_morphisms(); ++f)
        if (idv_[f] < 0)
            throw Error(ErrorKind::invalid, "no vertical identity square on " + hor_.morphisms[f]);
    for (int v = 0; v < ver_.num_morphisms(); ++v)
        if (idh_[v] < 0)
            throw Error(ErrorKind::invalid, "no horizontal identity square on " + ver_.morphisms[v]);
    s.ident = idv_;
    d.idh = idh_;
    s.reset_table();
    d.reset_beside();
    int ns = int(names_.size());
    for (int a = 0; a < ns; ++a) {
        for (int b : s.out(s.tgt[a])) {
            if (b == idv_[s.tgt[a]])
                s.set_then(a, b, a);
            else if (a == idv_[s.src[a]])
                s.set_then(a, b, b);
        }
        for (int b : d.with_left(d.right[a])) {
            if (b == idh_[d.right[a]])
                d.set_beside(a, b, a);
            else if (a == idh_[d.left[a]])
                d.set_beside(a, b, b);
        }
    }
    // identity squares compose like their boundaries
    for (int f = 0; f < hor_.num_morphisms(); ++f)
        for (int g : hor_.out(hor_.tgt[f])) {
            int a = idv_[f], b = idv_[g];
            if (d.right[a] == d.left[b])
                d.set_beside(a, b, idv_[hor_.then(f, g)]);
        }
    for (int v = 0; v < ver_.num_morphisms(); ++v)
        for (int w : ver_.out(ver_.tgt[v])) {
            int a = idh_[v], b = idh_[w];
            if (s.tgt[a] == s.src[b])
                s.set_then(a, b, idh_[ver_.then(v, w)]);
        }
    for (auto [a, b, c] : above_) {
        if (s.tgt[a] != s.src[b])
            throw Error(ErrorKind::invalid, "vertical composite of non-composable squares " + names_[a] + ", " + names_[b]);
        s.set_then(a, b, c);
    }
    for (auto [a, b, c] : beside_) {
        if (d.right[a] != d.left[b])
            throw Error(ErrorKind::invalid, "horizontal composite of non-composable squares " + names_[a] + ", " + names_[b]);
        d.set_beside(a, b, c);
    }
    if (require_total) {
        for (int a = 0; a < ns; ++a) {
            for (int b : s.out(s.tgt[a]))
                if (s.then(a, b) < 0)
                    throw Error(ErrorKind::invalid, "missing vertical composite " + names_[a] + " / " + names_[b]);
            for (int b : d.with_left(d.right[a]))
                if (d.beside(a, b) < 0)
                    throw Error(ErrorKind::invalid, "missing horizontal composite [" + names_[a] + " " + names_[b] + "]");
        }
    }
    return d;
}

DoubleFunctor identity_double_functor(std::shared_ptr<const DoubleCategory> d)
{
    DoubleFunctor f;
    f.source = f.target = d;
    for (int i = 0; i < d->num_objects(); ++i)
        f.obj.push_back(i);
    for (int i = 0; i < d->hor.num_morphisms(); ++i)
        f.hor.push_back(i);
    for (int i = 0; i < d->ver.num_morphisms(); ++i)
        f.ver.push_back(i);
    for (int i = 0; i < d->num_squares(); ++i)
        f.sq.push_back(i);
    return f;
}

DoubleFunctor compose(const DoubleFunctor& f, const DoubleFunctor& g)
{
    DoubleFunctor h;
    h.source = f.source;
    h.target = g.target;
    for (int x : f.obj) h.obj.push_back(g.obj[x]);
    for (int x : f.hor) h.hor.push_back(g.hor[x]);
    for (int x : f.ver) h.ver.push_back(g.ver[x]);
    for (int x : f.sq) h.sq.push_back(g.sq[x]);
    return h;
}

std::vector<std::string> validate(const DoubleGraph1Id& g)
{
    std::vector<std::string> d;
    for (auto& m : validate(g.hor)) d.push_back("horizontal " + m);
    for (auto& m : validate(g.ver)) d.push_back("vertical " + m);
    if (g.hor.graph.vertices != g.objects || g.ver.graph.vertices != g.objects)
        d.push_back("objects: 1-graphs must share the object set");
    if (!d.empty())
        return d;
    if (g.boundary.size() != g.squares.size())
        return {"shape: boundary table size"};
    auto& he = g.hor.graph.edges;
    auto& ve = g.ver.graph.edges;
    for (std::size_t a = 0; a < g.squares.size(); ++a) {
        auto b = g.boundary[a];
        auto bad = [](int x, std::size_t n) { return x < 0 || x >= int(n); };
        if (bad(b.top, he.size()) || bad(b.bottom, he.size()) || bad(b.left, ve.size()) || bad(b.right, ve.size())) {
            d.push_back("boundary: square " + g.squares[a] + " references an undeclared edge");
            continue;
        }
        if (he[b.top].src != ve[b.left].src || he[b.top].tgt != ve[b.right].src || he[b.bottom].src != ve[b.left].tgt ||
            he[b.bottom].tgt != ve[b.right].tgt)
            d.push_back("corners: square " + g.squares[a]);
    }
    return d;
}

std::vector<std::string> validate(const DoubleDerivationScheme& s)
{
    std::vector<std::string> d;
    for (auto& m : validate(s.hor)) d.push_back("horizontal " + m);
    for (auto& m : validate(s.ver)) d.push_back("vertical " + m);
    if (s.hor.objects != s.ver.objects)
        d.push_back("objects: 1-categories must share the object set");
    if (!d.empty())
        return d;
    for (auto& m : validate(underlying_double_graph(s)))
        d.push_back(m);
    return d;
}

namespace {

void check_boundaries(const DoubleCategory& D, std::vector<std::string>& d)
{
    const auto &H = D.hor, &V = D.ver, &S = D.sq;
    for (int a = 0; a < D.num_squares(); ++a) {
        int t = S.src[a], b = S.tgt[a], l = D.left[a], r = D.right[a];
        if (H.src[t] != V.src[l] || H.tgt[t] != V.src[r] || H.src[b] != V.tgt[l] || H.tgt[b] != V.tgt[r])
            d.push_back("corners: " + S.morphisms[a]);
    }
    for (int f = 0; f < H.num_morphisms(); ++f) {
        int a = D.idv(f);
        if (D.left[a] != V.ident[H.src[f]] || D.right[a] != V.ident[H.tgt[f]])
            d.push_back("identity-boundary: iv of " + H.morphisms[f]);
    }
    for (int v = 0; v < V.num_morphisms(); ++v) {
        int a = D.idh[v];
        if (a < 0 || a >= D.num_squares()) {
            d.push_back("identity-boundary: ih of " + V.morphisms[v] + " missing");
            continue;
        }
        if (D.left[a] != v || D.right[a] != v || S.src[a] != H.ident[V.src[v]] || S.tgt[a] != H.ident[V.tgt[v]])
            d.push_back("identity-boundary: ih of " + V.morphisms[v]);
    }
}

template <class Body>
std::vector<std::string> sweep(int n, Exec exec, Body body)
{
    std::vector<std::vector<std::string>> per(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int a = 0; a < n; ++a)
            body(a, per[a]);
    } else {
        for (int a = 0; a < n; ++a)
            body(a, per[a]);
    }
    std::vector<std::string> out;
    for (auto& v : per)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

} // namespace

std::vector<std::string> validate(const DoubleCategory& D, Exec exec)
{
    std::vector<std::string> d;
    for (auto& m : validate(D.hor)) d.push_back("horizontal " + m);
    for (auto& m : validate(D.ver)) d.push_back("vertical " + m);
    if (D.hor.objects != D.ver.objects)
        d.push_back("objects: 1-categories must share the object set");
    if (D.sq.objects != D.hor.morphisms)
        d.push_back("shape: square category must be indexed by horizontal morphisms");
    if (int(D.left.size()) != D.num_squares() || int(D.right.size()) != D.num_squares() ||
        int(D.idh.size()) != D.ver.num_morphisms())
        d.push_back("shape: square tables have wrong size");
    if (!d.empty())
        return d;
    for (auto& m : validate(D.sq)) d.push_back("vertical-square " + m);
    check_boundaries(D, d);
    if (!d.empty())
        return d;
    const auto &H = D.hor, &V = D.ver, &S = D.sq;
    int ns = D.num_squares();
    auto nm = [&](int a) { return S.morphisms[a]; };

    // vertical pasting boundaries
    for (int a = 0; a < ns; ++a)
        for (int b : D.with_top(D.bottom(a))) {
            int c = D.above(a, b);
            if (D.left[c] != V.then(D.left[a], D.left[b]) || D.right[c] != V.then(D.right[a], D.right[b]))
                d.push_back("vertical-boundary: " + nm(a) + " / " + nm(b));
        }
    // horizontal pasting: totality, boundaries, units
    for (int a = 0; a < ns; ++a)
        for (int b : D.with_left(D.right[a])) {
            int c = D.beside(a, b);
            if (c < 0) {
                d.push_back("horizontal-total: [" + nm(a) + " " + nm(b) + "]");
                continue;
            }
            if (D.left[c] != D.left[a] || D.right[c] != D.right[b] || D.top(c) != H.then(D.top(a), D.top(b)) ||
                D.bottom(c) != H.then(D.bottom(a), D.bottom(b)))
                d.push_back("horizontal-boundary: [" + nm(a) + " " + nm(b) + "]");
        }
    if (!d.empty())
        return d;
    for (int a = 0; a < ns; ++a) {
        if (D.beside(D.idh[D.left[a]], a) != a || D.beside(a, D.idh[D.right[a]]) != a)
            d.push_back("horizontal-unit: " + nm(a));
    }
    for (int f = 0; f < H.num_morphisms(); ++f)
        for (int g : H.out(H.tgt[f]))
            if (D.beside(D.idv(f), D.idv(g)) != D.idv(H.then(f, g)))
                d.push_back("identity-functoriality: iv of " + H.morphisms[f] + " ; " + H.morphisms[g]);
    for (int v = 0; v < V.num_morphisms(); ++v)
        for (int w : V.out(V.tgt[v]))
            if (D.above(D.idh[v], D.idh[w]) != D.idh[V.then(v, w)])
                d.push_back("identity-functoriality: ih of " + V.morphisms[v] + " ; " + V.morphisms[w]);
    for (int x = 0; x < D.num_objects(); ++x)
        if (D.idh[V.ident[x]] != D.idv(H.ident[x]))
            d.push_back("identity-functoriality: object " + D.objects()[x]);

    auto assoc = sweep(ns, exec, [&](int a, std::vector<std::string>& out) {
        for (int b : D.with_left(D.right[a]))
            for (int c : D.with_left(D.right[b]))
                if (D.beside(D.beside(a, b), c) != D.beside(a, D.beside(b, c)))
                    out.push_back("horizontal-associativity: " + nm(a) + ", " + nm(b) + ", " + nm(c));
    });
    d.insert(d.end(), assoc.begin(), assoc.end());
    auto inter = sweep(ns, exec, [&](int a, std::vector<std::string>& out) {
        for (int b : D.with_left(D.right[a]))
            for (int c : D.with_top(D.bottom(a)))
                for (int e : D.with_top(D.bottom(b))) {
                    if (D.left[e] != D.right[c])
                        continue;
                    int lhs = D.above(D.beside(a, b), D.beside(c, e));
                    int rhs = D.beside(D.above(a, c), D.above(b, e));
                    if (lhs != rhs)
                        out.push_back("interchange: " + nm(a) + ", " + nm(b) + ", " + nm(c) + ", " + nm(e));
                }
    });
    d.insert(d.end(), inter.begin(), inter.end());
    return d;
}

std::vector<std::string> validate(const DoubleFunctor& F)
{
    const auto& A = *F.source;
    const auto& B = *F.target;
    if (int(F.obj.size()) != A.num_objects() || int(F.hor.size()) != A.hor.num_morphisms() ||
        int(F.ver.size()) != A.ver.num_morphisms() || int(F.sq.size()) != A.num_squares())
        return {"shape: functor tables have wrong size"};
    std::vector<std::string> d;
    for (auto& m : validate(functor_h(F))) d.push_back("horizontal " + m);
    for (auto& m : validate(functor_v(F))) d.push_back("vertical " + m);
    if (!d.empty())
        return d;
    for (int a = 0; a < A.num_squares(); ++a) {
        int b = F.sq[a];
        if (b < 0 || b >= B.num_squares()) {
            d.push_back("range: square " + A.squares()[a]);
            continue;
        }
        if (B.top(b) != F.hor[A.top(a)] || B.bottom(b) != F.hor[A.bottom(a)] || B.left[b] != F.ver[A.left[a]] ||
            B.right[b] != F.ver[A.right[a]])
            d.push_back("boundary: square " + A.squares()[a]);
    }
    if (!d.empty())
        return d;
    for (int f = 0; f < A.hor.num_morphisms(); ++f)
        if (F.sq[A.idv(f)] != B.idv(F.hor[f]))
            d.push_back("identity: iv of " + A.hor.morphisms[f]);
    for (int v = 0; v < A.ver.num_morphisms(); ++v)
        if (F.sq[A.idh[v]] != B.idh[F.ver[v]])
            d.push_back("identity: ih of " + A.ver.morphisms[v]);
    for (int a = 0; a < A.num_squares(); ++a) {
        for (int b : A.with_top(A.bottom(a)))
            if (F.sq[A.above(a, b)] != B.above(F.sq[a], F.sq[b]))
                d.push_back("vertical-composition: " + A.squares()[a] + " / " + A.squares()[b]);
        for (int b : A.with_left(A.right[a]))
            if (F.sq[A.beside(a, b)] != B.beside(F.sq[a], F.sq[b]))
                d.push_back("horizontal-composition: [" + A.squares()[a] + " " + A.squares()[b] + "]");
    }
    return d;
}

std::vector<std::string> validate(const HNatTransf& t)
{
    const auto& F = *t.source;
    const auto& G = *t.target;
    const auto& A = *F.source;
    const auto& B = *F.target;
    if (F.source != G.source || F.target != G.target)
        return {"shape: functors must be parallel"};
    if (int(t.obj.size()) != A.num_objects() || int(t.ver.size()) != A.ver.num_morphisms())
        return {"shape: component tables have wrong size"};
    std::vector<std::string> d;
    for (int x = 0; x < A.num_objects(); ++x) {
        int f = t.obj[x];
        if (f < 0 || B.hor.src[f] != F.obj[x] || B.hor.tgt[f] != G.obj[x])
            d.push_back("component: object " + A.objects()[x]);
    }
    for (int j = 0; j < A.ver.num_morphisms(); ++j) {
        int s = t.ver[j];
        if (s < 0 || B.top(s) != t.obj[A.ver.src[j]] || B.bottom(s) != t.obj[A.ver.tgt[j]] ||
            B.left[s] != F.ver[j] || B.right[s] != G.ver[j])
            d.push_back("component: vertical " + A.ver.morphisms[j]);
    }
    if (!d.empty())
        return d;
    for (int x = 0; x < A.num_objects(); ++x)
        if (t.ver[A.ver.ident[x]] != B.idv(t.obj[x]))
            d.push_back("identity: object " + A.objects()[x]);
    for (int j = 0; j < A.ver.num_morphisms(); ++j)
        for (int k : A.ver.out(A.ver.tgt[j]))
            if (t.ver[A.ver.then(j, k)] != B.above(t.ver[j], t.ver[k]))
                d.push_back("vertical-functoriality: " + A.ver.morphisms[j] + " ; " + A.ver.morphisms[k]);
    for (int a = 0; a < A.num_squares(); ++a)
        if (B.beside(F.sq[a], t.ver[A.right[a]]) != B.beside(t.ver[A.left[a]], G.sq[a]))
            d.push_back("naturality: square " + A.squares()[a]);
    return d;
}

std::vector<std::string> validate(const VNatTransf& t)
{
    const auto& F = *t.source;
    const auto& G = *t.target;
    const auto& A = *F.source;
    const auto& B = *F.target;
    if (F.source != G.source || F.target != G.target)
        return {"shape: functors must be parallel"};
    if (int(t.obj.size()) != A.num_objects() || int(t.hor.size()) != A.hor.num_morphisms())
        return {"shape: component tables have wrong size"};
    std::vector<std::string> d;
    for (int x = 0; x < A.num_objects(); ++x) {
        int v = t.obj[x];
        if (v < 0 || B.ver.src[v] != F.obj[x] || B.ver.tgt[v] != G.obj[x])
            d.push_back("component: object " + A.objects()[x]);
    }
    for (int f = 0; f < A.hor.num_morphisms(); ++f) {
        int s = t.hor[f];
        if (s < 0 || B.left[s] != t.obj[A.hor.src[f]] || B.right[s] != t.obj[A.hor.tgt[f]] ||
            B.top(s) != F.hor[f] || B.bottom(s) != G.hor[f])
            d.push_back("component: horizontal " + A.hor.morphisms[f]);
    }
    if (!d.empty())
        return d;
    for (int x = 0; x < A.num_objects(); ++x)
        if (t.hor[A.hor.ident[x]] != B.idh[t.obj[x]])
            d.push_back("identity: object " + A.objects()[x]);
    for (int f = 0; f < A.hor.num_morphisms(); ++f)
        for (int g : A.hor.out(A.hor.tgt[f]))
            if (t.hor[A.hor.then(f, g)] != B.beside(t.hor[f], t.hor[g]))
                d.push_back("horizontal-functoriality: " + A.hor.morphisms[f] + " ; " + A.hor.morphisms[g]);
    for (int a = 0; a < A.num_squares(); ++a)
        if (B.above(F.sq[a], t.hor[A.bottom(a)]) != B.above(t.hor[A.top(a)], G.sq[a]))
            d.push_back("naturality: square " + A.squares()[a]);
    return d;
}

DoubleCategory external_product(const FinCategory& A, const FinCategory& B)
{
    // vertical morphisms (f, b), horizontal (a, g), squares (f, g)
    int na = A.num_objects(), nb = B.num_objects();
    int ma = A.num_morphisms(), mb = B.num_morphisms();
    auto oname = [&](int a, int b) { return "(" + A.objects[a] + "," + B.objects[b] + ")"; };
    CategoryBuilder hb, vb;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            hb.add_object(oname(a, b), "(" + A.objects[a] + "," + B.morphisms[B.ident[b]] + ")");
            vb.add_object(oname(a, b), "(" + A.morphisms[A.ident[a]] + "," + B.objects[b] + ")");
        }
    std::vector<int> hid(na * mb), vid(ma * nb);
    for (int a = 0; a < na; ++a)
        for (int g = 0; g < mb; ++g)
            hid[a * mb + g] = B.is_identity(g) ? hb.identity(a * nb + B.src[g])
                                               : hb.add_morphism("(" + A.objects[a] + "," + B.morphisms[g] + ")",
                                                                 a * nb + B.src[g], a * nb + B.tgt[g]);
    for (int f = 0; f < ma; ++f)
        for (int b = 0; b < nb; ++b)
            vid[f * nb + b] = A.is_identity(f) ? vb.identity(A.src[f] * nb + b)
                                               : vb.add_morphism("(" + A.morphisms[f] + "," + B.objects[b] + ")",
                                                                 A.src[f] * nb + b, A.tgt[f] * nb + b);
    for (int a = 0; a < na; ++a)
        for (int g = 0; g < mb; ++g)
            for (int g2 : B.out(B.tgt[g]))
                hb.set_then(hid[a * mb + g], hid[a * mb + g2], hid[a * mb + B.then(g, g2)]);
    for (int f = 0; f < ma; ++f)
        for (int b = 0; b < nb; ++b)
            for (int f2 : A.out(A.tgt[f]))
                vb.set_then(vid[f * nb + b], vid[f2 * nb + b], vid[A.then(f, f2) * nb + b]);
    DoubleBuilder db(hb.build(), vb.build());
    std::vector<int> sid(ma * mb);
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g) {
            Boundary bd{hid[A.src[f] * mb + g], hid[A.tgt[f] * mb + g], vid[f * nb + B.src[g]], vid[f * nb + B.tgt[g]]};
            sid[f * mb + g] = db.add_square("(" + A.morphisms[f] + "," + B.morphisms[g] + ")", bd);
        }
    for (int a = 0; a < na; ++a)
        for (int g = 0; g < mb; ++g)
            db.set_idv(hid[a * mb + g], sid[A.ident[a] * mb + g]);
    for (int f = 0; f < ma; ++f)
        for (int b = 0; b < nb; ++b)
            db.set_idh(vid[f * nb + b], sid[f * mb + B.ident[b]]);
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g) {
            for (int f2 : A.out(A.tgt[f]))
                db.set_above(sid[f * mb + g], sid[f2 * mb + g], sid[A.then(f, f2) * mb + g]);
            for (int g2 : B.out(B.tgt[g]))
                db.set_beside(sid[f * mb + g], sid[f * mb + g2], sid[f * mb + B.then(g, g2)]);
        }
    return db.build();
}

DoubleFunctor external_product(const Functor& F, const Functor& G, std::shared_ptr<const DoubleCategory> src,
                               std::shared_ptr<const DoubleCategory> tgt)
{
    const auto &A = *F.source, &A2 = *F.target, &B = *G.source, &B2 = *G.target;
    if (!src)
        src = std::make_shared<DoubleCategory>(external_product(A, B));
    if (!tgt)
        tgt = std::make_shared<DoubleCategory>(external_product(A2, B2));
    DoubleFunctor H;
    H.source = src;
    H.target = tgt;
    int nb = B.num_objects(), nb2 = B2.num_objects();
    int mb = B.num_morphisms(), mb2 = B2.num_morphisms();
    // index layouts mirror external_product: objects a*nb+b; horizontal by name lookup
    for (int a = 0; a < A.num_objects(); ++a)
        for (int b = 0; b < nb; ++b)
            H.obj.push_back(F.obj[a] * nb2 + G.obj[b]);
    auto hname = [](const FinCategory& X, const FinCategory& Y, int a, int g) {
        return "(" + X.objects[a] + "," + Y.morphisms[g] + ")";
    };
    auto vname = [](const FinCategory& X, const FinCategory& Y, int f, int b) {
        return "(" + X.morphisms[f] + "," + Y.objects[b] + ")";
    };
    H.hor.assign(src->hor.num_morphisms(), -1);
    H.ver.assign(src->ver.num_morphisms(), -1);
    for (int a = 0; a < A.num_objects(); ++a)
        for (int g = 0; g < mb; ++g) {
            int s = src->hor.morphism(hname(A, B, a, g));
            int t = tgt->hor.morphism(hname(A2, B2, F.obj[a], G.mor[g]));
            H.hor[s] = t;
        }
    for (int f = 0; f < A.num_morphisms(); ++f)
        for (int b = 0; b < nb; ++b) {
            int s = src->ver.morphism(vname(A, B, f, b));
            int t = tgt->ver.morphism(vname(A2, B2, F.mor[f], G.obj[b]));
            H.ver[s] = t;
        }
    for (int f = 0; f < A.num_morphisms(); ++f)
        for (int g = 0; g < mb; ++g)
            H.sq.push_back(F.mor[f] * mb2 + G.mor[g]);
    return H;
}

DoubleCategory transpose(const DoubleCategory& D)
{
    DoubleBuilder b(D.ver, D.hor);
    for (int a = 0; a < D.num_squares(); ++a)
        b.add_square(D.squares()[a], {D.left[a], D.right[a], D.top(a), D.bottom(a)});
    for (int v = 0; v < D.ver.num_morphisms(); ++v)
        b.set_idv(v, D.idh[v]);
    for (int f = 0; f < D.hor.num_morphisms(); ++f)
        b.set_idh(f, D.idv(f));
    for (int a = 0; a < D.num_squares(); ++a) {
        for (int c : D.with_left(D.right[a]))
            b.set_above(a, c, D.beside(a, c));
        for (int c : D.with_top(D.bottom(a)))
            b.set_beside(a, c, D.above(a, c));
    }
    return b.build();
}

DoubleFunctor transpose(const DoubleFunctor& F)
{
    DoubleFunctor T;
    T.source = std::make_shared<DoubleCategory>(transpose(*F.source));
    T.target = std::make_shared<DoubleCategory>(transpose(*F.target));
    T.obj = F.obj;
    T.hor = F.ver;
    T.ver = F.hor;
    T.sq = F.sq;
    return T;
}

DoubleCategory embed_h(const FinCategory& c)
{
    CategoryBuilder vb;
    for (int x = 0; x < c.num_objects(); ++x)
        vb.add_object(c.objects[x], "1v_" + c.objects[x]);
    DoubleBuilder b(c, vb.build());
    b.add_identity_squares();
    return b.build();
}

DoubleCategory embed_v(const FinCategory& c) { return transpose(embed_h(c)); }

FinCategory underlying_h0(const DoubleCategory& d)
{
    // (HD)_0: objects and horizontal morphisms
    return d.hor;
}

FinCategory underlying_v0(const DoubleCategory& d) { return d.ver; }

DoubleCategory terminal_double() { return embed_h(terminal_category()); }

DoubleCategory commutative_squares(const FinCategory& c)
{
    DoubleBuilder b(c, c);
    std::map<Boundary, int> ids;
    for (int t = 0; t < c.num_morphisms(); ++t)
        for (int l : c.out(c.src[t]))
            for (int r : c.out(c.tgt[t]))
                for (int bt : c.out(c.tgt[l]))
                    if (c.tgt[bt] == c.tgt[r] && c.then(t, r) == c.then(l, bt))
                        ids[{t, bt, l, r}] = b.add_square("<" + c.morphisms[t] + "|" + c.morphisms[bt] + "|" +
                                                              c.morphisms[l] + "|" + c.morphisms[r] + ">",
                                                          {t, bt, l, r});
    for (int f = 0; f < c.num_morphisms(); ++f) {
        b.set_idv(f, ids.at({f, f, c.ident[c.src[f]], c.ident[c.tgt[f]]}));
        b.set_idh(f, ids.at({c.ident[c.src[f]], c.ident[c.tgt[f]], f, f}));
    }
    for (auto& [p, a] : ids) {
        for (auto& [q, e] : ids) {
            if (p.bottom == q.top)
                b.set_above(a, e, ids.at({p.top, q.bottom, c.then(p.left, q.left), c.then(p.right, q.right)}));
            if (p.right == q.left)
                b.set_beside(a, e, ids.at({c.then(p.top, q.top), c.then(p.bottom, q.bottom), p.left, q.right}));
        }
    }
    return b.build();
}

DoubleCategory coproduct(const DoubleCategory& A, const DoubleCategory& B)
{
    FinCategory H = coproduct(A.hor, B.hor), V = coproduct(A.ver, B.ver);
    DoubleBuilder b(H, V);
    auto hmap = [&](int side, int f) { return H.morphism(std::string(side ? "1:" : "0:") + (side ? B : A).hor.morphisms[f]); };
    auto vmap = [&](int side, int v) { return V.morphism(std::string(side ? "1:" : "0:") + (side ? B : A).ver.morphisms[v]); };
    std::vector<int> sa(A.num_squares()), sb(B.num_squares());
    for (int side = 0; side < 2; ++side) {
        const DoubleCategory& X = side ? B : A;
        auto& s = side ? sb : sa;
        for (int a = 0; a < X.num_squares(); ++a)
            s[a] = b.add_square(std::string(side ? "1:" : "0:") + X.squares()[a],
                                {hmap(side, X.top(a)), hmap(side, X.bottom(a)), vmap(side, X.left[a]), vmap(side, X.right[a])});
        for (int f = 0; f < X.hor.num_morphisms(); ++f)
            b.set_idv(hmap(side, f), s[X.idv(f)]);
        for (int v = 0; v < X.ver.num_morphisms(); ++v)
            b.set_idh(vmap(side, v), s[X.idh[v]]);
        for (int a = 0; a < X.num_squares(); ++a) {
            for (int c : X.with_top(X.bottom(a)))
                b.set_above(s[a], s[c], s[X.above(a, c)]);
            for (int c : X.with_left(X.right[a]))
                b.set_beside(s[a], s[c], s[X.beside(a, c)]);
        }
    }
    return b.build();
}

DoubleDerivationScheme underlying_scheme(const DoubleCategory& d)
{
    DoubleDerivationScheme s;
    s.hor = d.hor;
    s.ver = d.ver;
    s.squares = d.squares();
    for (int a = 0; a < d.num_squares(); ++a)
        s.boundary.push_back(d.boundary(a));
    return s;
}

DoubleGraph1Id underlying_double_graph(const DoubleDerivationScheme& s)
{
    DoubleGraph1Id g;
    g.objects = s.hor.objects;
    g.hor = underlying_reflexive_graph(s.hor);
    g.ver = underlying_reflexive_graph(s.ver);
    g.squares = s.squares;
    g.boundary = s.boundary;
    return g;
}

Functor functor_h(const DoubleFunctor& f)
{
    Functor r;
    r.source = std::shared_ptr<const FinCategory>(f.source, &f.source->hor);
    r.target = std::shared_ptr<const FinCategory>(f.target, &f.target->hor);
    r.obj = f.obj;
    r.mor = f.hor;
    return r;
}

Functor functor_v(const DoubleFunctor& f)
{
    Functor r;
    r.source = std::shared_ptr<const FinCategory>(f.source, &f.source->ver);
    r.target = std::shared_ptr<const FinCategory>(f.target, &f.target->ver);
    r.obj = f.obj;
    r.mor = f.ver;
    return r;
}

Functor functor_1(const DoubleFunctor& f)
{
    Functor r;
    r.source = std::shared_ptr<const FinCategory>(f.source, &f.source->sq);
    r.target = std::shared_ptr<const FinCategory>(f.target, &f.target->sq);
    r.obj = f.hor;
    r.mor = f.sq;
    return r;
}

DoubleFunctor embed_h(const Functor& F)
{
    DoubleFunctor D;
    auto s = std::make_shared<DoubleCategory>(embed_h(*F.source));
    auto t = std::make_shared<DoubleCategory>(embed_h(*F.target));
    D.source = s;
    D.target = t;
    D.obj = F.obj;
    D.hor = F.mor;
    for (int x = 0; x < s->num_objects(); ++x)
        D.ver.push_back(t->ver.ident[F.obj[x]]);
    D.sq.assign(s->num_squares(), -1);
    for (int f = 0; f < s->hor.num_morphisms(); ++f)
        D.sq[s->idv(f)] = t->idv(F.mor[f]);
    return D;
}

DoubleFunctor embed_v(const Functor& F) { return transpose(embed_h(F)); }

DoubleFunctor to_terminal(std::shared_ptr<const DoubleCategory> d)
{
    DoubleFunctor F;
    F.source = d;
    F.target = std::make_shared<DoubleCategory>(terminal_double());
    F.obj.assign(d->num_objects(), 0);
    F.hor.assign(d->hor.num_morphisms(), 0);
    F.ver.assign(d->ver.num_morphisms(), 0);
    F.sq.assign(d->num_squares(), 0);
    return F;
}

} // namespace dbl
