#include "dbl/category.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace dbl {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::infinite: return "infinite";
    case ErrorKind::not_allowable: return "not-allowable";
    case ErrorKind::not_compatible: return "not-compatible";
    case ErrorKind::not_parallel: return "non-parallel";
    case ErrorKind::not_directed: return "not-directed";
    case ErrorKind::not_congruence: return "congruence-violation";
    case ErrorKind::invalid: return "invalid";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::parse: return "parse-error";
    }
    return "error";
}

Budget Budget::defaults()
{
    Budget b;
    if (const char* env = std::getenv("DBLCAT_BUDGET")) {
        std::stringstream ss(env);
        std::string part;
        std::vector<std::size_t> vals;
        while (std::getline(ss, part, ','))
            if (!part.empty())
                vals.push_back(std::stoul(part));
        if (vals.size() > 0) b.max_cells = vals[0];
        if (vals.size() > 1) b.max_path = vals[1];
        if (vals.size() > 2) b.max_squares = vals[2];
    }
    return b;
}

std::vector<int> FinCategory::hom(int a, int b) const
{
    std::vector<int> r;
    for (int f : out_[a])
        if (tgt[f] == b)
            r.push_back(f);
    return r;
}

int FinCategory::object(const Id& name) const
{
    auto it = obj_index_.find(name);
    return it == obj_index_.end() ? -1 : it->second;
}

int FinCategory::morphism(const Id& name) const
{
    auto it = mor_index_.find(name);
    return it == mor_index_.end() ? -1 : it->second;
}

void FinCategory::reset_table()
{
    int no = num_objects(), nm = num_morphisms();
    out_.assign(no, {});
    in_.assign(no, {});
    outpos_.assign(nm, -1);
    for (int f = 0; f < nm; ++f) {
        outpos_[f] = int(out_[src[f]].size());
        out_[src[f]].push_back(f);
        in_[tgt[f]].push_back(f);
    }
    comp_.assign(nm, {});
    for (int f = 0; f < nm; ++f)
        comp_[f].assign(out_[tgt[f]].size(), -1);
    finalize_names();
}

void FinCategory::set_then(int f, int g, int h)
{
    comp_[f][outpos_[g]] = h;
}

void FinCategory::finalize_names()
{
    obj_index_.clear();
    mor_index_.clear();
    for (int i = 0; i < num_objects(); ++i)
        obj_index_.emplace(objects[i], i);
    for (int i = 0; i < num_morphisms(); ++i)
        mor_index_.emplace(morphisms[i], i);
}

bool FinCategory::operator==(const FinCategory& o) const
{
    return objects == o.objects && morphisms == o.morphisms && src == o.src && tgt == o.tgt &&
           ident == o.ident && comp_ == o.comp_;
}

int CategoryBuilder::add_object(const Id& name, const Id& identity_name)
{
    int a = int(cat_.objects.size());
    cat_.objects.push_back(name);
    cat_.ident.push_back(-1);
    int id = add_morphism(identity_name.empty() ? "1_" + name : identity_name, a, a);
    cat_.ident[a] = id;
    return a;
}

int CategoryBuilder::add_morphism(const Id& name, int src, int tgt)
{
    cat_.morphisms.push_back(name);
    cat_.src.push_back(src);
    cat_.tgt.push_back(tgt);
    return int(cat_.morphisms.size()) - 1;
}

FinCategory CategoryBuilder::build(bool require_total)
{
    FinCategory c = cat_;
    c.reset_table();
    for (int f = 0; f < c.num_morphisms(); ++f) {
        for (int g : c.out(c.tgt[f])) {
            if (c.is_identity(g))
                c.set_then(f, g, f);
            else if (c.is_identity(f))
                c.set_then(f, g, g);
        }
    }
    for (auto [f, g, h] : comps_) {
        if (c.tgt[f] != c.src[g])
            throw Error(ErrorKind::invalid, "composite of non-composable pair " + c.morphisms[f] + ", " + c.morphisms[g]);
        c.set_then(f, g, h);
    }
    if (require_total) {
        for (int f = 0; f < c.num_morphisms(); ++f)
            for (int g : c.out(c.tgt[f]))
                if (c.then(f, g) < 0)
                    throw Error(ErrorKind::invalid, "missing composite " + c.morphisms[f] + " ; " + c.morphisms[g]);
    }
    return c;
}

Functor identity_functor(std::shared_ptr<const FinCategory> c)
{
    Functor f;
    f.source = c;
    f.target = c;
    for (int i = 0; i < c->num_objects(); ++i)
        f.obj.push_back(i);
    for (int i = 0; i < c->num_morphisms(); ++i)
        f.mor.push_back(i);
    return f;
}

Functor compose(const Functor& f, const Functor& g)
{
    Functor h;
    h.source = f.source;
    h.target = g.target;
    for (int x : f.obj)
        h.obj.push_back(g.obj[x]);
    for (int x : f.mor)
        h.mor.push_back(g.mor[x]);
    return h;
}

FinCategory ordinal(int n)
{
    std::vector<Id> objs;
    std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1));
    for (int i = 0; i <= n; ++i) {
        objs.push_back(std::to_string(i));
        for (int j = i; j <= n; ++j)
            leq[i][j] = true;
    }
    return poset(objs, leq);
}

FinCategory discrete(const std::vector<Id>& objs)
{
    CategoryBuilder b;
    for (auto& o : objs)
        b.add_object(o);
    return b.build();
}

FinCategory terminal_category() { return discrete({"*"}); }

FinCategory iso_category()
{
    CategoryBuilder b;
    int o0 = b.add_object("0"), o1 = b.add_object("1");
    int u = b.add_morphism("u", o0, o1);
    int v = b.add_morphism("u^-1", o1, o0);
    b.set_then(u, v, b.identity(o0));
    b.set_then(v, u, b.identity(o1));
    return b.build();
}

FinCategory poset(const std::vector<Id>& objs, const std::vector<std::vector<bool>>& leq)
{
    CategoryBuilder b;
    int n = int(objs.size());
    for (auto& o : objs)
        b.add_object(o, o + "<=" + o);
    std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        arrow[i][i] = b.identity(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && leq[i][j])
                arrow[i][j] = b.add_morphism(objs[i] + "<=" + objs[j], i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (arrow[i][j] >= 0 && arrow[j][k] >= 0 && i != j && j != k)
                    b.set_then(arrow[i][j], arrow[j][k], arrow[i][k]);
    return b.build();
}

FinCategory product(const FinCategory& a, const FinCategory& b)
{
    CategoryBuilder pb;
    int na = a.num_objects(), nb = b.num_objects();
    std::vector<int> objid(na * nb);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y)
            objid[x * nb + y] = pb.add_object("(" + a.objects[x] + "," + b.objects[y] + ")",
                                              "(" + a.morphisms[a.ident[x]] + "," + b.morphisms[b.ident[y]] + ")");
    int ma = a.num_morphisms(), mb = b.num_morphisms();
    std::vector<int> morid(ma * mb, -1);
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g) {
            int s = objid[a.src[f] * nb + b.src[g]];
            if (a.is_identity(f) && b.is_identity(g)) {
                morid[f * mb + g] = pb.identity(s);
                continue;
            }
            int t = objid[a.tgt[f] * nb + b.tgt[g]];
            morid[f * mb + g] = pb.add_morphism("(" + a.morphisms[f] + "," + b.morphisms[g] + ")", s, t);
        }
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g)
            for (int f2 : a.out(a.tgt[f]))
                for (int g2 : b.out(b.tgt[g]))
                    pb.set_then(morid[f * mb + g], morid[f2 * mb + g2], morid[a.then(f, f2) * mb + b.then(g, g2)]);
    return pb.build();
}

FinCategory coproduct(const FinCategory& a, const FinCategory& b)
{
    CategoryBuilder cb;
    std::vector<int> ma(a.num_morphisms()), mb(b.num_morphisms());
    for (int x = 0; x < a.num_objects(); ++x)
        ma[a.ident[x]] = cb.identity(cb.add_object("0:" + a.objects[x], "0:" + a.morphisms[a.ident[x]]));
    int off = a.num_objects();
    for (int x = 0; x < b.num_objects(); ++x)
        mb[b.ident[x]] = cb.identity(cb.add_object("1:" + b.objects[x], "1:" + b.morphisms[b.ident[x]]));
    for (int f = 0; f < a.num_morphisms(); ++f)
        if (!a.is_identity(f))
            ma[f] = cb.add_morphism("0:" + a.morphisms[f], a.src[f], a.tgt[f]);
    for (int f = 0; f < b.num_morphisms(); ++f)
        if (!b.is_identity(f))
            mb[f] = cb.add_morphism("1:" + b.morphisms[f], off + b.src[f], off + b.tgt[f]);
    for (int f = 0; f < a.num_morphisms(); ++f)
        for (int g : a.out(a.tgt[f]))
            cb.set_then(ma[f], ma[g], ma[a.then(f, g)]);
    for (int f = 0; f < b.num_morphisms(); ++f)
        for (int g : b.out(b.tgt[f]))
            cb.set_then(mb[f], mb[g], mb[b.then(f, g)]);
    return cb.build();
}

FinCategory opposite(const FinCategory& c)
{
    CategoryBuilder b;
    for (int x = 0; x < c.num_objects(); ++x)
        b.add_object(c.objects[x], c.morphisms[c.ident[x]]);
    std::vector<int> m(c.num_morphisms());
    for (int x = 0; x < c.num_objects(); ++x)
        m[c.ident[x]] = b.identity(x);
    for (int f = 0; f < c.num_morphisms(); ++f)
        if (!c.is_identity(f))
            m[f] = b.add_morphism(c.morphisms[f], c.tgt[f], c.src[f]);
    for (int f = 0; f < c.num_morphisms(); ++f)
        for (int g : c.out(c.tgt[f]))
            b.set_then(m[g], m[f], m[c.then(f, g)]);
    return b.build();
}

std::vector<std::string> validate(const FinCategory& c)
{
    std::vector<std::string> d;
    int no = c.num_objects(), nm = c.num_morphisms();
    if (int(c.src.size()) != nm || int(c.tgt.size()) != nm || int(c.ident.size()) != no)
        return {"shape: table sizes disagree with morphism/object counts"};
    for (int f = 0; f < nm; ++f)
        if (c.src[f] < 0 || c.src[f] >= no || c.tgt[f] < 0 || c.tgt[f] >= no)
            return {"endpoints: morphism " + c.morphisms[f] + " has an undeclared endpoint"};
    for (int a = 0; a < no; ++a) {
        int i = c.ident[a];
        if (i < 0 || i >= nm || c.src[i] != a || c.tgt[i] != a)
            d.push_back("identity: identity of " + c.objects[a] + " is not an endomorphism of it");
    }
    if (!d.empty())
        return d;
    for (int f = 0; f < nm; ++f)
        for (int g : c.out(c.tgt[f])) {
            int h = c.then(f, g);
            if (h < 0) {
                d.push_back("total: missing composite " + c.morphisms[f] + " ; " + c.morphisms[g]);
                continue;
            }
            if (c.src[h] != c.src[f] || c.tgt[h] != c.tgt[g])
                d.push_back("composite-boundary: " + c.morphisms[f] + " ; " + c.morphisms[g]);
        }
    if (!d.empty())
        return d;
    for (int f = 0; f < nm; ++f) {
        if (c.then(c.ident[c.src[f]], f) != f || c.then(f, c.ident[c.tgt[f]]) != f)
            d.push_back("unit: " + c.morphisms[f]);
    }
    for (int f = 0; f < nm; ++f)
        for (int g : c.out(c.tgt[f]))
            for (int h : c.out(c.tgt[g]))
                if (c.then(c.then(f, g), h) != c.then(f, c.then(g, h)))
                    d.push_back("associativity: " + c.morphisms[f] + ", " + c.morphisms[g] + ", " + c.morphisms[h]);
    std::unordered_map<Id, int> seen;
    for (auto& o : c.objects)
        if (seen[o]++ == 1)
            d.push_back("unique-id: object " + o);
    seen.clear();
    for (auto& m : c.morphisms)
        if (seen[m]++ == 1)
            d.push_back("unique-id: morphism " + m);
    return d;
}

std::vector<std::string> validate(const Functor& F)
{
    std::vector<std::string> d;
    const auto& A = *F.source;
    const auto& B = *F.target;
    if (int(F.obj.size()) != A.num_objects() || int(F.mor.size()) != A.num_morphisms())
        return {"shape: functor tables have wrong size"};
    for (int f = 0; f < A.num_morphisms(); ++f) {
        int g = F.mor[f];
        if (g < 0 || g >= B.num_morphisms()) {
            d.push_back("range: " + A.morphisms[f]);
            continue;
        }
        if (B.src[g] != F.obj[A.src[f]] || B.tgt[g] != F.obj[A.tgt[f]])
            d.push_back("endpoints: " + A.morphisms[f]);
    }
    if (!d.empty())
        return d;
    for (int a = 0; a < A.num_objects(); ++a)
        if (F.mor[A.ident[a]] != B.ident[F.obj[a]])
            d.push_back("identity: " + A.objects[a]);
    for (int f = 0; f < A.num_morphisms(); ++f)
        for (int g : A.out(A.tgt[f]))
            if (F.mor[A.then(f, g)] != B.then(F.mor[f], F.mor[g]))
                d.push_back("composition: " + A.morphisms[f] + " ; " + A.morphisms[g]);
    return d;
}

std::vector<std::string> validate(const FinGraph& g)
{
    std::vector<std::string> d;
    int n = int(g.vertices.size());
    for (auto& e : g.edges)
        if (e.src < 0 || e.src >= n || e.tgt < 0 || e.tgt >= n)
            d.push_back("endpoints: edge " + e.id);
    std::unordered_map<Id, int> seen;
    for (auto& v : g.vertices)
        if (seen[v]++ == 1)
            d.push_back("unique-id: vertex " + v);
    seen.clear();
    for (auto& e : g.edges)
        if (seen[e.id]++ == 1)
            d.push_back("unique-id: edge " + e.id);
    return d;
}

std::vector<std::string> validate(const ReflexiveGraph& g)
{
    auto d = validate(g.graph);
    if (g.identity.size() != g.graph.vertices.size())
        d.push_back("identity: table size");
    else
        for (std::size_t v = 0; v < g.identity.size(); ++v) {
            int e = g.identity[v];
            if (e < 0 || e >= int(g.graph.edges.size()) || g.graph.edges[e].src != int(v) || g.graph.edges[e].tgt != int(v))
                d.push_back("identity: vertex " + g.graph.vertices[v]);
        }
    return d;
}

FinGraph underlying_graph(const FinCategory& c)
{
    FinGraph g;
    g.vertices = c.objects;
    for (int f = 0; f < c.num_morphisms(); ++f)
        g.edges.push_back({c.morphisms[f], c.src[f], c.tgt[f]});
    return g;
}

ReflexiveGraph underlying_reflexive_graph(const FinCategory& c)
{
    ReflexiveGraph r;
    r.graph = underlying_graph(c);
    r.identity = c.ident;
    return r;
}

} // namespace dbl
