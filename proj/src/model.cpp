#include "dbl/model.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "dbl/construct.hpp"
#include "dbl/search.hpp"

namespace dbl {

const char* to_string(Topology t)
{
    switch (t) {
    case Topology::tau: return "tau";
    case Topology::tau_prime: return "tauprime";
    case Topology::trivial: return "trivial";
    }
    return "?";
}

Topology parse_topology(const std::string& s)
{
    if (s == "tau")
        return Topology::tau;
    if (s == "tauprime" || s == "tau_prime" || s == "tau'")
        return Topology::tau_prime;
    if (s == "trivial")
        return Topology::trivial;
    throw Error(ErrorKind::parse, "unknown topology " + s);
}

const char* to_string(Tri t)
{
    switch (t) {
    case Tri::no: return "false";
    case Tri::yes: return "true";
    case Tri::unknown: return "unknown";
    }
    return "?";
}

int horizontal_inverse(const DoubleCategory& d, int a)
{
    for (int b : d.with_left(d.right[a]))
        if (d.right[b] == d.left[a] && d.beside(a, b) == d.idh[d.left[a]] && d.beside(b, a) == d.idh[d.right[a]])
            return b;
    return -1;
}

int vertical_inverse(const DoubleCategory& d, int a)
{
    for (int b : d.with_top(d.bottom(a)))
        if (d.bottom(b) == d.top(a) && d.above(a, b) == d.idv(d.top(a)) && d.above(b, a) == d.idv(d.bottom(a)))
            return b;
    return -1;
}

namespace {

int inverse_in(const FinCategory& c, int f)
{
    for (int g : c.hom(c.tgt[f], c.src[f]))
        if (c.then(f, g) == c.ident[c.src[f]] && c.then(g, f) == c.ident[c.tgt[f]])
            return g;
    return -1;
}

} // namespace

Iso1 iso1(const DoubleCategory& b)
{
    Iso1 r;
    r.of_hor.assign(b.hor.num_morphisms(), -1);
    r.of_sq.assign(b.num_squares(), -1);
    CategoryBuilder cb;
    for (int h = 0; h < b.hor.num_morphisms(); ++h)
        if (inverse_in(b.hor, h) >= 0) {
            r.of_hor[h] = cb.add_object(b.hor.morphisms[h], b.sq.morphisms[b.idv(h)]);
            r.hor.push_back(h);
        }
    r.sq.assign(cb.num_morphisms(), -1);
    for (int h : r.hor)
        r.sq[cb.identity(r.of_hor[h])] = b.idv(h), r.of_sq[b.idv(h)] = cb.identity(r.of_hor[h]);
    for (int a = 0; a < b.num_squares(); ++a) {
        if (r.of_sq[a] >= 0 || horizontal_inverse(b, a) < 0)
            continue;
        r.of_sq[a] = cb.add_morphism(b.sq.morphisms[a], r.of_hor[b.top(a)], r.of_hor[b.bottom(a)]);
        r.sq.push_back(a);
    }
    for (int x : r.sq)
        for (int y : b.with_top(b.bottom(x)))
            if (r.of_sq[y] >= 0)
                cb.set_then(r.of_sq[x], r.of_sq[y], r.of_sq[b.above(x, y)]);
    r.cat = std::make_shared<const FinCategory>(cb.build());
    return r;
}

Pullback pullback(const Functor& f, const Functor& g)
{
    const FinCategory& a = *f.source;
    const FinCategory& b = *g.source;
    Pullback r;
    CategoryBuilder cb;
    std::vector<std::pair<int, int>> objs;
    for (int x = 0; x < a.num_objects(); ++x)
        for (int y = 0; y < b.num_objects(); ++y)
            if (f.obj[x] == g.obj[y]) {
                int i = cb.add_object("(" + a.objects[x] + "," + b.objects[y] + ")",
                                      "(" + a.morphisms[a.ident[x]] + "," + b.morphisms[b.ident[y]] + ")");
                r.obj[{x, y}] = i;
                r.mor[{a.ident[x], b.ident[y]}] = cb.identity(i);
                objs.emplace_back(x, y);
            }
    std::vector<std::pair<int, int>> mors(cb.num_morphisms());
    for (auto [k, v] : r.mor)
        mors[v] = k;
    for (int m = 0; m < a.num_morphisms(); ++m)
        for (int n = 0; n < b.num_morphisms(); ++n) {
            if (f.mor[m] != g.mor[n] || r.mor.count({m, n}))
                continue;
            int s = r.obj.at({a.src[m], b.src[n]}), t = r.obj.at({a.tgt[m], b.tgt[n]});
            r.mor[{m, n}] = cb.add_morphism("(" + a.morphisms[m] + "," + b.morphisms[n] + ")", s, t);
            mors.emplace_back(m, n);
        }
    for (int i = 0; i < int(mors.size()); ++i)
        for (int j = 0; j < int(mors.size()); ++j) {
            auto [m1, n1] = mors[i];
            auto [m2, n2] = mors[j];
            if (a.tgt[m1] != a.src[m2] || b.tgt[n1] != b.src[n2])
                continue;
            cb.set_then(i, j, r.mor.at({a.then(m1, m2), b.then(n1, n2)}));
        }
    auto c = std::make_shared<const FinCategory>(cb.build());
    r.cat = c;
    r.p1 = {c, f.source, {}, {}};
    r.p2 = {c, g.source, {}, {}};
    for (auto [x, y] : objs)
        r.p1.obj.push_back(x), r.p2.obj.push_back(y);
    for (auto [m, n] : mors)
        r.p1.mor.push_back(m), r.p2.mor.push_back(n);
    return r;
}

namespace {

// s, t: iso(B)_1 -> B_0.
Functor iso_end(const Iso1& iso, std::shared_ptr<const DoubleCategory> b, bool target)
{
    std::shared_ptr<const FinCategory> ver(b, &b->ver);
    Functor f{iso.cat, ver, {}, {}};
    for (int h : iso.hor)
        f.obj.push_back(target ? b->hor.tgt[h] : b->hor.src[h]);
    for (int a : iso.sq)
        f.mor.push_back(target ? b->right[a] : b->left[a]);
    return f;
}

} // namespace

MappingPath mapping_path_object(const DoubleFunctor& f)
{
    MappingPath m;
    m.iso = iso1(*f.target);
    auto t = iso_end(m.iso, f.target, true);
    m.pb = pullback(functor_v(f), t);
    m.s_fbar = compose(m.pb.p2, iso_end(m.iso, f.target, false));
    return m;
}

namespace {

EpiResult tau_epi(const Functor& p, const Budget& budget)
{
    const FinCategory& e = *p.source;
    const FinCategory& b = *p.target;
    EpiResult r;
    using State = std::pair<int, std::vector<int>>;
    std::map<State, int> seen;
    std::vector<State> states;
    std::vector<std::pair<int, int>> parent; // (state, letter)
    std::deque<int> queue;
    for (int x = 0; x < b.num_objects(); ++x) {
        std::vector<int> fib;
        for (int y = 0; y < e.num_objects(); ++y)
            if (p.obj[y] == x)
                fib.push_back(y);
        if (fib.empty()) {
            r.witness.counterexample = {x};
            r.witness.object_counterexample = true;
            r.witness.states = states.size();
            return r;
        }
        State s{x, fib};
        if (seen.emplace(s, int(states.size())).second) {
            states.push_back(s);
            parent.emplace_back(-1, -1);
            queue.push_back(int(states.size()) - 1);
        }
    }
    std::vector<std::vector<int>> over(b.num_morphisms());
    for (int m = 0; m < e.num_morphisms(); ++m)
        over[p.mor[m]].push_back(m);
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        auto [x, set] = states[i];
        for (int letter : b.out(x)) {
            std::vector<int> next;
            for (int m : over[letter])
                if (std::binary_search(set.begin(), set.end(), e.src[m]))
                    next.push_back(e.tgt[m]);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (next.empty()) {
                std::vector<int> word{letter};
                for (int j = i; parent[j].first >= 0; j = parent[j].first)
                    word.push_back(parent[j].second);
                std::reverse(word.begin(), word.end());
                r.witness.counterexample = word;
                r.witness.states = states.size();
                return r;
            }
            State s{b.tgt[letter], next};
            if (seen.emplace(s, int(states.size())).second) {
                if (states.size() >= budget.max_cells)
                    throw Error(ErrorKind::budget_exceeded,
                                "more than max_cells=" + std::to_string(budget.max_cells) + " automaton states");
                states.push_back(s);
                parent.emplace_back(i, letter);
                queue.push_back(int(states.size()) - 1);
            }
        }
    }
    r.holds = true;
    r.witness.states = states.size();
    return r;
}

EpiResult tau_prime_epi(const Functor& p)
{
    const FinCategory& e = *p.source;
    const FinCategory& b = *p.target;
    EpiResult r;
    int nb = b.num_objects();
    std::vector<std::vector<int>> fib(nb);
    for (int y = 0; y < e.num_objects(); ++y)
        fib[p.obj[y]].push_back(y);
    // connected-first order so arrow checks fire early
    std::vector<int> order;
    std::vector<char> placed(nb, 0);
    for (int s = 0; s < nb; ++s) {
        if (placed[s])
            continue;
        std::deque<int> q{s};
        placed[s] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            order.push_back(x);
            auto visit = [&](int y) {
                if (!placed[y])
                    placed[y] = 1, q.push_back(y);
            };
            for (int m : b.out(x))
                visit(b.tgt[m]);
            for (int m : b.in(x))
                visit(b.src[m]);
        }
    }
    std::vector<int> q0(nb, -1);
    auto lift = [&](int m) {
        for (int c : e.hom(q0[b.src[m]], q0[b.tgt[m]]))
            if (p.mor[c] == m)
                return c;
        return -1;
    };
    std::function<bool(int)> go = [&](int i) {
        if (i == nb)
            return true;
        int x = order[i];
        for (int y : fib[x]) {
            q0[x] = y;
            bool ok = true;
            auto check = [&](int m) {
                if (ok && !b.is_identity(m) && q0[b.src[m]] >= 0 && q0[b.tgt[m]] >= 0 && lift(m) < 0)
                    ok = false;
            };
            for (int m : b.out(x))
                check(m);
            for (int m : b.in(x))
                check(m);
            if (ok && go(i + 1))
                return true;
        }
        q0[x] = -1;
        return false;
    };
    if (!go(0))
        return r;
    r.holds = true;
    r.witness.obj_section = q0;
    for (int m = 0; m < b.num_morphisms(); ++m)
        r.witness.mor_section.push_back(lift(m));
    return r;
}

EpiResult trivial_epi(const Functor& p, const Budget& budget)
{
    EpiResult r;
    SearchOptions o;
    o.max_nodes = budget.max_cells * 64;
    o.filter = [&](int sort, int x, int y) { return sort == 0 ? p.obj[y] == x : p.mor[y] == x; };
    search_homs(algebra_of(*p.target), algebra_of(*p.source), o, [&](const std::vector<std::vector<int>>& s) {
        r.witness.section = Functor{p.target, p.source, s[0], s[1]};
        return false;
    });
    r.holds = r.witness.section.has_value();
    return r;
}

} // namespace

EpiResult is_epi(const Functor& p, Topology t, const Budget& budget)
{
    switch (t) {
    case Topology::tau: return tau_epi(p, budget);
    case Topology::tau_prime: return tau_prime_epi(p);
    case Topology::trivial: return trivial_epi(p, budget);
    }
    return {};
}

bool verify_witness(const Functor& p, Topology t, const EpiResult& r)
{
    const FinCategory& e = *p.source;
    const FinCategory& b = *p.target;
    if (!r.holds) {
        if (t != Topology::tau)
            return true;
        auto& w = r.witness.counterexample;
        if (r.witness.object_counterexample)
            return w.size() == 1 && std::find(p.obj.begin(), p.obj.end(), w[0]) == p.obj.end();
        // the word is composable and has no lift
        for (std::size_t i = 1; i < w.size(); ++i)
            if (b.tgt[w[i - 1]] != b.src[w[i]])
                return false;
        std::set<int> cur;
        for (int y = 0; y < e.num_objects(); ++y)
            if (p.obj[y] == b.src[w[0]])
                cur.insert(y);
        for (int letter : w) {
            std::set<int> next;
            for (int m = 0; m < e.num_morphisms(); ++m)
                if (p.mor[m] == letter && cur.count(e.src[m]))
                    next.insert(e.tgt[m]);
            cur = next;
        }
        return cur.empty();
    }
    switch (t) {
    case Topology::tau: return true;
    case Topology::tau_prime: {
        auto& q0 = r.witness.obj_section;
        auto& q1 = r.witness.mor_section;
        if (int(q0.size()) != b.num_objects() || int(q1.size()) != b.num_morphisms())
            return false;
        for (int x = 0; x < b.num_objects(); ++x)
            if (p.obj[q0[x]] != x)
                return false;
        for (int m = 0; m < b.num_morphisms(); ++m)
            if (q1[m] < 0 || p.mor[q1[m]] != m || e.src[q1[m]] != q0[b.src[m]] || e.tgt[q1[m]] != q0[b.tgt[m]])
                return false;
        return true;
    }
    case Topology::trivial: {
        if (!r.witness.section || !validate(*r.witness.section).empty())
            return false;
        auto c = compose(*r.witness.section, p);
        auto id = identity_functor(p.target);
        return c.obj == id.obj && c.mor == id.mor;
    }
    }
    return false;
}

bool is_fully_faithful(const DoubleFunctor& f)
{
    const DoubleCategory& a = *f.source;
    const DoubleCategory& b = *f.target;
    for (int x = 0; x < a.num_objects(); ++x)
        for (int y = 0; y < a.num_objects(); ++y) {
            auto hs = a.hor.hom(x, y);
            auto target = b.hor.hom(f.obj[x], f.obj[y]);
            if (hs.size() != target.size())
                return false;
            std::set<int> img;
            for (int h : hs)
                img.insert(f.hor[h]);
            if (img.size() != hs.size())
                return false;
        }
    // squares over each pair of vertical morphisms
    std::map<std::pair<int, int>, std::vector<int>> bsq;
    for (int s = 0; s < b.num_squares(); ++s)
        bsq[{b.left[s], b.right[s]}].push_back(s);
    std::map<std::pair<int, int>, std::set<int>> asq;
    for (int s = 0; s < a.num_squares(); ++s)
        if (!asq[{a.left[s], a.right[s]}].insert(f.sq[s]).second)
            return false;
    for (int j = 0; j < a.ver.num_morphisms(); ++j)
        for (int k = 0; k < a.ver.num_morphisms(); ++k) {
            auto it = bsq.find({f.ver[j], f.ver[k]});
            std::size_t want = it == bsq.end() ? 0 : it->second.size();
            auto jt = asq.find({j, k});
            std::size_t have = jt == asq.end() ? 0 : jt->second.size();
            if (want != have)
                return false;
        }
    return true;
}

bool is_weak_equivalence(const DoubleFunctor& f, Topology t, const Budget& budget)
{
    if (!is_fully_faithful(f))
        return false;
    auto m = mapping_path_object(f);
    return is_epi(m.s_fbar, t, budget).holds;
}

Functor fibration_comparison(const DoubleFunctor& f, const MappingPath& m, const Iso1& iso_e)
{
    const DoubleCategory& e = *f.source;
    Functor r{iso_e.cat, m.pb.cat, {}, {}};
    for (int g : iso_e.hor)
        r.obj.push_back(m.pb.obj.at({e.hor.tgt[g], m.iso.of_hor[f.hor[g]]}));
    for (int a : iso_e.sq)
        r.mor.push_back(m.pb.mor.at({e.right[a], m.iso.of_sq[f.sq[a]]}));
    return r;
}

bool is_fibration(const DoubleFunctor& f, Topology t, const Budget& budget)
{
    auto m = mapping_path_object(f);
    auto iso_e = iso1(*f.source);
    return is_epi(fibration_comparison(f, m, iso_e), t, budget).holds;
}

bool is_acyclic_fibration(const DoubleFunctor& f, Topology t, const Budget& budget)
{
    return is_fully_faithful(f) && is_epi(functor_v(f), t, budget).holds;
}

namespace {

bool has_nonidentity_iso(const FinCategory& c)
{
    for (int f = 0; f < c.num_morphisms(); ++f)
        if (!c.is_identity(f) && inverse_in(c, f) >= 0)
            return true;
    return false;
}

std::vector<int> indecomposables(const FinCategory& c)
{
    std::vector<char> dec(c.num_morphisms(), 0);
    for (int f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f))
            continue;
        for (int g : c.out(c.tgt[f]))
            if (!c.is_identity(g))
                dec[c.then(f, g)] = 1;
    }
    std::vector<int> r;
    for (int f = 0; f < c.num_morphisms(); ++f)
        if (!c.is_identity(f) && !dec[f])
            r.push_back(f);
    return r;
}

bool is_ordinal_sum(const FinCategory& c)
{
    // a poset whose components are chains
    for (int x = 0; x < c.num_objects(); ++x)
        for (int y = 0; y < c.num_objects(); ++y)
            if (c.hom(x, y).size() > 1 || (x != y && !c.hom(x, y).empty() && !c.hom(y, x).empty()))
                return false;
    std::vector<int> comp(c.num_objects(), -1);
    for (int s = 0; s < c.num_objects(); ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> stack{s}, members;
        comp[s] = s;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int m : c.out(x))
                if (comp[c.tgt[m]] < 0)
                    comp[c.tgt[m]] = s, stack.push_back(c.tgt[m]);
            for (int m : c.in(x))
                if (comp[c.src[m]] < 0)
                    comp[c.src[m]] = s, stack.push_back(c.src[m]);
        }
        for (int x : members)
            for (int y : members)
                if (c.hom(x, y).empty() && c.hom(y, x).empty())
                    return false;
    }
    return true;
}

} // namespace

bool is_free_on_graph(const FinCategory& c)
{
    if (has_nonidentity_iso(c))
        return false;
    auto gens = indecomposables(c);
    std::vector<std::vector<int>> out(c.num_objects());
    for (int g : gens)
        out[c.src[g]].push_back(g);
    std::vector<int> state(c.num_objects(), 0);
    std::function<bool(int)> acyclic = [&](int v) {
        state[v] = 1;
        for (int g : out[v]) {
            int w = c.tgt[g];
            if (state[w] == 1 || (state[w] == 0 && !acyclic(w)))
                return false;
        }
        state[v] = 2;
        return true;
    };
    for (int v = 0; v < c.num_objects(); ++v)
        if (!state[v] && !acyclic(v))
            return false;
    // paths of indecomposables hit each nonidentity morphism exactly once
    std::vector<int> hits(c.num_morphisms(), 0);
    std::size_t count = 0;
    bool ok = true;
    std::function<void(int)> walk = [&](int f) {
        if (!ok)
            return;
        if (++hits[f] > 1 || ++count > std::size_t(c.num_morphisms()))
            ok = false;
        for (int g : out[c.tgt[f]])
            walk(c.then(f, g));
    };
    for (int g : gens)
        walk(g);
    if (!ok)
        return false;
    for (int f = 0; f < c.num_morphisms(); ++f)
        if (!c.is_identity(f) && hits[f] != 1)
            return false;
    return true;
}

Tri is_cofibrant(const DoubleCategory& d, Topology t)
{
    if (t == Topology::trivial)
        return Tri::yes;
    bool free = is_free_on_graph(d.ver);
    if (t == Topology::tau_prime)
        return free ? Tri::yes : Tri::no;
    if (!free)
        return Tri::no;
    return is_ordinal_sum(d.ver) ? Tri::yes : Tri::unknown;
}

DoubleFunctor pull_back_along(const Functor& k0, std::shared_ptr<const DoubleCategory> bp)
{
    const DoubleCategory& b = *bp;
    const FinCategory& e0 = *k0.source;
    int n = e0.num_objects();

    CategoryBuilder hb;
    for (int x = 0; x < n; ++x) {
        int h = b.hor.ident[k0.obj[x]];
        hb.add_object(e0.objects[x], "(" + e0.objects[x] + "," + e0.objects[x] + "," + b.hor.morphisms[h] + ")");
    }
    std::map<std::tuple<int, int, int>, int> hidx;
    std::vector<std::tuple<int, int, int>> hlist;
    for (int x = 0; x < n; ++x) {
        hidx[{x, x, b.hor.ident[k0.obj[x]]}] = hb.identity(x);
    }
    hlist.resize(hb.num_morphisms());
    for (auto& [k, v] : hidx)
        hlist[v] = k;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int h : b.hor.hom(k0.obj[x], k0.obj[y])) {
                if (hidx.count({x, y, h}))
                    continue;
                hidx[{x, y, h}] = hb.add_morphism("(" + e0.objects[x] + "," + e0.objects[y] + "," + b.hor.morphisms[h] + ")", x, y);
                hlist.emplace_back(x, y, h);
            }
    for (auto [x, y, h] : hlist)
        for (int z = 0; z < n; ++z)
            for (int g : b.hor.hom(k0.obj[y], k0.obj[z]))
                hb.set_then(hidx.at({x, y, h}), hidx.at({y, z, g}), hidx.at({x, z, b.hor.then(h, g)}));

    DoubleBuilder db(hb.build(), e0);
    const FinCategory& hor = db.hor();
    std::vector<std::vector<int>> over(b.ver.num_morphisms());
    for (int u = 0; u < e0.num_morphisms(); ++u)
        over[k0.mor[u]].push_back(u);
    std::map<std::tuple<int, int, int>, int> sidx;
    std::vector<std::tuple<int, int, int>> slist;
    for (int u = 0; u < e0.num_morphisms(); ++u)
        for (int u2 = 0; u2 < e0.num_morphisms(); ++u2)
            for (int s = 0; s < b.num_squares(); ++s) {
                if (b.left[s] != k0.mor[u] || b.right[s] != k0.mor[u2])
                    continue;
                Boundary bd{hidx.at({e0.src[u], e0.src[u2], b.top(s)}), hidx.at({e0.tgt[u], e0.tgt[u2], b.bottom(s)}), u, u2};
                sidx[{u, u2, s}] = db.add_square("(" + e0.morphisms[u] + "," + e0.morphisms[u2] + "," + b.sq.morphisms[s] + ")", bd);
                slist.emplace_back(u, u2, s);
            }
    for (int f = 0; f < hor.num_morphisms(); ++f) {
        auto [x, y, h] = hlist[f];
        db.set_idv(f, sidx.at({e0.ident[x], e0.ident[y], b.idv(h)}));
    }
    for (int u = 0; u < e0.num_morphisms(); ++u)
        db.set_idh(u, sidx.at({u, u, b.idh[k0.mor[u]]}));
    for (int i = 0; i < int(slist.size()); ++i) {
        auto [u, u2, s] = slist[i];
        for (int t : b.with_top(b.bottom(s)))
            for (int v : e0.out(e0.tgt[u]))
                if (k0.mor[v] == b.left[t])
                    for (int v2 : e0.out(e0.tgt[u2]))
                        if (k0.mor[v2] == b.right[t])
                            db.set_above(i, sidx.at({v, v2, t}), sidx.at({e0.then(u, v), e0.then(u2, v2), b.above(s, t)}));
        for (int t : b.with_left(b.right[s]))
            for (int u3 : over[b.right[t]])
                if (sidx.count({u2, u3, t}))
                    db.set_beside(i, sidx.at({u2, u3, t}), sidx.at({u, u3, b.beside(s, t)}));
    }
    auto e = std::make_shared<const DoubleCategory>(db.build());
    DoubleFunctor k{e, bp, k0.obj, {}, k0.mor, {}};
    for (auto [x, y, h] : hlist)
        k.hor.push_back(h);
    for (auto [u, u2, s] : slist)
        k.sq.push_back(s);
    return k;
}

namespace {

// Free category on the nonidentity arrows together with the composite functor.
Functor free_cover(std::shared_ptr<const FinCategory> b, const Budget& budget)
{
    auto g = underlying_reflexive_graph(*b);
    // bracket composite names so a generator cannot collide with a path
    auto generator = [](const Id& name) { return name.find(';') == Id::npos ? name : "(" + name + ")"; };
    for (auto& edge : g.graph.edges)
        edge.id = generator(edge.id);
    auto e = std::make_shared<const FinCategory>(free_category(g, budget));
    Functor k{e, b, {}, {}};
    for (int x = 0; x < b->num_objects(); ++x)
        k.obj.push_back(x);
    k.mor.assign(e->num_morphisms(), -1);
    for (int x = 0; x < e->num_objects(); ++x)
        k.mor[e->ident[x]] = b->ident[x];
    // generators are the single-edge paths; the rest are their composites
    for (int f = 0; f < b->num_morphisms(); ++f)
        if (!b->is_identity(f))
            k.mor[e->morphism(generator(b->morphisms[f]))] = f;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p < e->num_morphisms(); ++p) {
            if (k.mor[p] < 0)
                continue;
            for (int q : e->out(e->tgt[p])) {
                if (k.mor[q] < 0)
                    continue;
                int r = e->then(p, q);
                if (k.mor[r] < 0)
                    k.mor[r] = b->then(k.mor[p], k.mor[q]), changed = true;
            }
        }
    }
    return k;
}

Functor string_cover(std::shared_ptr<const FinCategory> b, int level)
{
    std::vector<std::vector<int>> strings;
    // level 0 strings are objects, encoded by their identity
    for (int x = 0; x < b->num_objects(); ++x)
        strings.push_back({-1, x});
    std::vector<std::vector<int>> layer;
    for (int f = 0; f < b->num_morphisms(); ++f)
        layer.push_back({f});
    for (int k = 1; k <= level; ++k) {
        for (auto& s : layer)
            strings.push_back(s);
        std::vector<std::vector<int>> next;
        if (k < level)
            for (auto& s : layer)
                for (int g : b->out(b->tgt[s.back()])) {
                    auto t = s;
                    t.push_back(g);
                    next.push_back(t);
                }
        layer = std::move(next);
    }
    CategoryBuilder cb;
    std::vector<int> kobj, kmor;
    std::vector<std::vector<int>> ids; // per copy, vertex -> object
    for (auto& s : strings) {
        std::string label = "<";
        std::vector<int> verts;
        if (s[0] < 0) {
            label += b->objects[s[1]];
            verts = {s[1]};
        } else {
            verts = {b->src[s[0]]};
            for (std::size_t i = 0; i < s.size(); ++i) {
                label += (i ? "," : "") + b->morphisms[s[i]];
                verts.push_back(b->tgt[s[i]]);
            }
        }
        label += ">";
        std::vector<int> objs;
        for (std::size_t j = 0; j < verts.size(); ++j) {
            std::string name = label + "@" + std::to_string(j);
            objs.push_back(cb.add_object(name, name + "<=" + std::to_string(j)));
            kobj.push_back(verts[j]);
            kmor.resize(cb.num_morphisms(), -1);
            kmor[cb.identity(objs.back())] = b->ident[verts[j]];
        }
        std::map<std::pair<int, int>, int> arrow;
        for (std::size_t i = 0; i < verts.size(); ++i)
            arrow[{int(i), int(i)}] = cb.identity(objs[i]);
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                int m = cb.add_morphism(label + "@" + std::to_string(i) + "<=" + std::to_string(j), objs[i], objs[j]);
                int c = s[i];
                for (std::size_t l = i + 1; l < j; ++l)
                    c = b->then(c, s[l]);
                kmor.resize(cb.num_morphisms(), -1);
                kmor[m] = c;
                arrow[{int(i), int(j)}] = m;
            }
        for (auto [ij, m] : arrow)
            for (auto [jk, n] : arrow)
                if (ij.second == jk.first && ij.first != ij.second && jk.first != jk.second)
                    cb.set_then(m, n, arrow.at({ij.first, jk.second}));
    }
    auto e = std::make_shared<const FinCategory>(cb.build());
    return Functor{e, b, kobj, kmor};
}

} // namespace

Replacement cofibrant_replacement(std::shared_ptr<const DoubleCategory> b, Topology t, int level, const Budget& budget)
{
    Replacement r;
    std::shared_ptr<const FinCategory> b0(b, &b->ver);
    if (t == Topology::trivial) {
        r.materialized = true;
        r.e = b;
        r.k = identity_double_functor(b);
        r.k0_epi = true;
        return r;
    }
    Functor k0;
    if (t == Topology::tau_prime) {
        try {
            k0 = free_cover(b0, budget);
        } catch (const Error& err) {
            if (err.kind != ErrorKind::infinite)
                throw;
            auto g = underlying_graph(*b0);
            r.presentation.vertices = g.vertices;
            for (auto& edge : g.edges)
                if (!b0->is_identity(b0->morphism(edge.id)))
                    r.presentation.edges.push_back(edge);
            return r;
        }
    } else {
        k0 = string_cover(b0, level);
        r.certified_level = level;
    }
    r.k = pull_back_along(k0, b);
    r.e = r.k.source;
    r.materialized = true;
    r.k0_epi = is_epi(k0, t, budget).holds;
    return r;
}

bool segal_pseudo_comparison(const DoubleCategory& d)
{
    const FinCategory& v = d.ver;
    std::vector<int> vinv(d.num_squares(), -2);
    auto vert_inv = [&](int a) {
        if (vinv[a] == -2)
            vinv[a] = vertical_inverse(d, a);
        return vinv[a];
    };
    // pseudo objects (f, phi: src g -> tgt f iso, g)
    for (int f = 0; f < d.hor.num_morphisms(); ++f)
        for (int g = 0; g < d.hor.num_morphisms(); ++g)
            for (int phi : v.hom(d.hor.src[g], d.hor.tgt[f])) {
                if (inverse_in(v, phi) < 0)
                    continue;
                bool found = false;
                for (int a : d.with_top(f)) {
                    if (found || vert_inv(a) < 0)
                        continue;
                    int want = v.then(phi, d.right[a]);
                    for (int c : d.with_top(g))
                        if (vert_inv(c) >= 0 && d.left[c] == want && d.hor.src[d.bottom(c)] == d.hor.tgt[d.bottom(a)]) {
                            found = true;
                            break;
                        }
                }
                if (!found)
                    return false;
            }
    return true;
}

} // namespace dbl
