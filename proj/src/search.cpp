#include "dbl/search.hpp"

#include <algorithm>
#include <map>

namespace dbl {

namespace {

std::uint64_t key(int x, int y) { return (std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y); }

} // namespace

int Algebra::Binary::apply(int x, int y) const
{
    auto it = lookup.find(key(x, y));
    return it == lookup.end() ? -1 : it->second;
}

void Algebra::finalize()
{
    for (auto& b : binary) {
        b.by_left.assign(sizes[b.left], {});
        b.by_right.assign(sizes[b.right], {});
        b.by_out.assign(sizes[b.out], {});
        b.lookup.clear();
        for (int i = 0; i < int(b.entries.size()); ++i) {
            auto [x, y, z] = b.entries[i];
            b.by_left[x].push_back(i);
            b.by_right[y].push_back(i);
            b.by_out[z].push_back(i);
            b.lookup[key(x, y)] = z;
        }
    }
}

namespace {

void add_category_ops(Algebra& a, const FinCategory& c, int os, int ms)
{
    a.unary.push_back({ms, os, c.src});
    a.unary.push_back({ms, os, c.tgt});
    a.unary.push_back({os, ms, c.ident});
    Algebra::Binary b;
    b.left = b.right = b.out = ms;
    for (int f = 0; f < c.num_morphisms(); ++f)
        for (int g : c.out(c.tgt[f]))
            b.entries.push_back({f, g, c.then(f, g)});
    a.binary.push_back(std::move(b));
}

} // namespace

Algebra algebra_of(const FinCategory& c)
{
    Algebra a;
    a.sizes = {c.num_objects(), c.num_morphisms()};
    add_category_ops(a, c, 0, 1);
    a.finalize();
    return a;
}

Algebra algebra_of(const DoubleCategory& d)
{
    Algebra a;
    a.sizes = {d.num_objects(), d.hor.num_morphisms(), d.ver.num_morphisms(), d.num_squares()};
    add_category_ops(a, d.hor, 0, 1);
    add_category_ops(a, d.ver, 0, 2);
    add_category_ops(a, d.sq, 1, 3);
    a.unary.push_back({3, 2, d.left});
    a.unary.push_back({3, 2, d.right});
    a.unary.push_back({2, 3, d.idh});
    Algebra::Binary b;
    b.left = b.right = b.out = 3;
    for (int x = 0; x < d.num_squares(); ++x)
        for (int y : d.with_left(d.right[x]))
            b.entries.push_back({x, y, d.beside(x, y)});
    a.binary.push_back(std::move(b));
    a.finalize();
    return a;
}

namespace {

// Joint colour refinement over the disjoint union of two algebras of the same signature.
std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> refine_colours(const Algebra& X,
                                                                                       const Algebra& Y)
{
    int ns = int(X.sizes.size());
    std::vector<std::vector<int>> cx(ns), cy(ns);
    for (int s = 0; s < ns; ++s) {
        cx[s].assign(X.sizes[s], s);
        cy[s].assign(Y.sizes[s], s);
    }
    auto preimages = [](const Algebra& A) {
        std::vector<std::vector<std::vector<int>>> pre(A.unary.size());
        for (std::size_t u = 0; u < A.unary.size(); ++u) {
            pre[u].assign(A.sizes[A.unary[u].to], {});
            for (int w = 0; w < A.sizes[A.unary[u].from]; ++w)
                pre[u][A.unary[u].table[w]].push_back(w);
        }
        return pre;
    };
    auto px = preimages(X), py = preimages(Y);
    std::size_t classes = std::size_t(ns);
    for (;;) {
        std::map<std::vector<long long>, int> ids;
        auto sig = [&](const Algebra& A, const std::vector<std::vector<int>>& c, int s, int x) {
            auto& pre = &A == &X ? px : py;
            std::vector<long long> v{s, c[s][x]};
            for (std::size_t u = 0; u < A.unary.size(); ++u) {
                auto& op = A.unary[u];
                if (op.from == s)
                    v.push_back(c[op.to][op.table[x]]);
            }
            std::vector<long long> tmp;
            for (std::size_t u = 0; u < A.unary.size(); ++u) {
                auto& op = A.unary[u];
                if (op.to != s)
                    continue;
                tmp.clear();
                for (int w : pre[u][x])
                    tmp.push_back(c[op.from][w]);
                std::sort(tmp.begin(), tmp.end());
                v.push_back(-1);
                v.insert(v.end(), tmp.begin(), tmp.end());
            }
            for (auto& b : A.binary) {
                auto pack = [&](int p, int q) { return (long long)p * 1000003LL + q; };
                if (b.left == s) {
                    tmp.clear();
                    for (int e : b.by_left[x])
                        tmp.push_back(pack(c[b.right][b.entries[e][1]], c[b.out][b.entries[e][2]]));
                    std::sort(tmp.begin(), tmp.end());
                    v.push_back(-2);
                    v.insert(v.end(), tmp.begin(), tmp.end());
                }
                if (b.right == s) {
                    tmp.clear();
                    for (int e : b.by_right[x])
                        tmp.push_back(pack(c[b.left][b.entries[e][0]], c[b.out][b.entries[e][2]]));
                    std::sort(tmp.begin(), tmp.end());
                    v.push_back(-3);
                    v.insert(v.end(), tmp.begin(), tmp.end());
                }
                if (b.out == s) {
                    tmp.clear();
                    for (int e : b.by_out[x])
                        tmp.push_back(pack(c[b.left][b.entries[e][0]], c[b.right][b.entries[e][1]]));
                    std::sort(tmp.begin(), tmp.end());
                    v.push_back(-4);
                    v.insert(v.end(), tmp.begin(), tmp.end());
                }
            }
            return v;
        };
        std::vector<std::vector<int>> nx(ns), ny(ns);
        for (int s = 0; s < ns; ++s) {
            for (int x = 0; x < X.sizes[s]; ++x)
                nx[s].push_back(ids.emplace(sig(X, cx, s, x), int(ids.size())).first->second);
            for (int y = 0; y < Y.sizes[s]; ++y)
                ny[s].push_back(ids.emplace(sig(Y, cy, s, y), int(ids.size())).first->second);
        }
        cx = std::move(nx);
        cy = std::move(ny);
        if (ids.size() == classes)
            break;
        classes = ids.size();
    }
    return {cx, cy};
}

class Solver {
public:
    Solver(const Algebra& X, const Algebra& Y, const SearchOptions& o,
           const std::function<bool(const std::vector<std::vector<int>>&)>& cb)
        : X(X), Y(Y), opt(o), cb(cb)
    {
        int ns = int(X.sizes.size());
        h.resize(ns);
        used.resize(ns);
        for (int s = 0; s < ns; ++s) {
            h[s].assign(X.sizes[s], -1);
            used[s].assign(Y.sizes[s], 0);
        }
        injective = opt.injective || opt.bijective;
        // targets bucketed by the value of each unary operation
        buckets.resize(Y.unary.size());
        for (std::size_t u = 0; u < Y.unary.size(); ++u) {
            auto& op = Y.unary[u];
            buckets[u].assign(Y.sizes[op.to], {});
            for (int y = 0; y < Y.sizes[op.from]; ++y)
                buckets[u][op.table[y]].push_back(y);
        }
        for (int s = 0; s < ns; ++s) {
            std::vector<char> composite(X.sizes[s], 0);
            for (auto& b : X.binary)
                if (b.out == s)
                    for (auto& e : b.entries)
                        if (e[0] != e[2] && e[1] != e[2])
                            composite[e[2]] = 1;
            for (int pass = 0; pass < 2; ++pass)
                for (int x = 0; x < X.sizes[s]; ++x)
                    if (composite[x] == pass)
                        order.emplace_back(s, x);
        }
    }

    std::size_t run()
    {
        int ns = int(X.sizes.size());
        if (opt.bijective)
            for (int s = 0; s < ns; ++s)
                if (X.sizes[s] != Y.sizes[s])
                    return 0;
        if (injective)
            for (int s = 0; s < ns; ++s)
                if (X.sizes[s] > Y.sizes[s])
                    return 0;
        if (opt.refine) {
            auto [a, b] = refine_colours(X, Y);
            cx = std::move(a);
            cy = std::move(b);
            for (int s = 0; s < ns; ++s) {
                auto p = cx[s], q = cy[s];
                std::sort(p.begin(), p.end());
                std::sort(q.begin(), q.end());
                if (p != q)
                    return 0;
            }
        }
        for (auto [s, x, y] : opt.fixed)
            if (!assign(s, x, y) || !propagate())
                return 0;
        recurse(0);
        return count;
    }

private:
    const Algebra& X;
    const Algebra& Y;
    const SearchOptions& opt;
    const std::function<bool(const std::vector<std::vector<int>>&)>& cb;
    bool injective = false;
    std::vector<std::vector<int>> h;
    std::vector<std::vector<char>> used;
    std::vector<std::pair<int, int>> trail, queue;
    std::vector<std::vector<std::vector<int>>> buckets;
    std::vector<std::pair<int, int>> order;
    std::vector<std::vector<int>> cx, cy;
    std::size_t count = 0, nodes = 0;
    bool stop = false;

    bool assign(int s, int x, int y)
    {
        if (y < 0)
            return false;
        if (h[s][x] == y)
            return true;
        if (h[s][x] != -1)
            return false;
        if (injective && used[s][y])
            return false;
        if (!cx.empty() && cx[s][x] != cy[s][y])
            return false;
        if (opt.filter && !opt.filter(s, x, y))
            return false;
        h[s][x] = y;
        used[s][y] = 1;
        trail.emplace_back(s, x);
        queue.emplace_back(s, x);
        return true;
    }

    bool propagate()
    {
        while (!queue.empty()) {
            auto [s, x] = queue.back();
            queue.pop_back();
            int y = h[s][x];
            for (std::size_t u = 0; u < X.unary.size(); ++u) {
                auto& op = X.unary[u];
                if (op.from == s && !assign(op.to, op.table[x], Y.unary[u].table[y]))
                    return false;
            }
            for (std::size_t bi = 0; bi < X.binary.size(); ++bi) {
                auto& b = X.binary[bi];
                auto& yb = Y.binary[bi];
                if (b.left == s)
                    for (int e : b.by_left[x]) {
                        auto [p, q, r] = b.entries[e];
                        if (h[b.right][q] >= 0 && !assign(b.out, r, yb.apply(y, h[b.right][q])))
                            return false;
                    }
                if (b.right == s)
                    for (int e : b.by_right[x]) {
                        auto [p, q, r] = b.entries[e];
                        if (h[b.left][p] >= 0 && !assign(b.out, r, yb.apply(h[b.left][p], y)))
                            return false;
                    }
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail.size() > mark) {
            auto [s, x] = trail.back();
            trail.pop_back();
            used[s][h[s][x]] = 0;
            h[s][x] = -1;
        }
        queue.clear();
    }

    const std::vector<int>* candidates(int s, int x, std::vector<int>& all) const
    {
        const std::vector<int>* best = nullptr;
        for (std::size_t u = 0; u < X.unary.size(); ++u) {
            auto& op = X.unary[u];
            if (op.from != s)
                continue;
            int v = h[op.to][op.table[x]];
            if (v < 0)
                continue;
            auto& bk = buckets[u][v];
            if (!best || bk.size() < best->size())
                best = &bk;
        }
        if (best)
            return best;
        all.resize(Y.sizes[s]);
        for (int y = 0; y < Y.sizes[s]; ++y)
            all[y] = y;
        return &all;
    }

    void recurse(std::size_t pos)
    {
        while (pos < order.size() && h[order[pos].first][order[pos].second] >= 0)
            ++pos;
        if (pos == order.size()) {
            ++count;
            if (!cb(h))
                stop = true;
            return;
        }
        auto [s, x] = order[pos];
        std::vector<int> all;
        auto cands = *candidates(s, x, all);
        for (int y : cands) {
            if (++nodes > opt.max_nodes)
                throw Error(ErrorKind::budget_exceeded, "search exceeded " + std::to_string(opt.max_nodes) + " nodes");
            std::size_t mark = trail.size();
            if (assign(s, x, y) && propagate())
                recurse(pos + 1);
            undo(mark);
            if (stop)
                return;
        }
    }
};

} // namespace

std::size_t search_homs(const Algebra& x, const Algebra& y, const SearchOptions& opts,
                        const std::function<bool(const std::vector<std::vector<int>>&)>& on_solution)
{
    Solver s(x, y, opts, on_solution);
    return s.run();
}

std::optional<Functor> iso_search(std::shared_ptr<const FinCategory> x, std::shared_ptr<const FinCategory> y)
{
    SearchOptions o;
    o.bijective = true;
    o.refine = true;
    std::optional<Functor> r;
    search_homs(algebra_of(*x), algebra_of(*y), o, [&](const std::vector<std::vector<int>>& h) {
        r = Functor{x, y, h[0], h[1]};
        return false;
    });
    return r;
}

std::optional<DoubleFunctor> iso_search(std::shared_ptr<const DoubleCategory> x,
                                        std::shared_ptr<const DoubleCategory> y)
{
    SearchOptions o;
    o.bijective = true;
    o.refine = true;
    std::optional<DoubleFunctor> r;
    search_homs(algebra_of(*x), algebra_of(*y), o, [&](const std::vector<std::vector<int>>& h) {
        r = DoubleFunctor{x, y, h[0], h[1], h[2], h[3]};
        return false;
    });
    return r;
}

bool isomorphic(const FinCategory& x, const FinCategory& y)
{
    return iso_search(std::make_shared<FinCategory>(x), std::make_shared<FinCategory>(y)).has_value();
}

bool isomorphic(const DoubleCategory& x, const DoubleCategory& y)
{
    return iso_search(std::make_shared<DoubleCategory>(x), std::make_shared<DoubleCategory>(y)).has_value();
}

std::vector<Functor> all_functors(std::shared_ptr<const FinCategory> x, std::shared_ptr<const FinCategory> y,
                                  const Budget& budget)
{
    std::vector<Functor> out;
    SearchOptions o;
    o.max_nodes = budget.max_cells * 64;
    search_homs(algebra_of(*x), algebra_of(*y), o, [&](const std::vector<std::vector<int>>& h) {
        if (out.size() >= budget.max_cells)
            throw Error(ErrorKind::budget_exceeded, "more than " + std::to_string(budget.max_cells) + " functors");
        out.push_back(Functor{x, y, h[0], h[1]});
        return true;
    });
    return out;
}

std::vector<DoubleFunctor> all_double_functors(std::shared_ptr<const DoubleCategory> x,
                                               std::shared_ptr<const DoubleCategory> y, const Budget& budget)
{
    std::vector<DoubleFunctor> out;
    SearchOptions o;
    o.max_nodes = budget.max_cells * 64;
    search_homs(algebra_of(*x), algebra_of(*y), o, [&](const std::vector<std::vector<int>>& h) {
        if (out.size() >= budget.max_cells)
            throw Error(ErrorKind::budget_exceeded,
                        "more than " + std::to_string(budget.max_cells) + " double functors");
        out.push_back(DoubleFunctor{x, y, h[0], h[1], h[2], h[3]});
        return true;
    });
    return out;
}

} // namespace dbl
