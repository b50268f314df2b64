#include "dbl/thomason.hpp"

#include <algorithm>
#include <map>

namespace dbl {

std::vector<std::vector<int>> SimplexLikeComplex::simplices() const
{
    std::vector<std::vector<int>> r;
    for (int size = 1; size <= m + 1; ++size) {
        std::vector<char> pick(m + 1, 0);
        std::fill(pick.begin(), pick.begin() + size, 1);
        do {
            std::vector<int> s;
            for (int v = 0; v <= m; ++v)
                if (pick[v])
                    s.push_back(v);
            bool full = size == m + 1;
            bool opposite = size == m && std::find(s.begin(), s.end(), k) == s.end();
            if (tag == Tag::boundary && full)
                continue;
            if (tag == Tag::horn && (full || opposite))
                continue;
            r.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return r;
}

SimplexLikeComplex delta(int m) { return {SimplexLikeComplex::Tag::delta, m, -1}; }
SimplexLikeComplex horn(int m, int k) { return {SimplexLikeComplex::Tag::horn, m, k}; }
SimplexLikeComplex boundary(int m) { return {SimplexLikeComplex::Tag::boundary, m, -1}; }

std::vector<std::string> validate(const SimplexLikeComplex& x)
{
    if (x.m < 0)
        return {"dimension must be nonnegative"};
    if (x.tag == SimplexLikeComplex::Tag::horn && (x.m < 1 || x.k < 0 || x.k > x.m))
        return {"horn requires m >= 1 and 0 <= k <= m"};
    if (x.tag == SimplexLikeComplex::Tag::boundary && x.m < 1)
        return {"boundary requires m >= 1"};
    return {};
}

namespace {

std::string simplex_name(const std::vector<int>& s)
{
    std::string r;
    for (int v : s)
        r += std::to_string(v);
    return r;
}

bool is_face(const std::vector<int>& a, const std::vector<int>& b)
{
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Chains of simplices (indices into the simplex list), by length then lexicographically.
std::vector<std::vector<int>> chains(const std::vector<std::vector<int>>& simp)
{
    std::vector<std::vector<int>> all, cur;
    for (int i = 0; i < int(simp.size()); ++i)
        cur.push_back({i});
    while (!cur.empty()) {
        all.insert(all.end(), cur.begin(), cur.end());
        std::vector<std::vector<int>> next;
        for (auto& c : cur)
            for (int j = 0; j < int(simp.size()); ++j)
                if (is_face(simp[c.back()], simp[j])) {
                    auto d = c;
                    d.push_back(j);
                    next.push_back(d);
                }
        std::sort(next.begin(), next.end());
        cur = std::move(next);
    }
    return all;
}

std::string chain_name(const std::vector<int>& c, const std::vector<std::vector<int>>& simp)
{
    std::string r;
    for (int i : c)
        r += (r.empty() ? "" : "|") + simplex_name(simp[i]);
    return r;
}

} // namespace

FinCategory csd2(const SimplexLikeComplex& x)
{
    auto diag = validate(x);
    if (!diag.empty())
        throw Error(ErrorKind::invalid, diag.front());
    auto simp = x.simplices();
    auto ch = chains(simp);
    std::vector<Id> names;
    for (auto& c : ch)
        names.push_back(chain_name(c, simp));
    int n = int(ch.size());
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[i][j] = std::includes(ch[j].begin(), ch[j].end(), ch[i].begin(), ch[i].end());
    return poset(names, leq);
}

Functor csd2_inclusion(const SimplexLikeComplex& sub, const SimplexLikeComplex& whole)
{
    auto a = std::make_shared<FinCategory>(csd2(sub));
    auto b = std::make_shared<FinCategory>(csd2(whole));
    Functor f{a, b, {}, {}};
    for (auto& o : a->objects) {
        int t = b->object(o);
        if (t < 0)
            throw Error(ErrorKind::invalid, "subcomplex is not contained in the complex");
        f.obj.push_back(t);
    }
    for (auto& m : a->morphisms)
        f.mor.push_back(b->morphism(m));
    return f;
}

FullInclusion horn_inclusion(int m, int k)
{
    FullInclusion r;
    r.kind = FullInclusion::Kind::horn;
    r.i = csd2_inclusion(horn(m, k), delta(m));
    r.a = r.i.source;
    r.b = r.i.target;
    return r;
}

Functor generating_functor(const Generator& g)
{
    using F = Generator::Family;
    switch (g.family) {
    case F::thomason_cof:
        return csd2_inclusion(boundary(g.m), delta(g.m));
    case F::thomason_acof:
        return csd2_inclusion(horn(g.m, g.k), delta(g.m));
    case F::cat_acof:
        return point_into_I().i;
    case F::cat_cof: {
        auto b = std::make_shared<FinCategory>(ordinal(1));
        if (g.idx == 0) {
            auto t = std::make_shared<FinCategory>(discrete({"1"}));
            return {std::make_shared<FinCategory>(discrete({})), t, {}, {}};
        }
        if (g.idx == 1) {
            auto a = std::make_shared<FinCategory>(discrete({"0", "1"}));
            return {a, b, {0, 1}, {b->ident[0], b->ident[1]}};
        }
        if (g.idx == 2) {
            CategoryBuilder pb;
            int x = pb.add_object("0"), y = pb.add_object("1");
            pb.add_morphism("u", x, y);
            pb.add_morphism("v", x, y);
            auto a = std::make_shared<FinCategory>(pb.build());
            int arrow = -1;
            for (int m = 0; m < b->num_morphisms(); ++m)
                if (!b->is_identity(m))
                    arrow = m;
            std::vector<int> mor(a->num_morphisms());
            for (int m = 0; m < a->num_morphisms(); ++m)
                mor[m] = a->is_identity(m) ? b->ident[a->src[m]] : arrow;
            return {a, b, {0, 1}, mor};
        }
        throw Error(ErrorKind::invalid, "cat_cof index must be 0, 1 or 2");
    }
    }
    throw Error(ErrorKind::invalid, "unknown family");
}

DoubleFunctor generating_map(const Generator& g, int n)
{
    auto f = generating_functor(g);
    auto c = std::make_shared<FinCategory>(ordinal(n));
    return external_product(f, identity_functor(c));
}

} // namespace dbl
