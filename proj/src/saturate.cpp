#include "dbl/saturate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dbl {

int CatPresentation::add_object(const Id& name, const Id& identity)
{
    objects.push_back(name);
    identity_names.push_back(identity.empty() ? "1_" + name : identity);
    return int(objects.size()) - 1;
}

int CatPresentation::add_gen(const Id& name, int src, int tgt)
{
    gens.push_back({name, src, tgt});
    return int(gens.size()) - 1;
}

namespace {

class CatEnumerator {
public:
    CatEnumerator(const CatPresentation& p, const Budget& b) : p(p), budget(b)
    {
        int no = int(p.objects.size());
        out.assign(no, {});
        slot.assign(p.gens.size(), -1);
        for (int g = 0; g < int(p.gens.size()); ++g) {
            auto& gen = p.gens[g];
            if (gen.src < 0 || gen.src >= no || gen.tgt < 0 || gen.tgt >= no)
                throw Error(ErrorKind::invalid, "generator " + gen.name + " has undeclared endpoints");
            slot[g] = int(out[gen.src].size());
            out[gen.src].push_back(g);
        }
        rels.assign(no, {});
        for (std::size_t r = 0; r < p.relations.size(); ++r) {
            auto& [a, b] = p.relations[r];
            auto end = [&](const Path& w) {
                int o = w.obj;
                for (int g : w.gens) {
                    if (p.gens[g].src != o)
                        throw Error(ErrorKind::invalid, "relation path is not composable at " + p.gens[g].name);
                    o = p.gens[g].tgt;
                }
                return o;
            };
            if (a.obj != b.obj || end(a) != end(b))
                throw Error(ErrorKind::not_parallel, "relation " + std::to_string(r) + " relates non-parallel paths");
            rels[a.obj].push_back(int(r));
        }
        for (int o = 0; o < no; ++o)
            make(o, o);
    }

    SaturatedCategory run()
    {
        for (int i = 0; i < int(tgt.size()); ++i) {
            if (find(i) != i)
                continue;
            for (int r : rels[tgt[i]]) {
                int a = trace(i, p.relations[r].first.gens);
                int b = trace(i, p.relations[r].second.gens);
                merge(a, b);
                if (find(i) != i)
                    break;
            }
            if (find(i) != i)
                continue;
            for (std::size_t k = 0; k < act[i].size(); ++k)
                if (act[i][k] < 0) {
                    int g = out[tgt[i]][k];
                    int n = make(src[i], p.gens[g].tgt);
                    act[i][k] = n;
                }
        }
        return finish();
    }

private:
    const CatPresentation& p;
    const Budget& budget;
    std::vector<std::vector<int>> out, rels;
    std::vector<int> slot;
    std::vector<int> src, tgt, parent;
    std::vector<std::vector<int>> act;

    int make(int s, int t)
    {
        if (tgt.size() >= budget.max_cells)
            throw Error(ErrorKind::budget_exceeded,
                        "category enumeration exceeded max_cells=" + std::to_string(budget.max_cells));
        src.push_back(s);
        tgt.push_back(t);
        parent.push_back(int(parent.size()));
        act.emplace_back(out[t].size(), -1);
        return int(tgt.size()) - 1;
    }

    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    int trace(int x, const std::vector<int>& word)
    {
        x = find(x);
        for (int g : word) {
            int& a = act[x][slot[g]];
            if (a < 0) {
                int n = make(src[x], p.gens[g].tgt);
                act[x][slot[g]] = n; // make() may reallocate act
                x = n;
            } else {
                x = find(a);
            }
        }
        return x;
    }

    void merge(int a, int b)
    {
        std::deque<std::pair<int, int>> q{{a, b}};
        while (!q.empty()) {
            auto [x, y] = q.front();
            q.pop_front();
            x = find(x);
            y = find(y);
            if (x == y)
                continue;
            if (y < x)
                std::swap(x, y);
            parent[y] = x;
            for (std::size_t k = 0; k < act[y].size(); ++k) {
                if (act[y][k] < 0)
                    continue;
                if (act[x][k] < 0)
                    act[x][k] = act[y][k];
                else
                    q.emplace_back(act[x][k], act[y][k]);
            }
        }
    }

    SaturatedCategory finish()
    {
        int no = int(p.objects.size());
        // shortest words by breadth-first search from the identities
        std::vector<int> order, index(tgt.size(), -1);
        std::vector<Path> words;
        for (int o = 0; o < no; ++o) {
            int e = find(o);
            if (index[e] < 0) {
                index[e] = int(order.size());
                order.push_back(e);
                words.push_back({o, {}});
            }
        }
        for (std::size_t h = 0; h < order.size(); ++h) {
            int x = order[h];
            for (std::size_t k = 0; k < act[x].size(); ++k) {
                int y = find(act[x][k]);
                if (index[y] < 0) {
                    index[y] = int(order.size());
                    order.push_back(y);
                    auto w = words[h];
                    w.gens.push_back(out[tgt[x]][k]);
                    words.push_back(w);
                }
            }
        }
        CategoryBuilder b;
        for (int o = 0; o < no; ++o)
            b.add_object(p.objects[o], o < int(p.identity_names.size()) ? p.identity_names[o] : "1_" + p.objects[o]);
        std::vector<int> morph(order.size(), -1);
        for (int o = 0; o < no; ++o) {
            int e = index[find(o)];
            if (morph[e] < 0)
                morph[e] = b.identity(o);
            else
                throw Error(ErrorKind::unsupported, "presentation identifies identities of distinct objects");
        }
        for (std::size_t h = 0; h < order.size(); ++h) {
            if (morph[h] >= 0)
                continue;
            std::string name;
            for (int g : words[h].gens)
                name += (name.empty() ? "" : ";") + p.gens[g].name;
            morph[h] = b.add_morphism(name, src[order[h]], tgt[order[h]]);
        }
        auto walk = [&](int x, const std::vector<int>& w) {
            for (int g : w)
                x = find(act[x][slot[g]]);
            return x;
        };
        for (std::size_t h = 0; h < order.size(); ++h)
            for (std::size_t k = 0; k < order.size(); ++k)
                if (tgt[order[h]] == src[order[k]])
                    b.set_then(morph[h], morph[k], morph[index[walk(order[h], words[k].gens)]]);
        SaturatedCategory r;
        r.cat = b.build();
        std::vector<Path> byidx(order.size());
        for (std::size_t h = 0; h < order.size(); ++h)
            byidx[morph[h]] = words[h];
        r.words = std::move(byidx);
        for (int g = 0; g < int(p.gens.size()); ++g)
            r.gen_image.push_back(morph[index[walk(find(p.gens[g].src), {g})]]);
        return r;
    }
};

} // namespace

SaturatedCategory saturate(const CatPresentation& p, const Budget& budget)
{
    CatEnumerator e(p, budget);
    return e.run();
}

int SquarePresentation::add_gen(const Id& name, const Boundary& b)
{
    gens.push_back({name, b});
    return int(gens.size()) - 1;
}

namespace {

std::uint64_t pair_key(int x, int y) { return (std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y); }

class SquareEnumerator {
public:
    SquareEnumerator(const SquarePresentation& p, const Budget& b) : p(p), H(p.hor), V(p.ver), budget(b)
    {
        if (H.objects != V.objects)
            throw Error(ErrorKind::invalid, "horizontal and vertical categories must share objects");
        idv_el.assign(H.num_morphisms(), -1);
        idh_el.assign(V.num_morphisms(), -1);
        for (int a = 0; a < H.num_objects(); ++a) {
            int e = make({H.ident[a], H.ident[a], V.ident[a], V.ident[a]}, {Rec::idv, H.ident[a], -1, -1});
            idv_el[H.ident[a]] = idh_el[V.ident[a]] = e;
        }
        for (int f = 0; f < H.num_morphisms(); ++f)
            if (idv_el[f] < 0)
                idv_el[f] = make({f, f, V.ident[H.src[f]], V.ident[H.tgt[f]]}, {Rec::idv, f, -1, -1});
        for (int v = 0; v < V.num_morphisms(); ++v)
            if (idh_el[v] < 0)
                idh_el[v] = make({H.ident[V.src[v]], H.ident[V.tgt[v]], v, v}, {Rec::idh, v, -1, -1});
        for (auto& g : p.gens) {
            auto& bd = g.b;
            bool ok = bd.top >= 0 && bd.top < H.num_morphisms() && bd.bottom >= 0 && bd.bottom < H.num_morphisms() &&
                      bd.left >= 0 && bd.left < V.num_morphisms() && bd.right >= 0 && bd.right < V.num_morphisms();
            if (!ok || H.src[bd.top] != V.src[bd.left] || H.tgt[bd.top] != V.src[bd.right] ||
                H.src[bd.bottom] != V.tgt[bd.left] || H.tgt[bd.bottom] != V.tgt[bd.right])
                throw Error(ErrorKind::invalid, "generator " + g.name + " has an inconsistent boundary");
            gen_el.push_back(make(bd, {Rec::gen, int(gen_el.size()), -1, -1}));
        }
        // identity squares compose like their boundaries
        for (int f = 0; f < H.num_morphisms(); ++f)
            for (int g : H.out(H.tgt[f]))
                put(B, idv_el[f], idv_el[g], idv_el[H.then(f, g)]);
        for (int v = 0; v < V.num_morphisms(); ++v)
            for (int w : V.out(V.tgt[v]))
                put(A, idh_el[v], idh_el[w], idh_el[V.then(v, w)]);
    }

    SaturatedDouble run()
    {
        for (auto& [a, b] : p.relations) {
            int x = eval(a), y = eval(b);
            unite(x, y);
        }
        for (;;) {
            deduce();
            auto missing = missing_pairs();
            if (missing.empty())
                break;
            // define one round of composites, then deduce again
            for (auto& [dir, x, y] : missing) {
                x = find(x);
                y = find(y);
                auto& T = dir ? A : B;
                if (T.count(pair_key(x, y)))
                    continue;
                compose(dir, x, y);
            }
        }
        return finish();
    }

private:
    enum class Rec { gen, idv, idh, beside, above };
    struct Record {
        Rec kind;
        int index, a, b;
    };
    const SquarePresentation& p;
    const FinCategory& H;
    const FinCategory& V;
    const Budget& budget;
    std::vector<Boundary> bd;
    std::vector<Record> rec;
    std::vector<int> parent;
    std::vector<int> idv_el, idh_el, gen_el;
    std::unordered_map<std::uint64_t, int> B, A; // beside, above
    bool changed = false;

    int make(const Boundary& b, const Record& r)
    {
        if (bd.size() >= budget.max_squares)
            throw Error(ErrorKind::budget_exceeded,
                        "square saturation exceeded max_squares=" + std::to_string(budget.max_squares));
        bd.push_back(b);
        rec.push_back(r);
        parent.push_back(int(parent.size()));
        return int(bd.size()) - 1;
    }

    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int x, int y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return;
        if (bd[x] != bd[y])
            throw Error(ErrorKind::invalid, "relation equates squares with different boundaries");
        if (y < x)
            std::swap(x, y);
        parent[y] = x;
        changed = true;
    }

    bool is_hunit(int x) { return find(x) == find(idh_el[bd[x].left]) && bd[x].left == bd[x].right; }
    bool is_vunit(int x) { return find(x) == find(idv_el[bd[x].top]) && bd[x].top == bd[x].bottom; }

    // composite if known (units included), else -1
    int lookup(int dir, int x, int y)
    {
        x = find(x);
        y = find(y);
        if (dir == 0) {
            if (is_hunit(x))
                return y;
            if (is_hunit(y))
                return x;
        } else {
            if (is_vunit(x))
                return y;
            if (is_vunit(y))
                return x;
        }
        auto& T = dir ? A : B;
        auto it = T.find(pair_key(x, y));
        return it == T.end() ? -1 : find(it->second);
    }

    void put(std::unordered_map<std::uint64_t, int>& T, int x, int y, int z)
    {
        auto [it, fresh] = T.emplace(pair_key(find(x), find(y)), z);
        if (fresh)
            changed = true;
        else
            unite(it->second, z);
    }

    Boundary composite_boundary(int dir, int x, int y)
    {
        auto &a = bd[x], &b = bd[y];
        if (dir == 0)
            return {H.then(a.top, b.top), H.then(a.bottom, b.bottom), a.left, b.right};
        return {a.top, b.bottom, V.then(a.left, b.left), V.then(a.right, b.right)};
    }

    int compose(int dir, int x, int y)
    {
        x = find(x);
        y = find(y);
        if (dir == 0 ? bd[x].right != bd[y].left : bd[x].bottom != bd[y].top)
            throw Error(ErrorKind::invalid, "term composes squares with mismatched boundaries");
        int z = lookup(dir, x, y);
        if (z >= 0)
            return z;
        z = make(composite_boundary(dir, x, y), {dir ? Rec::above : Rec::beside, -1, x, y});
        put(dir ? A : B, x, y, z);
        return z;
    }

    int eval(const SqTerm& t)
    {
        switch (t.kind) {
        case SqTerm::Kind::gen:
            return gen_el.at(t.index);
        case SqTerm::Kind::idv:
            return idv_el.at(t.index);
        case SqTerm::Kind::idh:
            return idh_el.at(t.index);
        case SqTerm::Kind::beside:
            return compose(0, eval(t.kids[0]), eval(t.kids[1]));
        case SqTerm::Kind::above:
            return compose(1, eval(t.kids[0]), eval(t.kids[1]));
        }
        return -1;
    }

    // Re-key tables on class representatives, merging results of colliding keys.
    void canonicalize()
    {
        bool again = true;
        while (again) {
            changed = false;
            for (int dir = 0; dir < 2; ++dir) {
                auto& T = dir ? A : B;
                std::unordered_map<std::uint64_t, int> N;
                N.reserve(T.size());
                for (auto [k, z] : T) {
                    int x = find(int(k >> 32)), y = find(int(k & 0xffffffffu));
                    z = find(z);
                    if (dir == 0 ? (is_hunit(x) || is_hunit(y)) : (is_vunit(x) || is_vunit(y)))
                        unite(z, (dir == 0 ? is_hunit(x) : is_vunit(x)) ? y : x);
                    auto [it, fresh] = N.emplace(pair_key(x, y), z);
                    if (!fresh)
                        unite(it->second, z);
                }
                T = std::move(N);
            }
            again = changed;
        }
    }

    void deduce()
    {
        for (;;) {
            canonicalize();
            changed = false;
            for (int dir = 0; dir < 2; ++dir) {
                auto& T = dir ? A : B;
                std::unordered_map<int, std::vector<std::pair<int, int>>> byl;
                for (auto [k, z] : T)
                    byl[find(int(k >> 32))].emplace_back(find(int(k & 0xffffffffu)), find(z));
                std::vector<std::array<int, 3>> entries;
                for (auto [k, z] : T)
                    entries.push_back({find(int(k >> 32)), find(int(k & 0xffffffffu)), find(z)});
                std::sort(entries.begin(), entries.end());
                for (auto [x, y, u] : entries) {
                    auto it = byl.find(y);
                    if (it == byl.end())
                        continue;
                    for (auto [z, v] : it->second) {
                        int l = lookup(dir, u, z), r = lookup(dir, x, v);
                        if (l >= 0 && r >= 0)
                            unite(l, r);
                        else if (l >= 0)
                            put(T, x, v, l);
                        else if (r >= 0)
                            put(T, u, z, r);
                    }
                }
            }
            // interchange: (x/z) beside (y/w) = [x y] above [z w], units included
            {
                std::vector<int> live;
                for (int i = 0; i < int(parent.size()); ++i)
                    if (find(i) == i)
                        live.push_back(i);
                std::unordered_map<int, std::vector<int>> byleft, bytop;
                for (int x : live) {
                    byleft[bd[x].left].push_back(x);
                    bytop[bd[x].top].push_back(x);
                }
                for (int x : live) {
                    if (find(x) != x)
                        continue;
                    for (int y : byleft[bd[x].right]) {
                        int u = lookup(0, x, y);
                        if (u < 0)
                            continue;
                        for (int z : bytop[bd[x].bottom]) {
                            int pz = lookup(1, x, z);
                            if (pz < 0)
                                continue;
                            for (int w : bytop[bd[y].bottom]) {
                                if (bd[z].right != bd[w].left)
                                    continue;
                                int qw = lookup(1, y, w), v = lookup(0, z, w);
                                if (qw < 0 || v < 0)
                                    continue;
                                int l = lookup(1, u, v), r = lookup(0, pz, qw);
                                if (l >= 0 && r >= 0)
                                    unite(l, r);
                                else if (l >= 0)
                                    put(B, pz, qw, l);
                                else if (r >= 0)
                                    put(A, u, v, r);
                            }
                        }
                    }
                }
            }
            if (!changed)
                break;
        }
    }

    std::vector<std::tuple<int, int, int>> missing_pairs()
    {
        std::vector<int> live;
        for (int i = 0; i < int(parent.size()); ++i)
            if (find(i) == i)
                live.push_back(i);
        std::unordered_map<int, std::vector<int>> byleft, bytop;
        for (int x : live) {
            byleft[bd[x].left].push_back(x);
            bytop[bd[x].top].push_back(x);
        }
        std::vector<std::tuple<int, int, int>> out;
        for (int x : live) {
            for (int y : byleft[bd[x].right])
                if (lookup(0, x, y) < 0)
                    out.emplace_back(0, x, y);
            for (int y : bytop[bd[x].bottom])
                if (lookup(1, x, y) < 0)
                    out.emplace_back(1, x, y);
        }
        return out;
    }

    SaturatedDouble finish()
    {
        std::vector<int> live;
        for (int i = 0; i < int(parent.size()); ++i)
            if (find(i) == i)
                live.push_back(i);
        // smallest naming term per class: identities, then generators, then composites
        std::vector<std::pair<int, std::string>> best(parent.size(), {1 << 30, ""});
        std::vector<SqTerm> term(parent.size());
        auto offer = [&](int c, int size, std::string name, SqTerm t) {
            c = find(c);
            if (std::pair{size, name} < best[c]) {
                best[c] = {size, std::move(name)};
                term[c] = std::move(t);
                return true;
            }
            return false;
        };
        for (int a = 0; a < H.num_objects(); ++a)
            offer(idv_el[H.ident[a]], 0, "i(" + H.objects[a] + ")", SqTerm::iv(H.ident[a]));
        for (int f = 0; f < H.num_morphisms(); ++f)
            offer(idv_el[f], 0, "iv(" + H.morphisms[f] + ")", SqTerm::iv(f));
        for (int v = 0; v < V.num_morphisms(); ++v)
            offer(idh_el[v], 0, "ih(" + V.morphisms[v] + ")", SqTerm::ih(v));
        for (int g = 0; g < int(gen_el.size()); ++g)
            offer(gen_el[g], 1, p.gens[g].name, SqTerm::gen(g));
        for (bool again = true; again;) {
            again = false;
            for (int dir = 0; dir < 2; ++dir)
                for (auto [k, z] : dir ? A : B) {
                    int x = find(int(k >> 32)), y = find(int(k & 0xffffffffu));
                    if (best[x].first >= (1 << 30) || best[y].first >= (1 << 30) || x == find(z) || y == find(z))
                        continue;
                    std::string name = dir ? "(" + best[x].second + "/" + best[y].second + ")"
                                           : "[" + best[x].second + " " + best[y].second + "]";
                    SqTerm t = dir ? SqTerm::above(term[x], term[y]) : SqTerm::beside(term[x], term[y]);
                    again |= offer(z, best[x].first + best[y].first + 1, std::move(name), std::move(t));
                }
        }
        DoubleBuilder db(H, V);
        std::vector<int> idx(parent.size(), -1);
        for (int x : live)
            idx[x] = db.add_square(best[x].second, bd[x]);
        for (int f = 0; f < H.num_morphisms(); ++f)
            db.set_idv(f, idx[find(idv_el[f])]);
        for (int v = 0; v < V.num_morphisms(); ++v)
            db.set_idh(v, idx[find(idh_el[v])]);
        for (int dir = 0; dir < 2; ++dir)
            for (auto [k, z] : dir ? A : B) {
                int x = idx[find(int(k >> 32))], y = idx[find(int(k & 0xffffffffu))], c = idx[find(z)];
                if (dir)
                    db.set_above(x, y, c);
                else
                    db.set_beside(x, y, c);
            }
        SaturatedDouble r;
        r.dc = db.build();
        for (int g : gen_el)
            r.gen_image.push_back(idx[find(g)]);
        for (int x : live)
            r.terms.push_back(term[x]);
        return r;
    }
};

} // namespace

SaturatedDouble saturate(const SquarePresentation& p, const Budget& budget)
{
    SquareEnumerator e(p, budget);
    return e.run();
}

int evaluate(const SqTerm& t, const DoubleCategory& d, const std::vector<int>& gen, const std::vector<int>& hor,
             const std::vector<int>& ver)
{
    switch (t.kind) {
    case SqTerm::Kind::gen:
        return gen.at(t.index);
    case SqTerm::Kind::idv:
        return d.idv(hor.at(t.index));
    case SqTerm::Kind::idh:
        return d.idh.at(ver.at(t.index));
    case SqTerm::Kind::beside: {
        int a = evaluate(t.kids[0], d, gen, hor, ver), b = evaluate(t.kids[1], d, gen, hor, ver);
        return a < 0 || b < 0 ? -1 : d.beside(a, b);
    }
    case SqTerm::Kind::above: {
        int a = evaluate(t.kids[0], d, gen, hor, ver), b = evaluate(t.kids[1], d, gen, hor, ver);
        return a < 0 || b < 0 ? -1 : d.above(a, b);
    }
    }
    return -1;
}

std::string to_string(const SqTerm& t, const SquarePresentation& p)
{
    switch (t.kind) {
    case SqTerm::Kind::gen:
        return p.gens.at(t.index).name;
    case SqTerm::Kind::idv:
        return "iv(" + p.hor.morphisms.at(t.index) + ")";
    case SqTerm::Kind::idh:
        return "ih(" + p.ver.morphisms.at(t.index) + ")";
    case SqTerm::Kind::beside:
        return "[" + to_string(t.kids[0], p) + " " + to_string(t.kids[1], p) + "]";
    case SqTerm::Kind::above:
        return "(" + to_string(t.kids[0], p) + "/" + to_string(t.kids[1], p) + ")";
    }
    return "";
}

} // namespace dbl
