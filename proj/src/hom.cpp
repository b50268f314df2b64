#include <map>

#include "dbl/search.hpp"

namespace dbl {

namespace {

// Cartesian product over per-position candidate lists; visit returns false to stop.
template <class Visit>
void product(const std::vector<std::vector<int>>& cands, std::size_t max_nodes, Visit visit)
{
    std::vector<int> cur(cands.size());
    std::size_t nodes = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == cands.size())
            return visit(cur);
        for (int c : cands[i]) {
            if (++nodes > max_nodes)
                throw Error(ErrorKind::budget_exceeded, "transformation enumeration exceeded budget");
            cur[i] = c;
            if (!rec(i + 1))
                return false;
        }
        return true;
    };
    rec(0);
}

} // namespace

std::vector<HNatTransf> all_hnat(std::shared_ptr<const DoubleFunctor> f, std::shared_ptr<const DoubleFunctor> g,
                                 const Budget& budget)
{
    const auto& D = *f->source;
    const auto& E = *f->target;
    std::vector<HNatTransf> out;
    std::vector<std::vector<int>> oc(D.num_objects());
    for (int a = 0; a < D.num_objects(); ++a)
        oc[a] = E.hor.hom(f->obj[a], g->obj[a]);
    product(oc, budget.max_cells * 64, [&](const std::vector<int>& th) {
        std::vector<std::vector<int>> vc(D.ver.num_morphisms());
        for (int j = 0; j < D.ver.num_morphisms(); ++j) {
            if (D.ver.is_identity(j))
                vc[j] = {E.idv(th[D.ver.src[j]])};
            else
                vc[j] = E.squares_with({th[D.ver.src[j]], th[D.ver.tgt[j]], f->ver[j], g->ver[j]});
            if (vc[j].empty())
                return true;
        }
        product(vc, budget.max_cells * 64, [&](const std::vector<int>& sq) {
            HNatTransf t{f, g, th, sq};
            if (validate(t).empty()) {
                if (out.size() >= budget.max_cells)
                    throw Error(ErrorKind::budget_exceeded, "too many horizontal transformations");
                out.push_back(std::move(t));
            }
            return true;
        });
        return true;
    });
    return out;
}

std::vector<VNatTransf> all_vnat(std::shared_ptr<const DoubleFunctor> f, std::shared_ptr<const DoubleFunctor> g,
                                 const Budget& budget)
{
    const auto& D = *f->source;
    const auto& E = *f->target;
    std::vector<VNatTransf> out;
    std::vector<std::vector<int>> oc(D.num_objects());
    for (int a = 0; a < D.num_objects(); ++a)
        oc[a] = E.ver.hom(f->obj[a], g->obj[a]);
    product(oc, budget.max_cells * 64, [&](const std::vector<int>& si) {
        std::vector<std::vector<int>> hc(D.hor.num_morphisms());
        for (int h = 0; h < D.hor.num_morphisms(); ++h) {
            if (D.hor.is_identity(h))
                hc[h] = {E.idh[si[D.hor.src[h]]]};
            else
                hc[h] = E.squares_with({f->hor[h], g->hor[h], si[D.hor.src[h]], si[D.hor.tgt[h]]});
            if (hc[h].empty())
                return true;
        }
        product(hc, budget.max_cells * 64, [&](const std::vector<int>& sq) {
            VNatTransf t{f, g, si, sq};
            if (validate(t).empty()) {
                if (out.size() >= budget.max_cells)
                    throw Error(ErrorKind::budget_exceeded, "too many vertical transformations");
                out.push_back(std::move(t));
            }
            return true;
        });
        return true;
    });
    return out;
}

HomDoubleCategory hom_double_category(std::shared_ptr<const DoubleCategory> d, std::shared_ptr<const DoubleCategory> e,
                                      const Budget& budget)
{
    const auto& D = *d;
    const auto& E = *e;
    HomDoubleCategory R;
    R.functors = all_double_functors(d, e, budget);
    int nf = int(R.functors.size());
    std::vector<std::shared_ptr<const DoubleFunctor>> fp;
    for (auto& F : R.functors)
        fp.push_back(std::make_shared<DoubleFunctor>(F));
    std::vector<int> hs, ht, vs, vt;
    for (int i = 0; i < nf; ++i)
        for (int k = 0; k < nf; ++k) {
            for (auto& t : all_hnat(fp[i], fp[k], budget)) {
                R.hnat.push_back(std::move(t));
                hs.push_back(i);
                ht.push_back(k);
            }
            for (auto& t : all_vnat(fp[i], fp[k], budget)) {
                R.vnat.push_back(std::move(t));
                vs.push_back(i);
                vt.push_back(k);
            }
        }
    if (R.hnat.size() + R.vnat.size() > budget.max_cells)
        throw Error(ErrorKind::budget_exceeded, "hom double category too large");

    std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, int> hkey, vkey;
    for (int i = 0; i < int(R.hnat.size()); ++i)
        hkey[{hs[i], ht[i], R.hnat[i].obj, R.hnat[i].ver}] = i;
    for (int i = 0; i < int(R.vnat.size()); ++i)
        vkey[{vs[i], vt[i], R.vnat[i].obj, R.vnat[i].hor}] = i;
    auto hcomp = [&](int x, int y) {
        auto &p = R.hnat[x], &q = R.hnat[y];
        std::vector<int> o, v;
        for (int a = 0; a < D.num_objects(); ++a)
            o.push_back(E.hor.then(p.obj[a], q.obj[a]));
        for (int j = 0; j < D.ver.num_morphisms(); ++j)
            v.push_back(E.beside(p.ver[j], q.ver[j]));
        return hkey.at({hs[x], ht[y], o, v});
    };
    auto vcomp = [&](int x, int y) {
        auto &p = R.vnat[x], &q = R.vnat[y];
        std::vector<int> o, h;
        for (int a = 0; a < D.num_objects(); ++a)
            o.push_back(E.ver.then(p.obj[a], q.obj[a]));
        for (int f = 0; f < D.hor.num_morphisms(); ++f)
            h.push_back(E.above(p.hor[f], q.hor[f]));
        return vkey.at({vs[x], vt[y], o, h});
    };
    auto hid = [&](int i) {
        auto& F = R.functors[i];
        std::vector<int> o, v;
        for (int a = 0; a < D.num_objects(); ++a)
            o.push_back(E.hor.ident[F.obj[a]]);
        for (int j = 0; j < D.ver.num_morphisms(); ++j)
            v.push_back(E.idh[F.ver[j]]);
        return hkey.at({i, i, o, v});
    };
    auto vid = [&](int i) {
        auto& F = R.functors[i];
        std::vector<int> o, h;
        for (int a = 0; a < D.num_objects(); ++a)
            o.push_back(E.ver.ident[F.obj[a]]);
        for (int f = 0; f < D.hor.num_morphisms(); ++f)
            h.push_back(E.idv(F.hor[f]));
        return vkey.at({i, i, o, h});
    };

    // modifications
    for (int l = 0; l < int(R.vnat.size()); ++l)
        for (int r = 0; r < int(R.vnat.size()); ++r)
            for (int t = 0; t < int(R.hnat.size()); ++t) {
                if (hs[t] != vs[l] || ht[t] != vs[r])
                    continue;
                for (int b = 0; b < int(R.hnat.size()); ++b) {
                    if (hs[b] != vt[l] || ht[b] != vt[r])
                        continue;
                    auto &th = R.hnat[t], &th2 = R.hnat[b];
                    auto &si = R.vnat[l], &si2 = R.vnat[r];
                    std::vector<std::vector<int>> cands(D.num_objects());
                    bool empty = false;
                    for (int a = 0; a < D.num_objects(); ++a) {
                        cands[a] = E.squares_with({th.obj[a], th2.obj[a], si.obj[a], si2.obj[a]});
                        empty = empty || cands[a].empty();
                    }
                    if (empty)
                        continue;
                    product(cands, budget.max_cells * 64, [&](const std::vector<int>& mu) {
                        for (int f = 0; f < D.hor.num_morphisms(); ++f)
                            if (E.beside(si.hor[f], mu[D.hor.tgt[f]]) != E.beside(mu[D.hor.src[f]], si2.hor[f]))
                                return true;
                        for (int j = 0; j < D.ver.num_morphisms(); ++j)
                            if (E.above(mu[D.ver.src[j]], th2.ver[j]) != E.above(th.ver[j], mu[D.ver.tgt[j]]))
                                return true;
                        if (R.mods.size() >= budget.max_squares)
                            throw Error(ErrorKind::budget_exceeded, "too many modifications");
                        R.mods.push_back({t, b, l, r, mu});
                        return true;
                    });
                }
            }
    std::map<std::tuple<int, int, int, int, std::vector<int>>, int> mkey;
    for (int i = 0; i < int(R.mods.size()); ++i) {
        auto& m = R.mods[i];
        mkey[{m.top, m.bottom, m.left, m.right, m.comp}] = i;
    }

    CategoryBuilder hb, vb;
    std::vector<int> hidx(R.hnat.size(), -1), vidx(R.vnat.size(), -1);
    for (int i = 0; i < nf; ++i) {
        int h = hid(i), v = vid(i);
        hb.add_object("F" + std::to_string(i), "h" + std::to_string(h));
        vb.add_object("F" + std::to_string(i), "v" + std::to_string(v));
        hidx[h] = hb.identity(i);
        vidx[v] = vb.identity(i);
    }
    for (int i = 0; i < int(R.hnat.size()); ++i)
        if (hidx[i] < 0)
            hidx[i] = hb.add_morphism("h" + std::to_string(i), hs[i], ht[i]);
    for (int i = 0; i < int(R.vnat.size()); ++i)
        if (vidx[i] < 0)
            vidx[i] = vb.add_morphism("v" + std::to_string(i), vs[i], vt[i]);
    for (int x = 0; x < int(R.hnat.size()); ++x)
        for (int y = 0; y < int(R.hnat.size()); ++y)
            if (ht[x] == hs[y])
                hb.set_then(hidx[x], hidx[y], hidx[hcomp(x, y)]);
    for (int x = 0; x < int(R.vnat.size()); ++x)
        for (int y = 0; y < int(R.vnat.size()); ++y)
            if (vt[x] == vs[y])
                vb.set_then(vidx[x], vidx[y], vidx[vcomp(x, y)]);
    // the builders number morphisms in their own order; reorder the lists to match
    std::vector<HNatTransf> hn(R.hnat.size());
    std::vector<VNatTransf> vn(R.vnat.size());
    for (int i = 0; i < int(R.hnat.size()); ++i)
        hn[hidx[i]] = R.hnat[i];
    for (int i = 0; i < int(R.vnat.size()); ++i)
        vn[vidx[i]] = R.vnat[i];

    DoubleBuilder db(hb.build(), vb.build());
    for (int i = 0; i < int(R.mods.size()); ++i) {
        auto& m = R.mods[i];
        db.add_square("m" + std::to_string(i), {hidx[m.top], hidx[m.bottom], vidx[m.left], vidx[m.right]});
    }
    for (int t = 0; t < int(R.hnat.size()); ++t) {
        std::vector<int> c;
        for (int a = 0; a < D.num_objects(); ++a)
            c.push_back(E.idv(R.hnat[t].obj[a]));
        db.set_idv(hidx[t], mkey.at({t, t, vid(hs[t]), vid(ht[t]), c}));
    }
    for (int v = 0; v < int(R.vnat.size()); ++v) {
        std::vector<int> c;
        for (int a = 0; a < D.num_objects(); ++a)
            c.push_back(E.idh[R.vnat[v].obj[a]]);
        db.set_idh(vidx[v], mkey.at({hid(vs[v]), hid(vt[v]), v, v, c}));
    }
    for (int x = 0; x < int(R.mods.size()); ++x)
        for (int y = 0; y < int(R.mods.size()); ++y) {
            auto &p = R.mods[x], &q = R.mods[y];
            if (p.bottom == q.top) {
                std::vector<int> c;
                for (int a = 0; a < D.num_objects(); ++a)
                    c.push_back(E.above(p.comp[a], q.comp[a]));
                db.set_above(x, y, mkey.at({p.top, q.bottom, vcomp(p.left, q.left), vcomp(p.right, q.right), c}));
            }
            if (p.right == q.left) {
                std::vector<int> c;
                for (int a = 0; a < D.num_objects(); ++a)
                    c.push_back(E.beside(p.comp[a], q.comp[a]));
                db.set_beside(x, y, mkey.at({hcomp(p.top, q.top), hcomp(p.bottom, q.bottom), p.left, q.right, c}));
            }
        }
    R.dc = db.build();
    for (auto& m : R.mods) {
        m.top = hidx[m.top];
        m.bottom = hidx[m.bottom];
        m.left = vidx[m.left];
        m.right = vidx[m.right];
    }
    R.hnat = std::move(hn);
    R.vnat = std::move(vn);
    return R;
}

} // namespace dbl
