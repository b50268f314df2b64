#include "dbl/arrange.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dbl {

Rect Subdivision::bounds() const
{
    if (cells.empty())
        return {};
    Rect r = cells[0];
    for (auto& c : cells) {
        r.x0 = std::min(r.x0, c.x0);
        r.x1 = std::max(r.x1, c.x1);
        r.y0 = std::min(r.y0, c.y0);
        r.y1 = std::max(r.y1, c.y1);
    }
    return r;
}

std::vector<int> Subdivision::normalize()
{
    std::vector<int> xs, ys;
    for (auto& c : cells) {
        xs.insert(xs.end(), {c.x0, c.x1});
        ys.insert(ys.end(), {c.y0, c.y1});
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto rx = [&](int x) { return int(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()); };
    auto ry = [&](int y) { return int(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()); };
    for (auto& c : cells)
        c = {rx(c.x0), rx(c.x1), ry(c.y0), ry(c.y1)};
    std::vector<int> perm(cells.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        auto &p = cells[a], &q = cells[b];
        return std::tie(p.y0, p.x0, p.y1, p.x1) < std::tie(q.y0, q.x0, q.y1, q.x1);
    });
    std::vector<Rect> sorted;
    for (int i : perm)
        sorted.push_back(cells[i]);
    cells = std::move(sorted);
    return perm;
}

std::vector<std::string> validate(const Subdivision& s)
{
    std::vector<std::string> d;
    if (s.cells.empty())
        return {"empty: no cells"};
    long long area = 0;
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        auto& c = s.cells[i];
        if (c.x1 <= c.x0 || c.y1 <= c.y0)
            d.push_back("area: cell " + std::to_string(i) + " is degenerate");
        area += (long long)(c.x1 - c.x0) * (c.y1 - c.y0);
        for (std::size_t j = i + 1; j < s.cells.size(); ++j) {
            auto& o = s.cells[j];
            if (c.x0 < o.x1 && o.x0 < c.x1 && c.y0 < o.y1 && o.y0 < c.y1)
                d.push_back("overlap: cells " + std::to_string(i) + ", " + std::to_string(j));
        }
    }
    auto b = s.bounds();
    if (d.empty() && area != (long long)(b.x1 - b.x0) * (b.y1 - b.y0))
        d.push_back("tiling: cells do not cover the bounding rectangle");
    return d;
}

namespace {

bool inside(const Rect& c, const Rect& r) { return r.x0 <= c.x0 && c.x1 <= r.x1 && r.y0 <= c.y0 && c.y1 <= r.y1; }

std::vector<int> cells_in(const Subdivision& s, const Rect& r)
{
    std::vector<int> out;
    for (int i = 0; i < int(s.cells.size()); ++i)
        if (inside(s.cells[i], r))
            out.push_back(i);
    return out;
}

std::vector<int> hcuts(const Subdivision& s, const std::vector<int>& cells, const Rect& r)
{
    std::set<int> cand;
    for (int i : cells)
        if (s.cells[i].y0 > r.y0)
            cand.insert(s.cells[i].y0);
    std::vector<int> out;
    for (int y : cand) {
        bool ok = true;
        for (int i : cells)
            if (s.cells[i].y0 < y && y < s.cells[i].y1)
                ok = false;
        if (ok)
            out.push_back(y);
    }
    return out;
}

std::vector<int> vcuts(const Subdivision& s, const std::vector<int>& cells, const Rect& r)
{
    std::set<int> cand;
    for (int i : cells)
        if (s.cells[i].x0 > r.x0)
            cand.insert(s.cells[i].x0);
    std::vector<int> out;
    for (int x : cand) {
        bool ok = true;
        for (int i : cells)
            if (s.cells[i].x0 < x && x < s.cells[i].x1)
                ok = false;
        if (ok)
            out.push_back(x);
    }
    return out;
}

bool allowable_in(const Subdivision& s, const Rect& r, std::map<Rect, bool>& memo)
{
    if (auto it = memo.find(r); it != memo.end())
        return it->second;
    auto cells = cells_in(s, r);
    bool res = cells.size() == 1;
    if (!res)
        for (int y : hcuts(s, cells, r))
            if (allowable_in(s, {r.x0, r.x1, r.y0, y}, memo) && allowable_in(s, {r.x0, r.x1, y, r.y1}, memo)) {
                res = true;
                break;
            }
    if (!res)
        for (int x : vcuts(s, cells, r))
            if (allowable_in(s, {r.x0, x, r.y0, r.y1}, memo) && allowable_in(s, {x, r.x1, r.y0, r.y1}, memo)) {
                res = true;
                break;
            }
    memo[r] = res;
    return res;
}

CutTree canonical(const Subdivision& s, const Rect& r)
{
    auto cells = cells_in(s, r);
    if (cells.size() == 1)
        return {CutTree::Kind::leaf, cells[0], {}};
    CutTree t;
    auto ys = hcuts(s, cells, r);
    if (!ys.empty()) {
        t.kind = CutTree::Kind::h;
        int prev = r.y0;
        ys.push_back(r.y1);
        for (int y : ys) {
            t.children.push_back(canonical(s, {r.x0, r.x1, prev, y}));
            prev = y;
        }
        return t;
    }
    auto xs = vcuts(s, cells, r);
    if (!xs.empty()) {
        t.kind = CutTree::Kind::v;
        int prev = r.x0;
        xs.push_back(r.x1);
        for (int x : xs) {
            t.children.push_back(canonical(s, {prev, x, r.y0, r.y1}));
            prev = x;
        }
        return t;
    }
    throw Error(ErrorKind::not_allowable, "subdivision has no full-length cut in a region with " +
                                              std::to_string(cells.size()) + " cells");
}

const std::vector<CutTree>& binary_trees(const Subdivision& s, const Rect& r, std::map<Rect, std::vector<CutTree>>& memo,
                                         std::size_t limit)
{
    if (auto it = memo.find(r); it != memo.end())
        return it->second;
    std::vector<CutTree> out;
    auto cells = cells_in(s, r);
    if (cells.size() == 1)
        out.push_back({CutTree::Kind::leaf, cells[0], {}});
    auto add = [&](CutTree::Kind k, const Rect& a, const Rect& b) {
        const auto& l = binary_trees(s, a, memo, limit);
        const auto& rr = binary_trees(s, b, memo, limit);
        for (auto& x : l)
            for (auto& y : rr) {
                if (out.size() >= limit)
                    throw Error(ErrorKind::budget_exceeded, "more than " + std::to_string(limit) + " cut trees");
                out.push_back({k, -1, {x, y}});
            }
    };
    if (cells.size() > 1) {
        for (int y : hcuts(s, cells, r))
            add(CutTree::Kind::h, {r.x0, r.x1, r.y0, y}, {r.x0, r.x1, y, r.y1});
        for (int x : vcuts(s, cells, r))
            add(CutTree::Kind::v, {r.x0, x, r.y0, r.y1}, {x, r.x1, r.y0, r.y1});
    }
    return memo[r] = std::move(out);
}

Subdivision restrict(const Subdivision& s, const Rect& r)
{
    Subdivision o;
    for (int i : cells_in(s, r))
        o.cells.push_back(s.cells[i]);
    o.normalize();
    return o;
}

} // namespace

bool is_allowable(const Subdivision& s)
{
    std::map<Rect, bool> memo;
    return allowable_in(s, s.bounds(), memo);
}

CutTree cut_tree(const Subdivision& s) { return canonical(s, s.bounds()); }

std::vector<CutTree> all_binary_cut_trees(const Subdivision& s, std::size_t limit)
{
    std::map<Rect, std::vector<CutTree>> memo;
    return binary_trees(s, s.bounds(), memo, limit);
}

std::vector<int> full_horizontal_cuts(const Subdivision& s)
{
    std::vector<int> all(s.cells.size());
    std::iota(all.begin(), all.end(), 0);
    return hcuts(s, all, s.bounds());
}

std::vector<int> full_vertical_cuts(const Subdivision& s)
{
    std::vector<int> all(s.cells.size());
    std::iota(all.begin(), all.end(), 0);
    return vcuts(s, all, s.bounds());
}

std::pair<Subdivision, Subdivision> split_horizontal(const Subdivision& s, int y)
{
    auto b = s.bounds();
    return {restrict(s, {b.x0, b.x1, b.y0, y}), restrict(s, {b.x0, b.x1, y, b.y1})};
}

std::pair<Subdivision, Subdivision> split_vertical(const Subdivision& s, int x)
{
    auto b = s.bounds();
    return {restrict(s, {b.x0, x, b.y0, b.y1}), restrict(s, {x, b.x1, b.y0, b.y1})};
}

std::vector<std::pair<int, int>> vertices_of(const Subdivision& s)
{
    std::set<std::pair<int, int>> v;
    for (auto& c : s.cells)
        v.insert({{c.x0, c.y0}, {c.x1, c.y0}, {c.x0, c.y1}, {c.x1, c.y1}});
    return {v.begin(), v.end()};
}

namespace {

// consecutive vertex coordinates along each line
std::map<int, std::vector<int>> xs_on_rows(const Subdivision& s)
{
    std::map<int, std::vector<int>> m;
    for (auto [x, y] : vertices_of(s))
        m[y].push_back(x);
    return m;
}

std::map<int, std::vector<int>> ys_on_cols(const Subdivision& s)
{
    std::map<int, std::vector<int>> m;
    for (auto [x, y] : vertices_of(s))
        m[x].push_back(y);
    for (auto& [x, ys] : m)
        std::sort(ys.begin(), ys.end());
    return m;
}

} // namespace

std::vector<std::tuple<int, int, int>> hsegments_of(const Subdivision& s)
{
    std::vector<std::tuple<int, int, int>> out;
    for (auto& [y, xs] : xs_on_rows(s))
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            for (auto& c : s.cells)
                if ((c.y0 == y || c.y1 == y) && c.x0 <= xs[i] && xs[i + 1] <= c.x1) {
                    out.emplace_back(y, xs[i], xs[i + 1]);
                    break;
                }
    return out;
}

std::vector<std::tuple<int, int, int>> vsegments_of(const Subdivision& s)
{
    std::vector<std::tuple<int, int, int>> out;
    for (auto& [x, ys] : ys_on_cols(s))
        for (std::size_t i = 0; i + 1 < ys.size(); ++i)
            for (auto& c : s.cells)
                if ((c.x0 == x || c.x1 == x) && c.y0 <= ys[i] && ys[i + 1] <= c.y1) {
                    out.emplace_back(x, ys[i], ys[i + 1]);
                    break;
                }
    return out;
}

std::vector<std::string> validate(const Arrangement& a, const DoubleCategory& d)
{
    auto diag = validate(a.sub);
    if (!diag.empty())
        return diag;
    if (a.cell.size() != a.sub.cells.size())
        return {"labels: one square per cell required"};
    auto vx = [&](int x, int y) {
        auto it = a.vertex.find({x, y});
        return it == a.vertex.end() ? -1 : it->second;
    };
    for (auto [x, y] : vertices_of(a.sub))
        if (vx(x, y) < 0)
            diag.push_back("labels: vertex (" + std::to_string(x) + "," + std::to_string(y) + ")");
    for (auto& k : hsegments_of(a.sub)) {
        auto it = a.hseg.find(k);
        auto [y, x0, x1] = k;
        if (it == a.hseg.end())
            diag.push_back("labels: horizontal segment at y=" + std::to_string(y));
        else if (d.hor.src[it->second] != vx(x0, y) || d.hor.tgt[it->second] != vx(x1, y))
            diag.push_back("endpoints: horizontal segment at y=" + std::to_string(y) + " x=" + std::to_string(x0));
    }
    for (auto& k : vsegments_of(a.sub)) {
        auto it = a.vseg.find(k);
        auto [x, y0, y1] = k;
        if (it == a.vseg.end())
            diag.push_back("labels: vertical segment at x=" + std::to_string(x));
        else if (d.ver.src[it->second] != vx(x, y0) || d.ver.tgt[it->second] != vx(x, y1))
            diag.push_back("endpoints: vertical segment at x=" + std::to_string(x) + " y=" + std::to_string(y0));
    }
    if (!diag.empty())
        return diag;
    auto rows = xs_on_rows(a.sub);
    auto cols = ys_on_cols(a.sub);
    auto hpath = [&](int y, int x0, int x1) {
        auto& xs = rows[y];
        int f = d.hor.ident[vx(x0, y)];
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (xs[i] >= x0 && xs[i + 1] <= x1)
                f = d.hor.then(f, a.hseg.at({y, xs[i], xs[i + 1]}));
        return f;
    };
    auto vpath = [&](int x, int y0, int y1) {
        auto& ys = cols[x];
        int v = d.ver.ident[vx(x, y0)];
        for (std::size_t i = 0; i + 1 < ys.size(); ++i)
            if (ys[i] >= y0 && ys[i + 1] <= y1)
                v = d.ver.then(v, a.vseg.at({x, ys[i], ys[i + 1]}));
        return v;
    };
    for (std::size_t i = 0; i < a.sub.cells.size(); ++i) {
        auto& c = a.sub.cells[i];
        int s = a.cell[i];
        if (s < 0 || s >= d.num_squares()) {
            diag.push_back("labels: cell " + std::to_string(i) + " has no square");
            continue;
        }
        if (d.top(s) != hpath(c.y0, c.x0, c.x1) || d.bottom(s) != hpath(c.y1, c.x0, c.x1) ||
            d.left[s] != vpath(c.x0, c.y0, c.y1) || d.right[s] != vpath(c.x1, c.y0, c.y1))
            diag.push_back("compatibility: cell " + std::to_string(i) + " labelled " + d.squares()[s]);
    }
    return diag;
}

int fold(const DoubleCategory& d, const Arrangement& a, const CutTree& t)
{
    if (t.kind == CutTree::Kind::leaf)
        return a.cell[t.cell];
    int acc = fold(d, a, t.children[0]);
    for (std::size_t i = 1; i < t.children.size(); ++i) {
        int nxt = fold(d, a, t.children[i]);
        acc = t.kind == CutTree::Kind::h ? d.above(acc, nxt) : d.beside(acc, nxt);
        if (acc < 0)
            throw Error(ErrorKind::not_compatible, "pieces do not compose");
    }
    return acc;
}

int compose_arrangement(const DoubleCategory& d, const Arrangement& a)
{
    auto diag = validate(a, d);
    if (!diag.empty())
        throw Error(ErrorKind::not_compatible, diag.front());
    return fold(d, a, cut_tree(a.sub));
}

Subdivision random_allowable(int n, std::mt19937& rng)
{
    if (n <= 1)
        return Subdivision{{{0, 1, 0, 1}}};
    std::uniform_int_distribution<int> split(1, n - 1), coin(0, 1);
    int k = split(rng);
    bool stack = coin(rng);
    auto a = random_allowable(k, rng);
    auto b = random_allowable(n - k, rng);
    // merge the coordinates along the shared side so that lines may or may not align
    auto merge = [&](int p, int q) {
        std::vector<int> ma(p + 1), mb(q + 1);
        int i = 1, j = 1, pos = 1;
        std::uniform_int_distribution<int> pick(0, 2);
        while (i < p || j < q) {
            int c = i >= p ? 1 : j >= q ? 0 : pick(rng);
            if (c != 1)
                ma[i++] = pos;
            if (c != 0)
                mb[j++] = pos;
            ++pos;
        }
        ma[p] = mb[q] = pos;
        return std::pair{ma, mb};
    };
    Subdivision out;
    auto ba = a.bounds(), bb = b.bounds();
    if (stack) {
        auto [ma, mb] = merge(ba.x1, bb.x1);
        int h = ba.y1;
        for (auto& c : a.cells)
            out.cells.push_back({ma[c.x0], ma[c.x1], c.y0, c.y1});
        for (auto& c : b.cells)
            out.cells.push_back({mb[c.x0], mb[c.x1], c.y0 + h, c.y1 + h});
    } else {
        auto [ma, mb] = merge(ba.y1, bb.y1);
        int w = ba.x1;
        for (auto& c : a.cells)
            out.cells.push_back({c.x0, c.x1, ma[c.y0], ma[c.y1]});
        for (auto& c : b.cells)
            out.cells.push_back({c.x0 + w, c.x1 + w, mb[c.y0], mb[c.y1]});
    }
    out.normalize();
    return out;
}

std::vector<Subdivision> all_subdivisions(int n)
{
    std::vector<Subdivision> out;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; a + b - 1 <= n; ++b) {
            std::vector<int> owner(a * b, -1);
            std::vector<Rect> cells;
            std::function<void()> fill = [&]() {
                int first = -1;
                for (int i = 0; i < a * b; ++i)
                    if (owner[i] < 0) {
                        first = i;
                        break;
                    }
                if (first < 0) {
                    std::vector<char> xs(a + 1, 0), ys(b + 1, 0);
                    for (auto& c : cells) {
                        xs[c.x0] = xs[c.x1] = 1;
                        ys[c.y0] = ys[c.y1] = 1;
                    }
                    if (std::count(xs.begin(), xs.end(), 1) == a + 1 && std::count(ys.begin(), ys.end(), 1) == b + 1) {
                        Subdivision s{cells};
                        s.normalize();
                        out.push_back(std::move(s));
                    }
                    return;
                }
                if (int(cells.size()) == n)
                    return;
                int x = first % a, y = first / a;
                for (int w = 1; x + w <= a && owner[y * a + x + w - 1] < 0; ++w)
                    for (int h = 1; y + h <= b; ++h) {
                        bool free = true;
                        for (int dx = 0; dx < w && free; ++dx)
                            free = owner[(y + h - 1) * a + x + dx] < 0;
                        if (!free)
                            break;
                        for (int dy = 0; dy < h; ++dy)
                            for (int dx = 0; dx < w; ++dx)
                                owner[(y + dy) * a + x + dx] = int(cells.size());
                        cells.push_back({x, x + w, y, y + h});
                        fill();
                        cells.pop_back();
                        for (int dy = 0; dy < h; ++dy)
                            for (int dx = 0; dx < w; ++dx)
                                owner[(y + dy) * a + x + dx] = -1;
                    }
            };
            fill();
        }
    return out;
}

Subdivision pinwheel()
{
    Subdivision s{{{0, 2, 0, 1}, {2, 3, 0, 2}, {1, 3, 2, 3}, {0, 1, 1, 3}, {1, 2, 1, 2}}};
    s.normalize();
    return s;
}

Subdivision grid(int cols, int rows)
{
    Subdivision s;
    for (int y = 0; y < rows; ++y)
        for (int x = 0; x < cols; ++x)
            s.cells.push_back({x, x + 1, y, y + 1});
    return s;
}

} // namespace dbl
