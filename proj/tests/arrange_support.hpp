#pragma once

#include <set>

#include "dbl/arrange.hpp"

namespace fx {

using namespace dbl;

// Allowability by merging: repeatedly glue two cells whose union is a rectangle.
// A subdivision reduces to one cell iff a slicing sequence produces it.
inline bool merge_oracle(std::vector<Rect> cells, std::set<std::vector<Rect>>& dead)
{
    if (cells.size() == 1)
        return true;
    std::sort(cells.begin(), cells.end());
    if (dead.count(cells))
        return false;
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (i == j)
                continue;
            auto &a = cells[i], &b = cells[j];
            Rect m{};
            bool ok = false;
            if (a.y0 == b.y0 && a.y1 == b.y1 && a.x1 == b.x0) {
                m = {a.x0, b.x1, a.y0, a.y1};
                ok = true;
            } else if (a.x0 == b.x0 && a.x1 == b.x1 && a.y1 == b.y0) {
                m = {a.x0, a.x1, a.y0, b.y1};
                ok = true;
            }
            if (!ok)
                continue;
            std::vector<Rect> next;
            for (std::size_t k = 0; k < cells.size(); ++k)
                if (k != i && k != j)
                    next.push_back(cells[k]);
            next.push_back(m);
            if (merge_oracle(next, dead))
                return true;
        }
    dead.insert(cells);
    return false;
}

inline bool merge_oracle(const Subdivision& s)
{
    std::set<std::vector<Rect>> dead;
    return merge_oracle(s.cells, dead);
}

// Arrangement over the commuting squares of the poset [k]x[k]; vertex labels are
// monotone in both coordinates, so every side has a unique label.
inline Arrangement poset_arrangement(const DoubleCategory& d, int k, const Subdivision& s, std::mt19937& rng)
{
    auto b = s.bounds();
    std::bernoulli_distribution step(0.45);
    std::vector<std::vector<int>> u(b.x1 + 1, std::vector<int>(b.y1 + 1)), v = u;
    for (int x = 0; x <= b.x1; ++x)
        for (int y = 0; y <= b.y1; ++y) {
            int pu = std::max(x ? u[x - 1][y] : 0, y ? u[x][y - 1] : 0);
            int pv = std::max(x ? v[x - 1][y] : 0, y ? v[x][y - 1] : 0);
            u[x][y] = std::min(k, pu + int(step(rng)));
            v[x][y] = std::min(k, pv + int(step(rng)));
        }
    auto obj = [&](int x, int y) {
        return d.hor.object("(" + std::to_string(u[x][y]) + "," + std::to_string(v[x][y]) + ")");
    };
    auto arrow = [&](const FinCategory& c, int p, int q) { return c.hom(p, q).at(0); };
    Arrangement a;
    a.sub = s;
    for (auto [x, y] : vertices_of(s))
        a.vertex[{x, y}] = obj(x, y);
    for (auto [y, x0, x1] : hsegments_of(s))
        a.hseg[{y, x0, x1}] = arrow(d.hor, obj(x0, y), obj(x1, y));
    for (auto [x, y0, y1] : vsegments_of(s))
        a.vseg[{x, y0, y1}] = arrow(d.ver, obj(x, y0), obj(x, y1));
    for (auto& c : s.cells) {
        Boundary bd{arrow(d.hor, obj(c.x0, c.y0), obj(c.x1, c.y0)), arrow(d.hor, obj(c.x0, c.y1), obj(c.x1, c.y1)),
                    arrow(d.ver, obj(c.x0, c.y0), obj(c.x0, c.y1)), arrow(d.ver, obj(c.x1, c.y0), obj(c.x1, c.y1))};
        a.cell.push_back(d.squares_with(bd).at(0));
    }
    return a;
}

} // namespace fx
