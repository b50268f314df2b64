#pragma once

#include <functional>
#include <random>

#include "dbl/double.hpp"

namespace dbl {

// Axis-aligned cell; y grows downward, so y0 is the top edge.
struct Rect {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    auto operator<=>(const Rect&) const = default;
};

struct Subdivision {
    std::vector<Rect> cells;

    Rect bounds() const;
    // Rank-normalizes coordinates and sorts cells; returns the permutation new -> old.
    std::vector<int> normalize();
    bool operator==(const Subdivision&) const = default;
};

std::vector<std::string> validate(const Subdivision& s);

struct CutTree {
    enum class Kind { leaf, h, v };
    Kind kind = Kind::leaf;
    int cell = -1;                 // leaf only
    std::vector<CutTree> children; // h: rows top to bottom; v: columns left to right
    bool operator==(const CutTree&) const = default;
};

bool is_allowable(const Subdivision& s);
// Canonical tree: slice along every full horizontal cut if any exists, else along
// every full vertical cut. Throws not_allowable.
CutTree cut_tree(const Subdivision& s);
// Every binary cut tree; throws budget_exceeded past the limit.
std::vector<CutTree> all_binary_cut_trees(const Subdivision& s, std::size_t limit = 100000);
// Cut coordinates of full-length cuts of the whole subdivision, ascending.
std::vector<int> full_horizontal_cuts(const Subdivision& s);
std::vector<int> full_vertical_cuts(const Subdivision& s);
// Cells on each side of a cut; rank-normalized halves.
std::pair<Subdivision, Subdivision> split_horizontal(const Subdivision& s, int y);
std::pair<Subdivision, Subdivision> split_vertical(const Subdivision& s, int x);

// Labelling of a subdivision. Vertices are cell corners; segments are the pieces of
// cell sides between consecutive vertices on the same line.
struct Arrangement {
    Subdivision sub;
    std::vector<int> cell;                             // square per cell
    std::map<std::pair<int, int>, int> vertex;         // (x, y) -> object
    std::map<std::tuple<int, int, int>, int> hseg;     // (y, x0, x1) -> horizontal morphism
    std::map<std::tuple<int, int, int>, int> vseg;     // (x, y0, y1) -> vertical morphism
};

// Corner points and elementary segments of a subdivision.
std::vector<std::pair<int, int>> vertices_of(const Subdivision& s);
std::vector<std::tuple<int, int, int>> hsegments_of(const Subdivision& s);
std::vector<std::tuple<int, int, int>> vsegments_of(const Subdivision& s);

// Compatibility: segment endpoints match vertex labels and every cell's sides compose
// to its square's boundary.
std::vector<std::string> validate(const Arrangement& a, const DoubleCategory& d);

int compose_arrangement(const DoubleCategory& d, const Arrangement& a);
int fold(const DoubleCategory& d, const Arrangement& a, const CutTree& t);

// Random guillotine subdivision with exactly n cells, rank-normalized.
Subdivision random_allowable(int n, std::mt19937& rng);
// Every rank-normalized subdivision with at most n cells (n <= 8 is practical).
std::vector<Subdivision> all_subdivisions(int n);

// The five-cell pinwheel.
Subdivision pinwheel();
Subdivision grid(int cols, int rows);

} // namespace dbl
