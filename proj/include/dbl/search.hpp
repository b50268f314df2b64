#pragma once

#include <array>
#include <functional>

#include "dbl/double.hpp"

namespace dbl {

// Multi-sorted finite structure with total unary operations and partial binary
// operations. Categories and double categories are encoded as instances; structure
// maps between them are exactly the homomorphisms of the encodings.
struct Algebra {
    struct Unary {
        int from = 0, to = 0;
        std::vector<int> table;
    };
    struct Binary {
        int left = 0, right = 0, out = 0;
        std::vector<std::array<int, 3>> entries; // (x, y, x*y)
        std::vector<std::vector<int>> by_left, by_right, by_out; // entry indices
        std::unordered_map<std::uint64_t, int> lookup;
        int apply(int x, int y) const;
    };
    std::vector<int> sizes;
    std::vector<Unary> unary;
    std::vector<Binary> binary;

    void finalize(); // builds the entry indices
};

Algebra algebra_of(const FinCategory& c);
// Sorts: objects, horizontal, vertical, squares.
Algebra algebra_of(const DoubleCategory& d);

struct SearchOptions {
    bool injective = false;
    bool bijective = false;
    // Joint colour refinement of source and target; only sound for bijective searches.
    bool refine = false;
    std::function<bool(int sort, int x, int y)> filter;
    std::vector<std::tuple<int, int, int>> fixed; // (sort, x, y) pre-assignments
    std::size_t max_nodes = 50'000'000;
};

// Enumerates homomorphisms X -> Y in a deterministic order. on_solution returns false
// to stop. Returns the number of solutions visited. Throws budget_exceeded when the
// search tree exceeds max_nodes.
std::size_t search_homs(const Algebra& x, const Algebra& y, const SearchOptions& opts,
                        const std::function<bool(const std::vector<std::vector<int>>&)>& on_solution);

std::optional<Functor> iso_search(std::shared_ptr<const FinCategory> x, std::shared_ptr<const FinCategory> y);
std::optional<DoubleFunctor> iso_search(std::shared_ptr<const DoubleCategory> x,
                                        std::shared_ptr<const DoubleCategory> y);
bool isomorphic(const FinCategory& x, const FinCategory& y);
bool isomorphic(const DoubleCategory& x, const DoubleCategory& y);

std::vector<Functor> all_functors(std::shared_ptr<const FinCategory> x, std::shared_ptr<const FinCategory> y,
                                  const Budget& budget = Budget::defaults());
std::vector<DoubleFunctor> all_double_functors(std::shared_ptr<const DoubleCategory> x,
                                               std::shared_ptr<const DoubleCategory> y,
                                               const Budget& budget = Budget::defaults());

// Transformations between two fixed double functors.
std::vector<HNatTransf> all_hnat(std::shared_ptr<const DoubleFunctor> f, std::shared_ptr<const DoubleFunctor> g,
                                 const Budget& budget = Budget::defaults());
std::vector<VNatTransf> all_vnat(std::shared_ptr<const DoubleFunctor> f, std::shared_ptr<const DoubleFunctor> g,
                                 const Budget& budget = Budget::defaults());

// Modification with horizontal boundaries top: F => G, bottom: F' => G' and vertical
// boundaries left: F => F', right: G => G'. comp maps each object to a square.
struct Modification {
    int top = -1, bottom = -1, left = -1, right = -1; // indices into the hom double category
    std::vector<int> comp;
};

// Internal hom [D, E]: double functors, horizontal and vertical transformations,
// modifications. Compositions are componentwise.
struct HomDoubleCategory {
    DoubleCategory dc;
    std::vector<DoubleFunctor> functors;
    std::vector<HNatTransf> hnat;
    std::vector<VNatTransf> vnat;
    std::vector<Modification> mods;
};

HomDoubleCategory hom_double_category(std::shared_ptr<const DoubleCategory> d, std::shared_ptr<const DoubleCategory> e,
                                      const Budget& budget = Budget::defaults());

} // namespace dbl
