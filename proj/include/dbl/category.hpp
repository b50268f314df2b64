#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dbl {

using Id = std::string;

enum class ErrorKind {
    budget_exceeded,
    infinite,
    not_allowable,
    not_compatible,
    not_parallel,
    not_directed,
    not_congruence,
    invalid,
    unsupported,
    parse,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    ErrorKind kind;
};

// Enumeration bounds. Exceeding any of them raises ErrorKind::budget_exceeded.
struct Budget {
    std::size_t max_cells = 200000;   // elements created by saturation / enumeration
    std::size_t max_path = 64;        // path length in free categories
    std::size_t max_squares = 200000; // squares in saturated double categories

    // Defaults, overridable by DBLCAT_BUDGET=cells[,path[,squares]].
    static Budget defaults();
};

struct FinGraph {
    struct Edge {
        Id id;
        int src = -1, tgt = -1;
    };
    std::vector<Id> vertices;
    std::vector<Edge> edges;
};

// A graph with a distinguished identity loop on every vertex.
struct ReflexiveGraph {
    FinGraph graph;
    std::vector<int> identity; // vertex -> edge index
};

// Finite category with an explicit composition table.
// Composition is written in diagrammatic order: then(f, g) is "f followed by g".
class FinCategory {
public:
    std::vector<Id> objects;
    std::vector<Id> morphisms;
    std::vector<int> src, tgt;
    std::vector<int> ident; // object -> identity morphism

    int num_objects() const { return int(objects.size()); }
    int num_morphisms() const { return int(morphisms.size()); }

    // Composite of f then g, or -1 when tgt f != src g.
    int then(int f, int g) const
    {
        if (tgt[f] != src[g])
            return -1;
        return comp_[f][outpos_[g]];
    }
    bool is_identity(int f) const { return ident[src[f]] == f; }

    const std::vector<int>& out(int a) const { return out_[a]; }
    const std::vector<int>& in(int a) const { return in_[a]; }
    std::vector<int> hom(int a, int b) const;

    int object(const Id& name) const;   // -1 when absent
    int morphism(const Id& name) const; // -1 when absent

    // Composite table access in creation order: comp_row(f)[k] = then(f, out(tgt f)[k]).
    const std::vector<int>& comp_row(int f) const { return comp_[f]; }

    // Rebuild indices; composites are supplied through set_then before or after.
    void reset_table();
    void set_then(int f, int g, int h);
    void finalize_names();

    bool operator==(const FinCategory& o) const;

private:
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> outpos_;
    std::vector<std::vector<int>> comp_;
    std::unordered_map<Id, int> obj_index_, mor_index_;
};

// Incremental construction of a FinCategory from names.
class CategoryBuilder {
public:
    int add_object(const Id& name, const Id& identity_name = "");
    int add_morphism(const Id& name, int src, int tgt);
    void set_then(int f, int g, int h) { comps_.emplace_back(f, g, h); }
    int num_objects() const { return int(cat_.objects.size()); }
    int num_morphisms() const { return int(cat_.morphisms.size()); }
    int identity(int a) const { return cat_.ident[a]; }
    int src(int f) const { return cat_.src[f]; }
    int tgt(int f) const { return cat_.tgt[f]; }
    // Fills identity composites automatically; throws Error(invalid) if a composable pair is missing.
    FinCategory build(bool require_total = true);

private:
    FinCategory cat_;
    std::vector<std::tuple<int, int, int>> comps_;
};

struct Functor {
    std::shared_ptr<const FinCategory> source, target;
    std::vector<int> obj, mor;
};

Functor identity_functor(std::shared_ptr<const FinCategory> c);
Functor compose(const Functor& f, const Functor& g); // f then g

// Standard categories.
FinCategory ordinal(int n);              // [n] = 0 < 1 < ... < n
FinCategory discrete(const std::vector<Id>& objs);
FinCategory terminal_category();
FinCategory iso_category();              // I: 0 <-> 1
FinCategory product(const FinCategory& a, const FinCategory& b);
FinCategory coproduct(const FinCategory& a, const FinCategory& b);
FinCategory opposite(const FinCategory& c);
// Poset on names with order given by leq(i, j); morphisms are named "x<=y".
FinCategory poset(const std::vector<Id>& objs, const std::vector<std::vector<bool>>& leq);

std::vector<std::string> validate(const FinCategory& c);
std::vector<std::string> validate(const Functor& f);
std::vector<std::string> validate(const FinGraph& g);
std::vector<std::string> validate(const ReflexiveGraph& g);

// Underlying non-reflexive graph.
FinGraph underlying_graph(const FinCategory& c);
ReflexiveGraph underlying_reflexive_graph(const FinCategory& c);

} // namespace dbl
