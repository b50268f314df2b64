#pragma once

#include <utility>

#include "dbl/search.hpp"

namespace fx {

using namespace dbl;

template <class T>
std::shared_ptr<const T> share(T x)
{
    return std::make_shared<const T>(std::move(x));
}

inline FinCategory square_poset() { return product(ordinal(1), ordinal(1)); }

// Two monoid structures on {e, a, b} that are each associative and unital but
// disagree, so interchange fails on one object.
inline DoubleCategory broken_interchange()
{
    auto t = terminal_category();
    DoubleBuilder b(t, t);
    int e = b.add_square("e", {0, 0, 0, 0});
    int a = b.add_square("a", {0, 0, 0, 0});
    int c = b.add_square("b", {0, 0, 0, 0});
    b.set_idv(0, e);
    b.set_idh(0, e);
    b.set_above(a, a, a);
    b.set_above(a, c, c);
    b.set_above(c, a, c);
    b.set_above(c, c, c);
    b.set_beside(a, a, a);
    b.set_beside(a, c, a);
    b.set_beside(c, a, a);
    b.set_beside(c, c, c);
    return b.build();
}

inline std::vector<std::pair<std::string, DoubleCategory>> corpus()
{
    return {
        {"1", terminal_double()},
        {"H[1]", embed_h(ordinal(1))},
        {"V[1]", embed_v(ordinal(1))},
        {"H[2]", embed_h(ordinal(2))},
        {"HI", embed_h(iso_category())},
        {"VI", embed_v(iso_category())},
        {"[1]x[1]", external_product(ordinal(1), ordinal(1))},
        {"[1]x[2]", external_product(ordinal(1), ordinal(2))},
        {"Ix[1]", external_product(iso_category(), ordinal(1))},
        {"Sq[1]", commutative_squares(ordinal(1))},
        {"Sq[1]x[1]", commutative_squares(square_poset())},
        {"1+H[1]", coproduct(terminal_double(), embed_h(ordinal(1)))},
    };
}

} // namespace fx
