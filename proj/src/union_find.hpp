#pragma once

#include <numeric>
#include <vector>

namespace dbl::detail {

// Union-find whose roots are the least element of each class.
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n = 0) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int add()
    {
        p.push_back(int(p.size()));
        return int(p.size()) - 1;
    }
    int find(int x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (b < a)
            std::swap(a, b);
        p[b] = a;
        return true;
    }
    int size() const { return int(p.size()); }
};

} // namespace dbl::detail
