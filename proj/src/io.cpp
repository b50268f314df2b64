#include "dbl/io.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace dbl {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& msg)
{
    throw Error(ErrorKind::parse, "schema violation at " + where + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(where, std::string("missing field '") + key + "'");
    return *it;
}

const Json& array(const Json& j, const std::string& where)
{
    if (!j.is_array())
        schema(where, "expected an array");
    return j;
}

std::string str(const Json& j, const std::string& where)
{
    if (!j.is_string())
        schema(where, "expected a string");
    return j.get<std::string>();
}

int integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        schema(where, "expected an integer");
    return j.get<int>();
}

int find_name(const std::map<std::string, int>& m, const Json& j, const std::string& where, const char* what)
{
    auto s = str(j, where);
    auto it = m.find(s);
    if (it == m.end())
        schema(where, std::string("unknown ") + what + " '" + s + "'");
    return it->second;
}

int object_of(const FinCategory& c, const Json& j, const std::string& where)
{
    int i = c.object(str(j, where));
    if (i < 0)
        schema(where, "unknown object '" + j.get<std::string>() + "'");
    return i;
}

int morphism_of(const FinCategory& c, const Json& j, const std::string& where)
{
    int i = c.morphism(str(j, where));
    if (i < 0)
        schema(where, "unknown morphism '" + j.get<std::string>() + "'");
    return i;
}

int square_of(const DoubleCategory& d, const Json& j, const std::string& where)
{
    int i = d.square(str(j, where));
    if (i < 0)
        schema(where, "unknown square '" + j.get<std::string>() + "'");
    return i;
}

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

Json name_map(const std::vector<Id>& from, const std::vector<Id>& to, const std::vector<int>& f)
{
    Json j = Json::object();
    for (std::size_t i = 0; i < f.size(); ++i)
        j[from[i]] = to[f[i]];
    return j;
}

// Identities in object order, then the other morphisms: the order a reload produces.
Json morphism_map(const FinCategory& from, const std::vector<Id>& to, const std::vector<int>& f)
{
    Json j = Json::object();
    for (int x = 0; x < from.num_objects(); ++x)
        j[from.morphisms[from.ident[x]]] = to[f[from.ident[x]]];
    for (int m = 0; m < from.num_morphisms(); ++m)
        if (!from.is_identity(m))
            j[from.morphisms[m]] = to[f[m]];
    return j;
}

std::vector<int> read_map(const Json& j, const std::vector<Id>& from, const std::function<int(const Json&, const std::string&)>& image,
                          const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object mapping names to names");
    std::vector<int> r;
    for (auto& name : from) {
        auto it = j.find(name);
        if (it == j.end())
            schema(where, "no image for '" + name + "'");
        r.push_back(image(*it, at(where, name)));
    }
    if (j.size() != from.size())
        schema(where, "mapping has entries outside the source");
    return r;
}

} // namespace

Document make_document(const std::string& kind, Json payload) { return {kind, std::move(payload)}; }

Document parse_document(const std::string& text, const std::string& origin)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
        for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
            if (text[i] == '\n')
                ++line, col = 1;
            else
                ++col;
        }
        std::string what = e.what();
        auto k = what.find("; ");
        throw Error(ErrorKind::parse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                          ": parse error" + (k == std::string::npos ? "" : what.substr(k)));
    }
    Document d;
    d.kind = str(field(j, "kind", "document"), "document.kind");
    int v = integer(field(j, "version", "document"), "document.version");
    if (v != document_version)
        schema("document.version", "unsupported version " + std::to_string(v));
    static const std::set<std::string> kinds = {"category", "double_category", "double_functor", "scheme",
                                                "subdivision", "diagram", "truncation"};
    if (!kinds.count(d.kind))
        schema("document.kind", "unknown kind '" + d.kind + "'");
    d.payload = field(j, "payload", "document");
    return d;
}

Document load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

std::string dump(const Document& d)
{
    Json j;
    j["kind"] = d.kind;
    j["version"] = document_version;
    j["payload"] = d.payload;
    return j.dump(2) + "\n";
}

void store(const Document& d, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::parse, "cannot write " + path);
    out << dump(d);
}

Json to_json(const FinCategory& c)
{
    Json j;
    j["objects"] = c.objects;
    Json ids = Json::array();
    for (int x = 0; x < c.num_objects(); ++x)
        ids.push_back(c.morphisms[c.ident[x]]);
    j["identities"] = ids;
    Json mors = Json::array(), comp = Json::array();
    for (int f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f))
            continue;
        mors.push_back({{"id", c.morphisms[f]}, {"src", c.objects[c.src[f]]}, {"tgt", c.objects[c.tgt[f]]}});
        for (int g : c.out(c.tgt[f]))
            if (!c.is_identity(g))
                comp.push_back({c.morphisms[f], c.morphisms[g], c.morphisms[c.then(f, g)]});
    }
    j["morphisms"] = mors;
    j["compose"] = comp;
    return j;
}

FinCategory category_from_json(const Json& j, const std::string& where)
{
    CategoryBuilder b;
    std::map<std::string, int> obj, mor;
    auto& objs = array(field(j, "objects", where), at(where, "objects"));
    const Json* ids = j.is_object() && j.contains("identities") ? &array(j["identities"], at(where, "identities")) : nullptr;
    if (ids && ids->size() != objs.size())
        schema(at(where, "identities"), "expected one identity per object");
    for (std::size_t i = 0; i < objs.size(); ++i) {
        auto name = str(objs[i], at(at(where, "objects"), i));
        if (obj.count(name))
            schema(at(at(where, "objects"), i), "duplicate object '" + name + "'");
        std::string id = ids ? str((*ids)[i], at(at(where, "identities"), i)) : "";
        int x = b.add_object(name, id);
        obj[name] = x;
        mor[id.empty() ? "1_" + name : id] = b.identity(x);
    }
    if (j.contains("morphisms")) {
        auto w = at(where, "morphisms");
        auto& ms = array(j["morphisms"], w);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            auto wi = at(w, i);
            auto name = str(field(ms[i], "id", wi), at(wi, "id"));
            if (mor.count(name))
                schema(at(wi, "id"), "duplicate morphism '" + name + "'");
            int s = find_name(obj, field(ms[i], "src", wi), at(wi, "src"), "object");
            int t = find_name(obj, field(ms[i], "tgt", wi), at(wi, "tgt"), "object");
            mor[name] = b.add_morphism(name, s, t);
        }
    }
    if (j.contains("compose")) {
        auto w = at(where, "compose");
        auto& cs = array(j["compose"], w);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            auto wi = at(w, i);
            if (!cs[i].is_array() || cs[i].size() != 3)
                schema(wi, "expected a triple [f, g, fg]");
            int f = find_name(mor, cs[i][0], at(wi, 0), "morphism");
            int g = find_name(mor, cs[i][1], at(wi, 1), "morphism");
            int h = find_name(mor, cs[i][2], at(wi, 2), "morphism");
            if (b.tgt(f) != b.src(g))
                schema(wi, "morphisms are not composable");
            if (b.src(h) != b.src(f) || b.tgt(h) != b.tgt(g))
                schema(wi, "composite has the wrong source or target");
            b.set_then(f, g, h);
        }
    }
    return b.build();
}

Json to_json(const Functor& f)
{
    return {{"objects", name_map(f.source->objects, f.target->objects, f.obj)},
            {"morphisms", morphism_map(*f.source, f.target->morphisms, f.mor)}};
}

Functor functor_from_json(const Json& j, std::shared_ptr<const FinCategory> src, std::shared_ptr<const FinCategory> tgt,
                          const std::string& where)
{
    Functor f{src, tgt, {}, {}};
    f.obj = read_map(field(j, "objects", where), src->objects,
                     [&](const Json& v, const std::string& w) { return object_of(*tgt, v, w); }, at(where, "objects"));
    f.mor = read_map(field(j, "morphisms", where), src->morphisms,
                     [&](const Json& v, const std::string& w) { return morphism_of(*tgt, v, w); }, at(where, "morphisms"));
    return f;
}

namespace {

Json squares_json(const std::vector<Id>& names, const std::vector<Boundary>& bd, const FinCategory& hor,
                  const FinCategory& ver)
{
    Json sq = Json::array();
    for (std::size_t a = 0; a < names.size(); ++a)
        sq.push_back({{"id", names[a]},
                      {"top", hor.morphisms[bd[a].top]},
                      {"bottom", hor.morphisms[bd[a].bottom]},
                      {"left", ver.morphisms[bd[a].left]},
                      {"right", ver.morphisms[bd[a].right]}});
    return sq;
}

std::vector<std::pair<Id, Boundary>> squares_from(const Json& j, const FinCategory& hor, const FinCategory& ver,
                                                  const std::string& where)
{
    std::vector<std::pair<Id, Boundary>> r;
    auto& sq = array(j, where);
    std::set<Id> seen;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        auto w = at(where, i);
        auto name = str(field(sq[i], "id", w), at(w, "id"));
        if (!seen.insert(name).second)
            schema(at(w, "id"), "duplicate square '" + name + "'");
        Boundary b{morphism_of(hor, field(sq[i], "top", w), at(w, "top")),
                   morphism_of(hor, field(sq[i], "bottom", w), at(w, "bottom")),
                   morphism_of(ver, field(sq[i], "left", w), at(w, "left")),
                   morphism_of(ver, field(sq[i], "right", w), at(w, "right"))};
        if (hor.src[b.top] != ver.src[b.left] || hor.tgt[b.top] != ver.src[b.right] ||
            hor.src[b.bottom] != ver.tgt[b.left] || hor.tgt[b.bottom] != ver.tgt[b.right])
            schema(w, "boundary corners do not match");
        r.emplace_back(name, b);
    }
    return r;
}

} // namespace

Json to_json(const DoubleCategory& d)
{
    Json j;
    j["horizontal"] = to_json(d.hor);
    j["vertical"] = to_json(d.ver);
    std::vector<Boundary> bd;
    for (int a = 0; a < d.num_squares(); ++a)
        bd.push_back(d.boundary(a));
    j["squares"] = squares_json(d.squares(), bd, d.hor, d.ver);
    Json iv = Json::array(), ih = Json::array(), above = Json::array(), beside = Json::array();
    for (int f = 0; f < d.hor.num_morphisms(); ++f)
        iv.push_back({d.hor.morphisms[f], d.squares()[d.idv(f)]});
    for (int v = 0; v < d.ver.num_morphisms(); ++v)
        ih.push_back({d.ver.morphisms[v], d.squares()[d.idh[v]]});
    for (int a = 0; a < d.num_squares(); ++a) {
        if (!d.sq.is_identity(a))
            for (int b : d.with_top(d.bottom(a)))
                if (!d.sq.is_identity(b))
                    above.push_back({d.squares()[a], d.squares()[b], d.squares()[d.above(a, b)]});
        if (d.idh[d.left[a]] != a)
            for (int b : d.with_left(d.right[a]))
                if (d.idh[d.left[b]] != b)
                    beside.push_back({d.squares()[a], d.squares()[b], d.squares()[d.beside(a, b)]});
    }
    j["vertical_identities"] = iv;
    j["horizontal_identities"] = ih;
    j["above"] = above;
    j["beside"] = beside;
    return j;
}

DoubleCategory double_from_json(const Json& j, const std::string& where)
{
    auto hor = category_from_json(field(j, "horizontal", where), at(where, "horizontal"));
    auto ver = category_from_json(field(j, "vertical", where), at(where, "vertical"));
    if (hor.objects != ver.objects)
        schema(at(where, "vertical.objects"), "must list the horizontal objects in the same order");
    DoubleBuilder b(hor, ver);
    std::map<std::string, int> sq;
    for (auto& [name, bd] : squares_from(field(j, "squares", where), hor, ver, at(where, "squares")))
        sq[name] = b.add_square(name, bd);
    auto pairs = [&](const char* key, auto set) {
        if (!j.contains(key))
            return;
        auto w = at(where, key);
        auto& xs = array(j[key], w);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!xs[i].is_array() || xs[i].size() != 2)
                schema(at(w, i), "expected a pair");
            set(xs[i], at(w, i));
        }
    };
    pairs("vertical_identities", [&](const Json& p, const std::string& w) {
        int f = morphism_of(hor, p[0], at(w, 0));
        int a = find_name(sq, p[1], at(w, 1), "square");
        auto& bd = b.boundary(a);
        if (bd.top != f || bd.bottom != f || !ver.is_identity(bd.left) || !ver.is_identity(bd.right))
            schema(w, "vertical identity square has the wrong boundary");
        b.set_idv(f, a);
    });
    pairs("horizontal_identities", [&](const Json& p, const std::string& w) {
        int v = morphism_of(ver, p[0], at(w, 0));
        int a = find_name(sq, p[1], at(w, 1), "square");
        auto& bd = b.boundary(a);
        if (bd.left != v || bd.right != v || !hor.is_identity(bd.top) || !hor.is_identity(bd.bottom))
            schema(w, "horizontal identity square has the wrong boundary");
        b.set_idh(v, a);
    });
    for (int f = 0; f < hor.num_morphisms(); ++f)
        if (b.idv(f) < 0)
            schema(at(where, "vertical_identities"), "no entry for '" + hor.morphisms[f] + "'");
    for (int v = 0; v < ver.num_morphisms(); ++v)
        if (b.idh(v) < 0)
            schema(at(where, "horizontal_identities"), "no entry for '" + ver.morphisms[v] + "'");
    for (const char* key : {"above", "beside"}) {
        if (!j.contains(key))
            continue;
        auto w = at(where, key);
        auto& xs = array(j[key], w);
        bool vertical = std::string(key) == "above";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto wi = at(w, i);
            if (!xs[i].is_array() || xs[i].size() != 3)
                schema(wi, "expected a triple");
            int a = find_name(sq, xs[i][0], at(wi, 0), "square");
            int c = find_name(sq, xs[i][1], at(wi, 1), "square");
            int r = find_name(sq, xs[i][2], at(wi, 2), "square");
            auto &ba = b.boundary(a), &bc = b.boundary(c), &br = b.boundary(r);
            if (vertical) {
                if (ba.bottom != bc.top)
                    schema(wi, "squares are not vertically composable");
                if (br.top != ba.top || br.bottom != bc.bottom || br.left != ver.then(ba.left, bc.left) ||
                    br.right != ver.then(ba.right, bc.right))
                    schema(wi, "composite has the wrong boundary");
                b.set_above(a, c, r);
            } else {
                if (ba.right != bc.left)
                    schema(wi, "squares are not horizontally composable");
                if (br.left != ba.left || br.right != bc.right || br.top != hor.then(ba.top, bc.top) ||
                    br.bottom != hor.then(ba.bottom, bc.bottom))
                    schema(wi, "composite has the wrong boundary");
                b.set_beside(a, c, r);
            }
        }
    }
    return b.build();
}

Json to_json(const DoubleFunctor& f)
{
    auto& s = *f.source;
    auto& t = *f.target;
    Json j;
    j["source"] = to_json(s);
    j["target"] = to_json(t);
    j["objects"] = name_map(s.objects(), t.objects(), f.obj);
    j["horizontal"] = morphism_map(s.hor, t.hor.morphisms, f.hor);
    j["vertical"] = morphism_map(s.ver, t.ver.morphisms, f.ver);
    j["squares"] = name_map(s.squares(), t.squares(), f.sq);
    return j;
}

DoubleFunctor double_functor_from_json(const Json& j, std::shared_ptr<const DoubleCategory> src,
                                       std::shared_ptr<const DoubleCategory> tgt, const std::string& where)
{
    if (!src)
        src = std::make_shared<const DoubleCategory>(double_from_json(field(j, "source", where), at(where, "source")));
    if (!tgt)
        tgt = std::make_shared<const DoubleCategory>(double_from_json(field(j, "target", where), at(where, "target")));
    DoubleFunctor f{src, tgt, {}, {}, {}, {}};
    auto& t = *tgt;
    f.obj = read_map(field(j, "objects", where), src->objects(),
                     [&](const Json& v, const std::string& w) { return object_of(t.hor, v, w); }, at(where, "objects"));
    f.hor = read_map(field(j, "horizontal", where), src->hor.morphisms,
                     [&](const Json& v, const std::string& w) { return morphism_of(t.hor, v, w); },
                     at(where, "horizontal"));
    f.ver = read_map(field(j, "vertical", where), src->ver.morphisms,
                     [&](const Json& v, const std::string& w) { return morphism_of(t.ver, v, w); },
                     at(where, "vertical"));
    f.sq = read_map(field(j, "squares", where), src->squares(),
                    [&](const Json& v, const std::string& w) { return square_of(t, v, w); }, at(where, "squares"));
    return f;
}

Json to_json(const DoubleDerivationScheme& s)
{
    Json j;
    j["horizontal"] = to_json(s.hor);
    j["vertical"] = to_json(s.ver);
    j["squares"] = squares_json(s.squares, s.boundary, s.hor, s.ver);
    return j;
}

DoubleDerivationScheme scheme_from_json(const Json& j, const std::string& where)
{
    DoubleDerivationScheme s;
    s.hor = category_from_json(field(j, "horizontal", where), at(where, "horizontal"));
    s.ver = category_from_json(field(j, "vertical", where), at(where, "vertical"));
    if (s.hor.objects != s.ver.objects)
        schema(at(where, "vertical.objects"), "must list the horizontal objects in the same order");
    for (auto& [name, bd] : squares_from(field(j, "squares", where), s.hor, s.ver, at(where, "squares"))) {
        s.squares.push_back(name);
        s.boundary.push_back(bd);
    }
    return s;
}

Json to_json(const Subdivision& s)
{
    Json cells = Json::array();
    for (auto& r : s.cells)
        cells.push_back({r.x0, r.x1, r.y0, r.y1});
    return {{"cells", cells}};
}

Subdivision subdivision_from_json(const Json& j, const std::string& where)
{
    Subdivision s;
    auto w = at(where, "cells");
    auto& cells = array(field(j, "cells", where), w);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].is_array() || cells[i].size() != 4)
            schema(at(w, i), "expected [x0, x1, y0, y1]");
        Rect r{integer(cells[i][0], at(at(w, i), 0)), integer(cells[i][1], at(at(w, i), 1)),
               integer(cells[i][2], at(at(w, i), 2)), integer(cells[i][3], at(at(w, i), 3))};
        s.cells.push_back(r);
    }
    return s;
}

Json to_json(const Arrangement& a, const DoubleCategory& d)
{
    Json j = to_json(a.sub);
    Json labels = Json::array(), vs = Json::array(), hs = Json::array(), ws = Json::array();
    for (int c : a.cell)
        labels.push_back(d.squares()[c]);
    for (auto& [p, o] : a.vertex)
        vs.push_back({p.first, p.second, d.objects()[o]});
    for (auto& [k, m] : a.hseg)
        hs.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), d.hor.morphisms[m]});
    for (auto& [k, m] : a.vseg)
        ws.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), d.ver.morphisms[m]});
    j["labels"] = labels;
    j["vertices"] = vs;
    j["hsegments"] = hs;
    j["vsegments"] = ws;
    return j;
}

Arrangement arrangement_from_json(const Json& j, const DoubleCategory& d, const std::string& where)
{
    Arrangement a;
    a.sub = subdivision_from_json(j, where);
    auto w = at(where, "labels");
    auto& labels = array(field(j, "labels", where), w);
    if (labels.size() != a.sub.cells.size())
        schema(w, "expected one square per cell");
    for (std::size_t i = 0; i < labels.size(); ++i)
        a.cell.push_back(square_of(d, labels[i], at(w, i)));
    auto explicit_entries = [&](const char* key, auto add) {
        if (!j.contains(key))
            return;
        auto wk = at(where, key);
        auto& xs = array(j[key], wk);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!xs[i].is_array())
                schema(at(wk, i), "expected an array entry");
            add(xs[i], at(wk, i));
        }
    };
    explicit_entries("vertices", [&](const Json& e, const std::string& wi) {
        if (e.size() != 3)
            schema(wi, "expected [x, y, object]");
        a.vertex[{integer(e[0], wi), integer(e[1], wi)}] = object_of(d.hor, e[2], at(wi, 2));
    });
    explicit_entries("hsegments", [&](const Json& e, const std::string& wi) {
        if (e.size() != 4)
            schema(wi, "expected [y, x0, x1, morphism]");
        a.hseg[{integer(e[0], wi), integer(e[1], wi), integer(e[2], wi)}] = morphism_of(d.hor, e[3], at(wi, 3));
    });
    explicit_entries("vsegments", [&](const Json& e, const std::string& wi) {
        if (e.size() != 4)
            schema(wi, "expected [x, y0, y1, morphism]");
        a.vseg[{integer(e[0], wi), integer(e[1], wi), integer(e[2], wi)}] = morphism_of(d.ver, e[3], at(wi, 3));
    });
    for (std::size_t i = 0; i < a.cell.size(); ++i) {
        auto& r = a.sub.cells[i];
        auto b = d.boundary(a.cell[i]);
        a.vertex.emplace(std::make_pair(r.x0, r.y0), d.hor.src[b.top]);
        a.vertex.emplace(std::make_pair(r.x1, r.y0), d.hor.tgt[b.top]);
        a.vertex.emplace(std::make_pair(r.x0, r.y1), d.hor.src[b.bottom]);
        a.vertex.emplace(std::make_pair(r.x1, r.y1), d.hor.tgt[b.bottom]);
    }
    for (auto& [y, x0, x1] : hsegments_of(a.sub)) {
        if (a.hseg.count({y, x0, x1}))
            continue;
        for (std::size_t i = 0; i < a.cell.size(); ++i) {
            auto& r = a.sub.cells[i];
            if (r.x0 == x0 && r.x1 == x1 && (r.y0 == y || r.y1 == y)) {
                a.hseg[{y, x0, x1}] = r.y0 == y ? d.top(a.cell[i]) : d.bottom(a.cell[i]);
                break;
            }
        }
        if (!a.hseg.count({y, x0, x1}))
            schema(at(where, "hsegments"), "no label for segment y=" + std::to_string(y) + " x=" + std::to_string(x0) +
                                               ".." + std::to_string(x1));
    }
    for (auto& [x, y0, y1] : vsegments_of(a.sub)) {
        if (a.vseg.count({x, y0, y1}))
            continue;
        for (std::size_t i = 0; i < a.cell.size(); ++i) {
            auto& r = a.sub.cells[i];
            if (r.y0 == y0 && r.y1 == y1 && (r.x0 == x || r.x1 == x)) {
                a.vseg[{x, y0, y1}] = r.x0 == x ? d.left[a.cell[i]] : d.right[a.cell[i]];
                break;
            }
        }
        if (!a.vseg.count({x, y0, y1}))
            schema(at(where, "vsegments"), "no label for segment x=" + std::to_string(x) + " y=" + std::to_string(y0) +
                                               ".." + std::to_string(y1));
    }
    return a;
}

namespace {

Json double_maps(const DoubleFunctor& f)
{
    auto j = to_json(f);
    j.erase("source");
    j.erase("target");
    return j;
}

} // namespace

Json to_json(const DblDiagram& d)
{
    Json j;
    j["index"] = to_json(d.index);
    Json nodes = Json::array(), arrows = Json::array();
    for (auto& n : d.nodes)
        nodes.push_back(to_json(*n));
    for (int m = 0; m < d.index.num_morphisms(); ++m) {
        if (d.index.is_identity(m))
            continue;
        auto a = double_maps(d.arrows[m]);
        Json e;
        e["morphism"] = d.index.morphisms[m];
        for (auto& [k, v] : a.items())
            e[k] = v;
        arrows.push_back(e);
    }
    j["nodes"] = nodes;
    j["arrows"] = arrows;
    return j;
}

DblDiagram diagram_from_json(const Json& j, const std::string& where)
{
    DblDiagram d;
    d.index = category_from_json(field(j, "index", where), at(where, "index"));
    auto wn = at(where, "nodes");
    auto& nodes = array(field(j, "nodes", where), wn);
    if (int(nodes.size()) != d.index.num_objects())
        schema(wn, "expected one double category per index object");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        d.nodes.push_back(std::make_shared<const DoubleCategory>(double_from_json(nodes[i], at(wn, i))));
    d.arrows.resize(d.index.num_morphisms());
    std::vector<char> have(d.index.num_morphisms(), 0);
    if (j.contains("arrows")) {
        auto wa = at(where, "arrows");
        auto& arrows = array(j["arrows"], wa);
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            auto wi = at(wa, i);
            int m = morphism_of(d.index, field(arrows[i], "morphism", wi), at(wi, "morphism"));
            d.arrows[m] = double_functor_from_json(arrows[i], d.nodes[d.index.src[m]], d.nodes[d.index.tgt[m]], wi);
            have[m] = 1;
        }
    }
    for (int m = 0; m < d.index.num_morphisms(); ++m) {
        if (have[m])
            continue;
        if (!d.index.is_identity(m))
            schema(at(where, "arrows"), "no functor for '" + d.index.morphisms[m] + "'");
        d.arrows[m] = identity_double_functor(d.nodes[d.index.src[m]]);
    }
    return d;
}

Json to_json(const SimplicialTruncation& x)
{
    Json j;
    Json levels = Json::array(), faces = Json::array(), degens = Json::array();
    for (auto& l : x.level)
        levels.push_back(to_json(*l));
    for (std::size_t k = 1; k < x.face.size(); ++k) {
        Json row = Json::array();
        for (auto& f : x.face[k])
            row.push_back(to_json(f));
        faces.push_back(row);
    }
    for (int k = 0; k < x.max_level() && k < int(x.degen.size()); ++k) {
        auto& ds = x.degen[k];
        Json row = Json::array();
        for (auto& f : ds)
            row.push_back(to_json(f));
        degens.push_back(row);
    }
    j["levels"] = levels;
    j["faces"] = faces;
    j["degeneracies"] = degens;
    return j;
}

SimplicialTruncation truncation_from_json(const Json& j, const std::string& where)
{
    SimplicialTruncation x;
    auto wl = at(where, "levels");
    auto& levels = array(field(j, "levels", where), wl);
    if (levels.empty())
        schema(wl, "needs at least level 0");
    for (std::size_t k = 0; k < levels.size(); ++k)
        x.level.push_back(std::make_shared<const FinCategory>(category_from_json(levels[k], at(wl, k))));
    int n = int(levels.size()) - 1;
    auto wf = at(where, "faces");
    auto& faces = array(field(j, "faces", where), wf);
    if (int(faces.size()) != n)
        schema(wf, "expected one row of faces per level >= 1");
    x.face.resize(n + 1);
    for (int k = 1; k <= n; ++k) {
        auto wk = at(wf, k - 1);
        auto& row = array(faces[k - 1], wk);
        if (int(row.size()) != k + 1)
            schema(wk, "level " + std::to_string(k) + " needs " + std::to_string(k + 1) + " faces");
        for (int i = 0; i <= k; ++i)
            x.face[k].push_back(functor_from_json(row[i], x.level[k], x.level[k - 1], at(wk, i)));
    }
    auto wd = at(where, "degeneracies");
    auto& degens = array(field(j, "degeneracies", where), wd);
    if (int(degens.size()) != n)
        schema(wd, "expected one row of degeneracies per level below the top");
    x.degen.resize(n + 1);
    for (int k = 0; k < n; ++k) {
        auto wk = at(wd, k);
        auto& row = array(degens[k], wk);
        if (int(row.size()) != k + 1)
            schema(wk, "level " + std::to_string(k) + " needs " + std::to_string(k + 1) + " degeneracies");
        for (int i = 0; i <= k; ++i)
            x.degen[k].push_back(functor_from_json(row[i], x.level[k], x.level[k + 1], at(wk, i)));
    }
    return x;
}

} // namespace dbl
