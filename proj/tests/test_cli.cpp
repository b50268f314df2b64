#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "model_support.hpp"
#include "dbl/io.hpp"

using namespace dbl;
using fx::share;

namespace {

struct Dir {
    std::filesystem::path path;
    Dir()
    {
        path = std::filesystem::temp_directory_path() / ("dblcat_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~Dir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Run {
    int code = -1;
    std::string out, err;
    Json report() const
    {
        auto k = out.find("--- report\n");
        return Json::parse(k == std::string::npos ? out : out.substr(k + 11));
    }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream o, e;
    Run r;
    r.code = run_cli(args, o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

std::string write(const Dir& d, const std::string& name, const std::string& kind, Json payload)
{
    auto p = d.file(name);
    store(make_document(kind, std::move(payload)), p);
    return p;
}

DoubleFunctor to_point_h(const FinCategory& c)
{
    auto src = share(embed_h(c));
    return to_terminal(src);
}

} // namespace

TEST_CASE("documents round-trip", "[io]")
{
    for (auto& [name, d] : fx::corpus()) {
        INFO(name);
        auto doc = make_document("double_category", to_json(d));
        auto text = dump(doc);
        auto back = double_from_json(parse_document(text).payload);
        CHECK(validate(back).empty());
        CHECK(dump(make_document("double_category", to_json(back))) == text);
        CHECK(isomorphic(back, d));
        CHECK(back.squares() == d.squares());

        auto c = category_from_json(parse_document(dump(make_document("category", to_json(d.ver)))).payload);
        CHECK(c == d.ver);
    }
    auto f = to_point_h(iso_category());
    auto text = dump(make_document("double_functor", to_json(f)));
    auto g = double_functor_from_json(parse_document(text).payload);
    CHECK(validate(g).empty());
    CHECK(g.obj == f.obj);
    CHECK(g.sq == f.sq);
    CHECK(dump(make_document("double_functor", to_json(g))) == text);

    auto x = horizontal_nerve(external_product(ordinal(1), ordinal(1)), 2);
    auto tt = dump(make_document("truncation", to_json(x)));
    auto y = truncation_from_json(parse_document(tt).payload);
    CHECK(validate(y).empty());
    CHECK(dump(make_document("truncation", to_json(y))) == tt);

    auto sub = pinwheel();
    auto st = dump(make_document("subdivision", to_json(sub)));
    CHECK(subdivision_from_json(parse_document(st).payload) == sub);

    auto s = underlying_scheme(external_product(ordinal(1), ordinal(1)));
    auto sc = dump(make_document("scheme", to_json(s)));
    CHECK(dump(make_document("scheme", to_json(scheme_from_json(parse_document(sc).payload)))) == sc);
}

TEST_CASE("parse errors carry line and column", "[io]")
{
    std::string bad = "{\n  \"kind\": \"category\",\n  \"version\": 1,\n  \"payload\": {\"objects\": [\"a\",]}\n}\n";
    try {
        parse_document(bad, "bad.json");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::parse);
        std::string w = e.what();
        CHECK(w.rfind("bad.json:4:", 0) == 0);
    }
    try {
        parse_document(R"({"kind": "category", "version": 1, "payload": {"objects": ["a"], "morphisms": [{"id": "f", "src": "a"}]}})")
            .payload;
        auto d = parse_document(
            R"({"kind": "category", "version": 1, "payload": {"objects": ["a"], "morphisms": [{"id": "f", "src": "a"}]}})");
        category_from_json(d.payload);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::parse);
        CHECK(std::string(e.what()).find("payload.morphisms[0]") != std::string::npos);
        CHECK(std::string(e.what()).find("tgt") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_document(R"({"kind": "monoid", "version": 1, "payload": {}})"), Error);
    CHECK_THROWS_AS(parse_document(R"({"kind": "category", "version": 7, "payload": {}})"), Error);
}

TEST_CASE("arrangement labels are inferred from whole cell sides", "[io]")
{
    auto d = commutative_squares(product(ordinal(1), ordinal(1)));
    Json j = to_json(grid(1, 1));
    int a = -1;
    for (int s = 0; s < d.num_squares(); ++s)
        if (!d.sq.is_identity(s) && d.idh[d.left[s]] != s) {
            a = s;
            break;
        }
    REQUIRE(a >= 0);
    j["labels"] = {d.squares()[a]};
    auto arr = arrangement_from_json(j, d);
    CHECK(validate(arr, d).empty());
    CHECK(compose_arrangement(d, arr) == a);
}

TEST_CASE("dblcat commands", "[cli]")
{
    Dir dir;
    auto hi = write(dir, "hi.dc", "double_functor", to_json(to_point_h(iso_category())));
    auto vi = write(dir, "vi.dc", "double_functor", to_json(to_terminal(share(embed_v(iso_category())))));

    auto r = run({"check", "--we", "--topology", "tau", hi});
    CHECK(r.code == 0);
    CHECK(r.report()["result"] == true);
    CHECK(r.report()["essentially_surjective"]["verified"] == true);
    CHECK(run({"check", "--we", "--topology", "tau", vi}).code == 1);
    CHECK(run({"check", "--fib", "--topology", "trivial", vi}).code == 0);
    CHECK(run({"check", "--acyclic-fib", "--topology", "tauprime", hi}).code == 0);
    CHECK(run({"check", "--we", "--topology", "nonsense", hi}).code == 2);

    auto v1 = write(dir, "v1.dc", "double_category", to_json(embed_v(ordinal(1))));
    auto vii = write(dir, "vii.dc", "double_category", to_json(embed_v(iso_category())));
    CHECK(run({"check", "--cofibrant", "--topology", "tauprime", v1}).code == 0);
    CHECK(run({"check", "--cofibrant", "--topology", "tauprime", vii}).code == 1);

    auto pin = write(dir, "pinwheel.sub", "subdivision", to_json(pinwheel()));
    CHECK(run({"allowable", pin}).code == 1);
    auto g = write(dir, "grid.sub", "subdivision", to_json(grid(2, 3)));
    CHECK(run({"allowable", g}).code == 0);

    // pushout of the point into I along 1 -> 1
    auto one = write(dir, "one.dc", "double_category", to_json(terminal_double()));
    auto inc = point_into_I();
    auto src = share(external_product(*inc.a, ordinal(0)));
    auto f = write(dir, "f.dc", "double_functor", to_json(to_terminal(src)));
    auto p = run({"pushout", "--formula", "point-into-I", "--c", "[0]", one, f});
    REQUIRE(p.code == 0);
    CHECK(p.report()["objects"] == 2);
    auto pg = run({"pushout", "--formula", "point-into-I", "--c", "[0]", "--generic", one, f});
    CHECK(pg.code == 0);
    CHECK(pg.report()["objects"] == 2);

    auto out = dir.file("p.dc");
    CHECK(run({"pushout", "--formula", "point-into-I", "--c", "[0]", one, f, "-o", out}).code == 0);
    CHECK(run({"validate", out}).code == 0);
    CHECK(run({"iso", out, vii}).code == 0);

    CHECK(run({"segal-compare", write(dir, "nr.dc", "double_category", to_json(fx::no_reedy()))}).code == 1);
    auto sq = write(dir, "sq.dc", "double_category", to_json(external_product(ordinal(1), ordinal(1))));
    CHECK(run({"segal-compare", sq}).code == 0);
    CHECK(run({"coskeletal", "--level", "3", sq}).code == 0);

    auto s = run({"sd2", "--simplex", "1", "--json"});
    CHECK(s.code == 0);
    CHECK(s.report()["objects"] == 5);
    CHECK(s.report()["covers"] == 4);
    CHECK(run({"sd2", "--horn", "1", "0"}).report()["objects"] == 1);

    auto n = run({"nerve", "--horizontal", "--level", "2", sq, "--json"});
    CHECK(n.code == 0);
    CHECK(n.report()["document"]["kind"] == "truncation");
    auto nfile = dir.file("n.tr");
    CHECK(run({"nerve", "--horizontal", "--level", "2", sq, "-o", nfile}).code == 0);
    auto c = run({"categorify", "--h", nfile, "-o", dir.file("c.dc")});
    CHECK(c.code == 0);
    CHECK(run({"iso", dir.file("c.dc"), sq}).code == 0);

    auto rep = run({"replace", "--topology", "tau", "--level", "1", v1});
    CHECK(rep.code == 0);
    CHECK(rep.report()["objects"] == 8);
    CHECK(rep.report()["certified_level"] == 1);
    CHECK(run({"replace", "--topology", "tauprime", vii}).report()["materialized"] == false);

    auto t = run({"transpose", v1, "-o", dir.file("t.dc")});
    CHECK(t.code == 0);
    CHECK(run({"iso", dir.file("t.dc"), write(dir, "h1.dc", "double_category", to_json(embed_h(ordinal(1))))}).code ==
          0);
    CHECK(run({"iso", v1, dir.file("t.dc")}).code == 1);

    auto hom = run({"hom", one, sq, "--json"});
    CHECK(hom.code == 0);
    CHECK(hom.report()["functors"] == 4);

    // budget overrides are reported and enforced
    auto b = run({"hom", sq, sq, "--max-cells", "3"});
    CHECK(b.code == 2);
    CHECK(b.err.find("budget-exceeded") != std::string::npos);

    ::setenv("DBLCAT_BUDGET", "3", 1);
    auto env = run({"hom", sq, sq, "--json"});
    ::unsetenv("DBLCAT_BUDGET");
    CHECK(env.code == 2);
    CHECK(env.report()["budget"]["max_cells"] == 3);

    std::ofstream(dir.file("broken.dc")) << "{\"kind\": \"double_category\",\n \"version\": 1,\n \"payload\": [}";
    auto e = run({"validate", dir.file("broken.dc")});
    CHECK(e.code == 2);
    CHECK(e.err.find("broken.dc:3:") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 2);
}
