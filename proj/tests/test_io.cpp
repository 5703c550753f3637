// wire format tests: parsing with precise error reporting, and the
// stable json / table renderers for every report type.

#include <doctest.h>

#include <json.hpp>

#include <string>

#include "ellsurf/basechange.hpp"
#include "ellsurf/io.hpp"
#include "ellsurf/kodaira.hpp"

using namespace ellsurf;
using ojson = nlohmann::ordered_json;

namespace {

const char* kWashington =
    "{\"a2\": [0, 1], \"a4\": [\"-3\", \"-1\"], \"a6\": [1]}";

WeierstrassModel washington() {
  WeierstrassModel m;
  m.a2 = UniPoly({0, 1});
  m.a4 = UniPoly({-3, -1});
  m.a6 = UniPoly({1});
  return m;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("model parsing") {
    auto m = parse_model_json(kWashington);
    auto ref = washington();
    CHECK(m.a1 == ref.a1);
    CHECK(m.a2 == ref.a2);
    CHECK(m.a3 == ref.a3);
    CHECK(m.a4 == ref.a4);
    CHECK(m.a6 == ref.a6);

    // absent keys are zero, empty arrays too
    auto z = parse_model_json("{}");
    CHECK(z.a1.is_zero());
    CHECK(z.a6.is_zero());
    CHECK(parse_model_json("{\"a6\": []}").a6.is_zero());

    // rationals arrive as integers or "p/q" strings
    auto q = parse_model_json("{\"a6\": [\"1/2\", -3]}");
    CHECK(q.a6.coeff(0) == Rational(1, 2));
    CHECK(q.a6.coeff(1) == -3);
  }

  TEST_CASE("model parse errors") {
    // malformed json carries a byte position
    std::string bad = "{\"a1\": }";
    try {
      parse_model_json(bad);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.position != std::string::npos);
      CHECK(e.position < bad.size());
      CHECK(std::string(e.what()).rfind("invalid json", 0) == 0);
    }

    // structural errors have no position but a precise message
    CHECK_THROWS_WITH_AS(parse_model_json("{\"a7\": [1]}"),
                         "surface: unknown key \"a7\"", ParseError);
    CHECK_THROWS_WITH_AS(parse_model_json("{\"a4\": [1.5]}"),
                         "a4: expected integer or rational string", ParseError);
    CHECK_THROWS_WITH_AS(parse_model_json("{\"a4\": 3}"),
                         "a4: expected coefficient array", ParseError);
    CHECK_THROWS_WITH_AS(parse_model_json("[1, 2]"),
                         "surface: expected object", ParseError);
    CHECK_THROWS_AS(parse_model_json("{\"a4\": [\"1/0\"]}"), ParseError);
    CHECK_THROWS_AS(parse_model_json("{\"a4\": [\"3/\"]}"), ParseError);
  }

  TEST_CASE("model rendering roundtrip") {
    auto text = render_model_json(washington());
    auto j = ojson::parse(text);
    CHECK(j["schema"] == "ellsurf/1");
    CHECK(j["kind"] == "surface");
    CHECK(j["surface"]["a2"] == ojson::array({"0", "1"}));
    CHECK(j["surface"]["a4"] == ojson::array({"-3", "-1"}));
    CHECK(j["surface"]["a6"] == ojson::array({"1"}));
    CHECK(!j["surface"].contains("a1"));

    auto back = parse_model_json(j["surface"].dump());
    CHECK(back.a2 == washington().a2);
    CHECK(back.a4 == washington().a4);
    CHECK(back.a6 == washington().a6);
  }

  TEST_CASE("cover parsing") {
    auto c = parse_cover_json("{}");
    CHECK(c.branch1 == P1Point::infinity());
    CHECK(c.branch2 == P1Point::finite(0));
    CHECK(c.lambda == 1);

    auto d = parse_cover_json(
        "{\"branch1\": \"1/2\", \"branch2\": \"inf\", \"lambda\": -2}");
    CHECK(d.branch1 == P1Point::finite(Rational(1, 2)));
    CHECK(d.branch2 == P1Point::infinity());
    CHECK(d.lambda == -2);

    // validation runs at parse time
    CHECK_THROWS_AS(parse_cover_json("{\"branch1\": 1, \"branch2\": 1}"),
                    InvalidCover);
    CHECK_THROWS_AS(parse_cover_json("{\"lambda\": 0}"), InvalidCover);
    CHECK_THROWS_WITH_AS(parse_cover_json("{\"frac\": 1}"),
                         "cover: unknown key \"frac\"", ParseError);
    CHECK_THROWS_WITH_AS(parse_cover_json("3"), "cover: expected object",
                         ParseError);
  }

  TEST_CASE("tower parsing") {
    auto t = parse_tower_json(
        "{\"covers\": [{}, {\"branch1\": 1, \"branch2\": -1}]}");
    REQUIRE(t.covers.size() == 2);
    CHECK(t.covers[1].branch1 == P1Point::finite(1));
    // two double covers with disjoint branch pairs glue to a genus one
    // curve: chi = -2*4 + 8
    CHECK(tower_genus(t) == 1);

    CHECK_THROWS_WITH_AS(parse_tower_json("{\"covers\": {}}"),
                         "tower: expected {\"covers\": [...]}", ParseError);
    CHECK_THROWS_WITH_AS(parse_tower_json("[]"),
                         "tower: expected {\"covers\": [...]}", ParseError);
    CHECK_THROWS_WITH_AS(parse_tower_json("{\"covers\": [], \"x\": 1}"),
                         "tower: unknown key \"x\"", ParseError);
  }

  TEST_CASE("surface with cover parsing") {
    std::string text = std::string("{\"surface\": ") + kWashington +
                       ", \"cover\": {\"branch2\": 4}}";
    auto sc = parse_surface_cover_json(text);
    CHECK(sc.model.a2 == washington().a2);
    CHECK(sc.cover.branch2 == P1Point::finite(4));

    CHECK_THROWS_WITH_AS(parse_surface_cover_json("{\"surface\": {}}"),
                         "expected {\"surface\": ..., \"cover\": ...}",
                         ParseError);
    CHECK_THROWS_WITH_AS(
        parse_surface_cover_json(
            "{\"surface\": {}, \"cover\": {}, \"x\": 1}"),
        "input: unknown key \"x\"", ParseError);
  }

  TEST_CASE("classification report rendering") {
    auto rep = classify_all(washington());
    auto j = ojson::parse(render_report_json(rep));
    CHECK(j["schema"] == "ellsurf/1");
    CHECK(j["kind"] == "classification");
    REQUIRE(j["fibers"].size() == 2);
    CHECK(j["fibers"][0]["place_str"] == "t^2 + 3*t + 9");
    CHECK(j["fibers"][0]["degree"] == 2);
    CHECK(j["fibers"][0]["type"] == "II");
    CHECK(j["fibers"][0]["euler"] == 2);
    CHECK(j["fibers"][0]["reduced"] == true);
    CHECK(j["fibers"][1]["place"] == "inf");
    CHECK(j["fibers"][1]["type"] == "I2*");
    CHECK(j["fibers"][1]["components"] == 7);
    CHECK(j["fibers"][1]["reduced"] == false);
    CHECK(j["euler_total"] == 12);
    CHECK(j["rational_elliptic"] == true);
    CHECK(j["geometric_generic_rank"] == 2);

    auto table = render_report_table(rep);
    CHECK(table.find("place") != std::string::npos);
    CHECK(table.find("t^2 + 3*t + 9") != std::string::npos);
    CHECK(table.find("I2*") != std::string::npos);
    CHECK(table.find("euler total: 12  rational elliptic: yes"
                     "  geometric generic rank: 2") != std::string::npos);
  }

  TEST_CASE("null generic rank renders as json null") {
    // a k3 family: not rational elliptic, no rank entry
    auto m = WeierstrassModel::short_form(UniPoly({1}), UniPoly::monomial(7, 1));
    auto j = ojson::parse(render_report_json(classify_all(m)));
    CHECK(j["rational_elliptic"] == false);
    CHECK(j["euler_total"] == 24);
    CHECK(j["geometric_generic_rank"].is_null());
  }

  TEST_CASE("rnrf rendering") {
    RnrfReport r;
    r.status = RnrfStatus::Exists;
    r.case_index = 1;
    r.detail = "d";
    auto j = ojson::parse(render_rnrf_json(r));
    CHECK(j["kind"] == "rnrf");
    CHECK(j["status"] == "exists");
    CHECK(j["case"] == 1);
    CHECK(render_rnrf_table(r).find("status: exists (case 1)") !=
          std::string::npos);

    RnrfReport u;
    u.status = RnrfStatus::InsufficientData;
    u.missing = {"has_nontrivial_section"};
    auto ju = ojson::parse(render_rnrf_json(u));
    CHECK(ju["status"] == "insufficient-data");
    CHECK(!ju.contains("case"));
    CHECK(ju["missing"] == ojson::array({"has_nontrivial_section"}));
    CHECK(render_rnrf_table(u).find("missing: has_nontrivial_section") !=
          std::string::npos);

    RnrfReport k;
    k.status = RnrfStatus::Unknown;
    CHECK(ojson::parse(render_rnrf_json(k))["status"] == "unknown");
  }

  TEST_CASE("base change rendering") {
    auto m = WeierstrassModel::short_form(UniPoly::zero(), UniPoly({0, 1}));
    auto chk = verify_basechange(m, QuadraticCover{});
    REQUIRE(chk.ok());
    auto j = ojson::parse(render_basechange_json(chk));
    CHECK(j["kind"] == "basechange");
    CHECK(j["types_match"] == true);
    CHECK(j["euler_consistent"] == true);
    CHECK(j["ok"] == true);
    CHECK(j["base"]["euler_total"] == 12);
    CHECK(j["pulled"]["euler_total"] == 12);

    auto table = render_basechange_table(chk);
    CHECK(table.find("base:") != std::string::npos);
    CHECK(table.find("pulled back:") != std::string::npos);
    CHECK(table.find("ok: yes") != std::string::npos);
  }

  TEST_CASE("tower genus rendering is byte stable") {
    TowerGenusResult r;
    r.cover_count = 2;
    r.genus = 1;
    std::string expect =
        "{\n"
        "  \"schema\": \"ellsurf/1\",\n"
        "  \"kind\": \"tower-genus\",\n"
        "  \"covers\": 2,\n"
        "  \"genus\": 1,\n"
        "  \"obstruction_genus\": null\n"
        "}\n";
    CHECK(render_tower_json(r) == expect);

    r.obstruction = 5;
    auto j = ojson::parse(render_tower_json(r));
    CHECK(j["obstruction_genus"] == 5);
    auto table = render_tower_table(r);
    CHECK(table.find("genus: 1") != std::string::npos);
    CHECK(table.find("obstruction genus: 5") != std::string::npos);
  }

  TEST_CASE("jump report rendering") {
    JumpReport r;
    r.generic_rank = 0;
    JumpReport::Hit h;
    h.t = Rational(-2);
    h.certified_rank = 1;
    h.generators.push_back(CurvePoint::affine(-1, 1));
    r.hits.push_back(h);
    JumpReport::SkippedFiber s;
    s.t = Rational(0);
    s.fiber_type = "III";
    r.skipped_singular.push_back(s);

    auto j = ojson::parse(render_jump_json(r));
    CHECK(j["kind"] == "rank-jumps");
    CHECK(j["generic_rank"] == 0);
    CHECK(j["hits"][0]["t"] == "-2");
    CHECK(j["hits"][0]["certified_rank"] == 1);
    CHECK(j["hits"][0]["generators"][0] == ojson::array({"-1", "1"}));
    CHECK(j["skipped_singular"][0]["fiber_type"] == "III");

    std::string table =
        "generic rank: 0\n"
        "t = -2: certified rank 1, generators (-1, 1)\n"
        "skipped singular fiber at t = 0 (III)\n";
    CHECK(render_jump_table(r) == table);

    JumpReport empty;
    CHECK(render_jump_table(empty).find("no rank jumps certified") !=
          std::string::npos);
  }
}
