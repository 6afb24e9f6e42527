#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

#include "tetrus/cli/report.hpp"
#include "tetrus/cli/runner.hpp"
#include "tetrus/cli/script.hpp"
#include "tetrus/cli/selftest.hpp"
#include "tetrus/tangle.hpp"

using namespace tetrus;
using namespace tetrus::cli;

namespace {

const char* kTower = R"(# tower
group PT free x, h
hom pi2 : PT -> Z2 { x -> 1, h -> 1 }
hom pi41 : PT -> Z4 { x -> 1, h -> 1 }
sub G2 = kernel pi2
sub G41 = kernel pi41
sub L = < h, h x h x^-2, (x h x) h^-1 (x h x)^-1 >
diamond D = G2 ^ G41
analyze G41
analyze L
analyze D
)";

Script parse_ok(const std::string& text) {
  const ParseResult r = parse_script(text);
  for (const auto& d : r.diagnostics) INFO(d.str());
  REQUIRE(r.ok());
  return r.script;
}

std::vector<Diagnostic> parse_errors(const std::string& text) { return parse_script(text).diagnostics; }

}  // namespace

TEST_CASE("parsing declarations") {
  const Script s = parse_ok("group PT free x, h\nhom pi41 : PT -> Z4 { x -> 1, h -> 1 }");
  REQUIRE(s.statements.size() == 2);
  const auto& hom = std::get<HomDecl>(s.statements[1].body);
  CHECK(hom.modulus == 4);
  CHECK(hom.images == std::vector<std::pair<std::string, long long>>{{"x", 1}, {"h", 1}});
  CHECK(s.statements[1].span == Span{2, 1});

  CHECK(parse_ok("").statements.empty());
  CHECK(parse_ok("  # only a comment\n\n").statements.empty());

  const Script l = parse_ok("sub L = < h, h x h x^-2, (x h x) h^-1 (x h x)^-1 >");
  CHECK(std::get<GeneratedSub>(l.statements[0].body).words == tangle::lambda_generators());

  const Script custom = parse_ok("group G free a b; sub S = < a b^-1, 1 >");
  const auto& sub = std::get<GeneratedSub>(custom.statements[1].body);
  CHECK(sub.group == "G");
  CHECK(sub.words == std::vector<FreeWord>{parse_word("x h^-1"), FreeWord()});

  const Script neg = parse_ok("group G free a, b\nhom f : G -> Z5 { b -> -1, a -> 7 }");
  const auto& f = std::get<HomDecl>(neg.statements[1].body);
  CHECK(f.images == std::vector<std::pair<std::string, long long>>{{"a", 2}, {"b", 4}});

  CHECK(parse_ok("surface build-tetrus\nverify theorem1").statements.size() == 2);
}

TEST_CASE("diagnostics carry positions and tokens") {
  auto d = parse_errors("group G free a, b\nhom f : G -> Z4 { a -> 1 }");
  REQUIRE(d.size() == 1);
  CHECK(d[0].span.line == 2);

  d = parse_errors("analyze Nope");
  REQUIRE(d.size() == 1);
  CHECK(d[0].span == Span{1, 9});
  CHECK(d[0].token == "Nope");

  d = parse_errors("sub S = < x q >");
  REQUIRE(d.size() == 1);
  CHECK(d[0].span == Span{1, 13});
  CHECK(d[0].token == "x q");

  d = parse_errors("group G free a, b\ngroup G free c, d");
  REQUIRE(d.size() == 1);
  CHECK(d[0].span.line == 2);

  CHECK(parse_errors("group G free a, b, c").size() == 1);
  CHECK(parse_errors("hom f : G -> Z4 { x -> 1, h -> 1 }").size() == 1);
  CHECK(parse_errors("group G free a, b\nhom f : G -> Z0 { a -> 1, b -> 1 }").size() == 1);
  CHECK(parse_errors("verify theorem2").size() == 1);
  CHECK(parse_errors("surface build").size() == 1);
  CHECK(parse_errors("sub S = kernel").size() == 1);
  CHECK(parse_errors("group G free a, b\nsub S = < a >\nanalyze G").size() == 1);
  // Parsing resumes after an error.
  CHECK(parse_errors("analyze A\nanalyze B\nsub S = < x >").size() == 2);
  CHECK(Diagnostic{{3, 4}, "tok", "bad"}.str() == "3:4: bad (at 'tok')");
}

TEST_CASE("print then parse is a fixed point") {
  const Script s = parse_ok(kTower);
  const std::string printed = print_script(s);
  const Script again = parse_ok(printed);
  CHECK(again == s);
  CHECK(print_script(again) == printed);
}

TEST_CASE("round trip on generated scripts") {
  std::mt19937_64 rng(51);
  auto word = [&] {
    std::string w;
    for (int n = static_cast<int>(rng() % 5); n >= 0; --n) {
      w += std::string(rng() % 2 ? "a" : "b") + (rng() % 3 == 0 ? "^-" + std::to_string(1 + rng() % 3) : "") + " ";
    }
    return w;
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = "group G free a, b\n";
    const long long n = 1 + static_cast<long long>(rng() % 9);
    text += "hom f : G -> Z" + std::to_string(n) + " { b -> " + std::to_string(rng() % 20) + ", a -> " +
            std::to_string(static_cast<long long>(rng() % 20) - 10) + " }\n";
    text += "sub K = kernel f\n";
    text += "sub S = < " + word() + ", " + word() + " >\n";
    text += "diamond D = K ^ S\n";
    if (rng() % 2) text += "analyze D\n";
    if (rng() % 2) text += "surface build-tetrus; verify theorem1\n";
    const Script s = parse_ok(text);
    CHECK(parse_ok(print_script(s)) == s);
  }
}

TEST_CASE("mutated scripts never crash the parser") {
  std::mt19937_64 rng(52);
  const std::string base = kTower;
  const std::string alphabet = "abxhGL0123456789 \n\t#;:,<>{}^-=~()Z";
  for (int i = 0; i < 3000; ++i) {
    std::string text = base;
    for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) {
      const std::size_t pos = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:
          if (pos < text.size()) text.erase(pos, 1 + rng() % 3);
          break;
        case 1:
          text.insert(pos, 1, alphabet[rng() % alphabet.size()]);
          break;
        default:
          if (pos < text.size()) text[pos] = static_cast<char>(rng() % 128);
      }
    }
    ParseResult r;
    CHECK_NOTHROW(r = parse_script(text));
    for (const auto& d : r.diagnostics) {
      CHECK(d.span.line >= 1);
      CHECK(d.span.column >= 1);
      CHECK_FALSE(d.message.empty());
    }
    if (r.ok()) CHECK(parse_ok(print_script(r.script)) == r.script);
  }
}

TEST_CASE("report rendering") {
  Report r;
  Section& s = r.add_section("demo");
  s.add("n", 3LL, "a note");
  s.add("flag", true);
  s.add("list", std::vector<long long>{1, -2});
  s.add("word", WordValue{"x h"});
  s.add("text", std::string("two\nlines"));
  CHECK_THROWS(s.add("n", 4LL));
  CHECK_THROWS(r.add_section("demo"));
  CHECK(render_value(std::vector<long long>{}) == "[]");
  CHECK(r.text() == "[demo]\nn = 3  # a note\nflag = true\nlist = [1, -2]\nword = x h\ntext = |\n    two\n    lines\n");
  const auto j = nlohmann::json::parse(r.structured());
  const auto& entries = j["sections"][0]["entries"];
  CHECK(entries[0]["value"] == 3);
  CHECK(entries[1]["value"] == true);
  CHECK(entries[2]["value"] == nlohmann::json::array({1, -2}));
  CHECK(entries[3]["value"]["word"] == "x h");
  CHECK(r.find("demo")->find("flag") != nullptr);
}

TEST_CASE("running scripts") {
  const RunResult decl = run(parse_ok("group G free a, b\nhom f : G -> Z3 { a -> 1, b -> 0 }\nsub K = kernel f"), {});
  CHECK(decl.exit_code == kExitOk);
  CHECK(decl.report.empty());

  const RunResult tower = run(parse_ok(kTower), {});
  CHECK(tower.exit_code == kExitOk);
  const Section* g41 = tower.report.find("analyze G41");
  REQUIRE(g41 != nullptr);
  CHECK(render_value(g41->find("meridian.h")->value) == "[4]");
  CHECK(render_value(g41->find("meridian.m")->value) == "[4]");
  CHECK(render_value(g41->find("boundary.components")->value) == "1");
  CHECK(render_value(g41->find("boundary.genus")->value) == "[3]");
  CHECK(render_value(tower.report.find("analyze L")->find("index")->value) == "infinite");

  // Deterministic output.
  CHECK(run(parse_ok(kTower), {}).report.text() == tower.report.text());
}

TEST_CASE("verify theorem1") {
  const RunResult r = run(parse_ok("verify theorem1"), {});
  CHECK(r.exit_code == kExitOk);
  const Section* t = r.report.find("theorem1");
  REQUIRE(t != nullptr);
  for (const auto& [key, value] : std::vector<std::pair<const char*, const char*>>{
           {"cover.degree", "6"}, {"boundary.tilde.genus", "13"}, {"fiber.genus", "19"},
           {"heegaard.lift", "25"}, {"heegaard.fibration", "39"}, {"link.components", "12"},
           {"link.projected_curves", "6"}, {"spin.total_intersections", "16"}, {"fiber.branch_points", "32"}}) {
    const Entry* e = t->find(key);
    REQUIRE(e != nullptr);
    CHECK(render_value(e->value) == value);
  }
  CHECK(std::get<bool>(r.report.find("verification")->find("status")->value));
}

TEST_CASE("a wrong expectation is a mismatch") {
  const std::string path = "mismatch_expected.tsv";
  {
    std::ofstream out(path);
    out << "# comment\ncover.degree\t7\twrong on purpose\nfiber.genus\t19\n";
  }
  const auto ex = load_expectations(path);
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].line == 2);
  CHECK(ex[1].note.empty());
  RunOptions opts;
  opts.expected_path = path;
  const RunResult r = run(parse_ok("verify theorem1"), opts);
  CHECK(r.exit_code == kExitMismatch);
  const Section* v = r.report.find("verification");
  CHECK_FALSE(std::get<bool>(v->find("cover.degree")->value));
  CHECK(std::get<bool>(v->find("fiber.genus")->value));
  {
    std::ofstream out(path);
    out << "only-a-key\n";
  }
  CHECK_THROWS_AS(load_expectations(path), Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_expectations("does/not/exist.tsv"), Error);
}

TEST_CASE("a failing stage reports an error section") {
  RunOptions opts;
  opts.expected_path = "does/not/exist.tsv";
  const RunResult r = run(parse_ok("group G free a, b\nverify theorem1"), opts);
  CHECK(r.exit_code == kExitMismatch);
  const Section* e = r.report.find("error");
  REQUIRE(e != nullptr);
  CHECK(render_value(e->find("statement")->value) == "2:1");
}

TEST_CASE("self-test suites") {
  const auto results = run_selftest();
  CHECK(results.size() == 8);
  for (const auto& s : results) {
    INFO(s.name << ": " << s.witness);
    CHECK(s.passed);
    CHECK(s.cases > 0);
  }
  Report r;
  add_selftest_section(r, results);
  CHECK(std::get<bool>(r.find("selftest")->find("status")->value));
}
