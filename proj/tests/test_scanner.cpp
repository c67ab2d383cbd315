#include <limits>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "textforge/error.hpp"
#include "textforge/scanner.hpp"
#include "textforge/styles.hpp"

using namespace textforge;

namespace {

EngineState state_for(const std::string& style, Mode mode = Mode::Update) {
  return new_engine_state("t", mode, builtin_registry().get(style));
}

// Brute force: every hook at every position, ordered by (start, length, index).
struct OracleResult {
  bool found = false;
  bool unterminated = false;
  std::size_t index = 0, start = 0, end = 0;
};

OracleResult oracle_next_match(const std::string& text, std::size_t from,
                               const std::vector<Hook>& hooks) {
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  OracleResult best;
  std::size_t best_len = inf;
  for (std::size_t p = from; p < text.size(); ++p) {
    for (std::size_t i = 0; i < hooks.size(); ++i) {
      std::size_t len = 0;
      bool unterminated = false;
      if (const auto* be = std::get_if<BeginEndHook>(&hooks[i])) {
        if (text.compare(p, be->begin.size(), be->begin) != 0) continue;
        std::size_t e = std::string::npos;
        for (std::size_t q = p + be->begin.size(); q + be->end.size() <= text.size(); ++q) {
          if (text.compare(q, be->end.size(), be->end) == 0) {
            e = q;
            break;
          }
        }
        if (e == std::string::npos) {
          unterminated = true;
          len = inf;
        } else {
          len = e + be->end.size() - p;
        }
      } else {
        const auto& lit = std::get<LiteralHook>(hooks[i]);
        if (text.compare(p, lit.needle.size(), lit.needle) != 0) continue;
        len = lit.needle.size();
      }
      bool better = !best.found || p < best.start || (p == best.start && len < best_len) ||
                    (p == best.start && len == best_len && i < best.index);
      if (better) {
        best = {true, unterminated, i, p, unterminated ? inf : p + len};
        best_len = len;
      }
    }
    if (best.found) break;  // nothing later can start earlier
  }
  return best;
}

std::string random_text(std::mt19937& rng, std::string_view alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::string s(len_dist(rng), ' ');
  for (auto& c : s) c = alphabet[ch(rng)];
  return s;
}

}  // namespace

TEST_CASE("find_next_match examples") {
  auto def = state_for("default");

  SUBCASE("default hook") {
    auto m = find_next_match("a<? x !>b", 0, def.hooks);
    REQUIRE(m);
    CHECK(m->hook_index == 1);
    CHECK(m->start == 1);
    CHECK(m->end == 8);
  }
  SUBCASE("no match") { CHECK_FALSE(find_next_match("no hooks here", 0, def.hooks)); }
  SUBCASE("comment hook starts further left") {
    std::vector<Hook> hooks{BeginEndHook{"//<?", "!>"}, BeginEndHook{"<?", "!>"}};
    auto m = find_next_match("//<? x !>", 0, hooks);
    REQUIRE(m);
    CHECK(m->hook_index == 0);
    CHECK(m->start == 0);
    auto o = oracle_next_match("//<? x !>", 0, hooks);
    CHECK(o.index == m->hook_index);
    CHECK(o.start == m->start);
  }
  SUBCASE("leftmost first, the rest on the next call") {
    std::string text = "<? a !> tail <? b !>";
    auto m = find_next_match(text, 0, def.hooks);
    REQUIRE(m);
    CHECK(text.substr(m->start, m->end - m->start) == "<? a !>");
    auto n = find_next_match(text, m->end, def.hooks);
    REQUIRE(n);
    CHECK(text.substr(n->start, n->end - n->start) == "<? b !>");
  }
  SUBCASE("shortest wins at equal start") {
    std::vector<Hook> hooks{BeginEndHook{"<?", "!!>"}, BeginEndHook{"<?", "!>"}};
    auto m = find_next_match("<? x !> y !!>", 0, hooks);
    REQUIRE(m);
    CHECK(m->hook_index == 1);
    CHECK(m->end == 7);
  }
  SUBCASE("end delimiter is the first after the begin delimiter") {
    auto m = find_next_match("<? a !> b !>", 0, def.hooks);
    REQUIRE(m);
    CHECK(m->end == 7);
  }
}

TEST_CASE("unterminated snippet reports its location") {
  auto def = state_for("default");
  try {
    find_next_match("line one\n  <? never closed", 0, def.hooks);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnterminatedSnippet);
    CHECK(e.where().line == 2);
    CHECK(e.where().column == 3);
  }
}

TEST_CASE("literal and pattern hooks") {
  std::vector<Hook> hooks{make_literal_hook("@VERSION@", "'1.0'"),
                          make_pattern_hook("\\{\\{(\\w+)\\}\\}", "<$1>")};
  auto m = find_next_match("x {{name}} @VERSION@", 0, hooks);
  REQUIRE(m);
  CHECK(m->hook_index == 1);
  CHECK(m->start == 2);
  REQUIRE(m->captures.size() == 2);
  CHECK(m->captures[1] == "name");
  auto n = find_next_match("x {{name}} @VERSION@", m->end, hooks);
  REQUIRE(n);
  CHECK(n->hook_index == 0);
  CHECK(n->start == 11);
}

TEST_CASE("zero-length regex matches are ignored") {
  std::vector<Hook> hooks{make_pattern_hook("x*", "")};
  auto m = find_next_match("abxxc", 0, hooks);
  REQUIRE(m);
  CHECK(m->start == 2);
  CHECK(m->end == 4);
  CHECK_FALSE(find_next_match("abc", 0, hooks));
}

TEST_CASE("regex anchors respect the scan position") {
  std::vector<Hook> hooks{make_pattern_hook("\\bword", "W")};
  // "aword" has no word boundary before "word" even when scanning from 1.
  CHECK_FALSE(find_next_match("aword", 1, hooks));
}

TEST_CASE("find_next_match agrees with brute force") {
  std::mt19937 rng(20200704);
  const std::vector<std::vector<Hook>> hook_sets = {
      {BeginEndHook{"<?", "!>"}},
      {BeginEndHook{"//<?", "!>"}, BeginEndHook{"<?", "!>"}},
      {BeginEndHook{"<?", "!>"}, BeginEndHook{"<", ">"}, LiteralHook{"?!", "''"}},
      {BeginEndHook{"<<", ">>"}, BeginEndHook{"<", ">"}, LiteralHook{"/", "''"}},
  };
  int compared = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    const auto& hooks = hook_sets[static_cast<std::size_t>(iter) % hook_sets.size()];
    std::string text = random_text(rng, "a<?!>/", 24);
    std::size_t from = text.empty() ? 0 : static_cast<std::size_t>(rng() % (text.size() + 1));
    OracleResult expect = oracle_next_match(text, from, hooks);
    CAPTURE(text);
    CAPTURE(from);
    if (expect.unterminated) {
      CHECK_THROWS_AS(find_next_match(text, from, hooks), Error);
      continue;
    }
    auto got = find_next_match(text, from, hooks);
    REQUIRE(got.has_value() == expect.found);
    if (got) {
      CHECK(got->hook_index == expect.index);
      CHECK(got->start == expect.start);
      CHECK(got->end == expect.end);
    }
    ++compared;
  }
  CHECK(compared > 1000);
}

TEST_CASE("detect_output_block") {
  OutDelims java{"//", "+\n", "//", "-\n"};

  SUBCASE("plain delimiters") {
    std::string text = "//+\nX\n//-\nrest";
    auto out = detect_output_block(text, 0, java);
    REQUIRE(out);
    CHECK(out->inner == "X\n");
    CHECK(out->infix.empty());
    CHECK(out->raw == "//+\nX\n//-\n");
  }
  SUBCASE("numbered delimiters skip plain ones inside") {
    std::string text = "//3+\nY//-\n more\n//3-\n";
    auto out = detect_output_block(text, 0, java);
    REQUIRE(out);
    CHECK(out->infix == "3");
    CHECK(out->inner == "Y//-\n more\n");
    CHECK(out->raw == text);
  }
  SUBCASE("absent") {
    CHECK_FALSE(detect_output_block("plain", 0, java));
    CHECK_FALSE(detect_output_block("// a comment\n", 0, java));
    CHECK_FALSE(detect_output_block("\n//+\nX//-\n", 0, java));  // a gap is not allowed
    CHECK_FALSE(detect_output_block("x", 1, java));
  }
  SUBCASE("unterminated") {
    std::string text = "ab//12+\nno end here";
    try {
      detect_output_block(text, 2, java);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnterminatedOutput);
      CHECK(e.where().column == 3);
    }
  }
  SUBCASE("raw matches the delimiter invariant") {
    std::string text = "//17+\nabc//17-\ntail";
    auto out = detect_output_block(text, 0, java);
    REQUIRE(out);
    CHECK(out->raw == java.begin(out->infix) + out->inner + java.end(out->infix));
  }
}

TEST_CASE("scan") {
  SUBCASE("plain text is one outer segment") {
    auto st = state_for("default");
    auto segs = scan("plain text", st);
    REQUIRE(segs.size() == 1);
    CHECK(std::get<OuterSegment>(segs[0]).text == "plain text");
  }
  SUBCASE("empty text has no segments") { CHECK(scan("", state_for("default")).empty()); }

  SUBCASE("updated java file carries the existing output") {
    auto st = state_for("java");
    std::string text = testing::fixture("java/simple.updated.java");
    auto segs = scan(text, st);
    std::vector<const SnippetSegment*> snippets;
    for (const auto& s : segs) {
      if (auto* p = std::get_if<SnippetSegment>(&s)) snippets.push_back(p);
    }
    REQUIRE(snippets.size() == 3);
    CHECK_FALSE(snippets[0]->existing_output);
    CHECK(snippets[0]->hook_index == 0);
    REQUIRE(snippets[2]->existing_output);
    CHECK(snippets[2]->existing_output->inner == "    System.out.println(\"Test version\");");
    CHECK(snippets[2]->indent == "    ");
    CHECK(snippets[2]->starts_line);
    CHECK(snippets[0]->indent.empty());
    CHECK(reassemble(segs) == text);
  }

  SUBCASE("replace mode also consumes output blocks") {
    auto st = state_for("java", Mode::Replace);
    auto segs = scan("//<? 1 !>//+\nx//-\n", st);
    REQUIRE(segs.size() == 1);
    CHECK(std::get<SnippetSegment>(segs[0]).existing_output.has_value());
  }

  SUBCASE("snippet after other text on the line does not start the line") {
    auto st = state_for("default");
    auto segs = scan("  x <? 1 !>\n  <? 2 !><? 3 !>", st);
    std::vector<SnippetSegment> snippets;
    for (const auto& s : segs) {
      if (auto* p = std::get_if<SnippetSegment>(&s)) snippets.push_back(*p);
    }
    REQUIRE(snippets.size() == 3);
    CHECK_FALSE(snippets[0].starts_line);
    CHECK(snippets[0].indent == "  ");
    CHECK(snippets[1].starts_line);
    CHECK_FALSE(snippets[2].starts_line);
  }

  SUBCASE("code excludes the delimiters") {
    auto st = state_for("default");
    auto segs = scan("#<? echo 1; !>", st);
    REQUIRE(segs.size() == 1);
    const auto& s = std::get<SnippetSegment>(segs[0]);
    CHECK(s.code == " echo 1; ");
    CHECK(s.code_offset == 3);
  }
}

TEST_CASE("scanner sees hook changes between steps") {
  auto st = state_for("default");
  std::string text = "<? a !> [[ b ]] <? c !>";
  Scanner scanner(text);
  auto first = scanner.next(st);
  REQUIRE(first);
  CHECK(std::holds_alternative<SnippetSegment>(*first));
  st.hooks.push_back(BeginEndHook{"[[", "]]"});
  std::vector<std::string> raws;
  while (auto seg = scanner.next(st)) {
    if (auto* s = std::get_if<SnippetSegment>(&*seg)) raws.push_back(s->raw);
  }
  CHECK(raws == std::vector<std::string>{"[[ b ]]", "<? c !>"});
}

TEST_CASE("segmentation is lossless and ordered") {
  std::mt19937 rng(4242);
  const std::string alphabet = "a<?!>/\n#+-";
  const char* styles[] = {"default", "java", "html"};
  int scanned = 0;
  int rejected = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    std::string text = random_text(rng, alphabet, 40);
    auto st = state_for(styles[iter % 3], iter % 2 ? Mode::Replace : Mode::Update);
    CAPTURE(text);
    std::vector<Segment> segs;
    try {
      segs = scan(text, st);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::UnterminatedSnippet || e.kind() == ErrorKind::UnterminatedOutput));
      ++rejected;
      continue;
    }
    ++scanned;
    CHECK(reassemble(segs) == text);
    // Outer segments never touch each other and are never empty.
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (auto* o = std::get_if<OuterSegment>(&segs[i])) {
        CHECK_FALSE(o->text.empty());
        if (i + 1 < segs.size()) CHECK(is_active(segs[i + 1]));
      }
    }
    std::size_t last = 0;
    bool first = true;
    for (const auto& s : segs) {
      if (auto* sn = std::get_if<SnippetSegment>(&s)) {
        CHECK((first || sn->offset >= last));
        CHECK(text.compare(sn->offset, sn->raw.size(), sn->raw) == 0);
        last = sn->offset + sn->raw.size();
        first = false;
      }
    }
  }
  CHECK(scanned > 1000);
  MESSAGE("scanned " << scanned << ", rejected " << rejected);
}

TEST_CASE("text without hook strings is a single outer segment") {
  std::mt19937 rng(7);
  auto st = state_for("default");
  for (int i = 0; i < 200; ++i) {
    std::string text = random_text(rng, "ab?!>\n #", 30);
    if (text.empty()) continue;
    auto segs = scan(text, st);
    REQUIRE(segs.size() == 1);
    CHECK(std::get<OuterSegment>(segs[0]).text == text);
  }
}
