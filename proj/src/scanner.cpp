#include "textforge/scanner.hpp"

#include <limits>
#include <regex>

#include "textforge/error.hpp"

namespace textforge {

namespace {

constexpr std::size_t kUnterminated = std::numeric_limits<std::size_t>::max();

struct Candidate {
  std::size_t hook_index;
  std::size_t start;
  std::size_t length;  // kUnterminated for a begin delimiter without end
  std::size_t end;
  std::vector<std::string> captures;
};

bool before(const Candidate& a, const Candidate& b) {
  if (a.start != b.start) return a.start < b.start;
  if (a.length != b.length) return a.length < b.length;
  return a.hook_index < b.hook_index;
}

std::optional<Candidate> match_hook(std::string_view text, std::size_t from, std::size_t index,
                                    const Hook& hook) {
  if (const auto* be = std::get_if<BeginEndHook>(&hook)) {
    std::size_t b = text.find(be->begin, from);
    if (b == std::string_view::npos) return std::nullopt;
    std::size_t e = text.find(be->end, b + be->begin.size());
    if (e == std::string_view::npos) return Candidate{index, b, kUnterminated, kUnterminated, {}};
    std::size_t end = e + be->end.size();
    return Candidate{index, b, end - b, end, {}};
  }
  if (const auto* lit = std::get_if<LiteralHook>(&hook)) {
    std::size_t s = text.find(lit->needle, from);
    if (s == std::string_view::npos) return std::nullopt;
    return Candidate{index, s, lit->needle.size(), s + lit->needle.size(), {}};
  }
  const auto& pat = std::get<PatternHook>(hook);
  if (!pat.regex) return std::nullopt;
  auto flags = from > 0 ? std::regex_constants::match_prev_avail
                        : std::regex_constants::match_default;
  using It = std::regex_iterator<std::string_view::const_iterator>;
  for (It it(text.begin() + static_cast<std::ptrdiff_t>(from), text.end(), *pat.regex, flags), last;
       it != last; ++it) {
    const auto& m = *it;
    if (m.length(0) == 0) continue;
    Candidate c;
    c.hook_index = index;
    c.start = from + static_cast<std::size_t>(m.position(0));
    c.length = static_cast<std::size_t>(m.length(0));
    c.end = c.start + c.length;
    for (std::size_t g = 0; g < m.size(); ++g) c.captures.push_back(m.str(g));
    return c;
  }
  return std::nullopt;
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

}  // namespace

bool is_active(const Segment& segment) { return !std::holds_alternative<OuterSegment>(segment); }

std::optional<HookMatch> find_next_match(std::string_view text, std::size_t from,
                                         std::span<const Hook> hooks) {
  if (from > text.size()) from = text.size();
  std::optional<Candidate> best;
  for (std::size_t i = 0; i < hooks.size(); ++i) {
    auto c = match_hook(text, from, i, hooks[i]);
    if (c && (!best || before(*c, *best))) best = std::move(c);
  }
  if (!best) return std::nullopt;
  if (best->length == kUnterminated) {
    const auto& hook = std::get<BeginEndHook>(hooks[best->hook_index]);
    throw Error(ErrorKind::UnterminatedSnippet,
                "snippet opened with '" + hook.begin + "' has no closing '" + hook.end + "'",
                location_at(text, best->start));
  }
  return HookMatch{best->hook_index, best->start, best->end, std::move(best->captures)};
}

std::optional<ExistingOutput> detect_output_block(std::string_view text, std::size_t at,
                                                  const OutDelims& delims) {
  if (at > text.size()) return std::nullopt;
  std::string_view rest = text.substr(at);
  if (delims.b1.empty() && delims.b2.empty()) return std::nullopt;
  if (!rest.starts_with(delims.b1)) return std::nullopt;

  std::size_t p = delims.b1.size();
  std::size_t q = p;
  while (q < rest.size() && rest[q] >= '0' && rest[q] <= '9') ++q;
  if (!rest.substr(q).starts_with(delims.b2)) return std::nullopt;

  std::string infix(rest.substr(p, q - p));
  std::size_t inner_start = q + delims.b2.size();
  std::string end_marker = delims.end(infix);
  std::size_t e = rest.find(end_marker, inner_start);
  if (e == std::string_view::npos) {
    throw Error(ErrorKind::UnterminatedOutput,
                "output block '" + delims.begin(infix) + "' has no closing '" + end_marker + "'",
                location_at(text, at));
  }
  ExistingOutput out;
  out.inner = std::string(rest.substr(inner_start, e - inner_start));
  out.raw = std::string(rest.substr(0, e + end_marker.size()));
  out.infix = std::move(infix);
  return out;
}

std::optional<Segment> Scanner::next(const EngineState& state) {
  if (pending_) {
    HookMatch m = std::move(*pending_);
    pending_.reset();
    return take_match(m, state);
  }
  if (pos_ >= text_.size()) return std::nullopt;

  auto m = find_next_match(text_, pos_, state.hooks);
  if (!m) {
    OuterSegment outer{std::string(text_.substr(pos_))};
    pos_ = text_.size();
    return outer;
  }
  if (m->start > pos_) {
    OuterSegment outer{std::string(text_.substr(pos_, m->start - pos_))};
    pos_ = m->start;
    pending_ = std::move(m);
    return outer;
  }
  return take_match(*m, state);
}

Segment Scanner::take_match(const HookMatch& m, const EngineState& state) {
  const Hook& hook = state.hooks[m.hook_index];
  std::string_view matched = text_.substr(m.start, m.end - m.start);

  if (const auto* be = std::get_if<BeginEndHook>(&hook)) {
    SnippetSegment s;
    s.raw = std::string(matched);
    s.code = std::string(matched.substr(be->begin.size(),
                                        matched.size() - be->begin.size() - be->end.size()));
    s.hook_index = m.hook_index;
    s.offset = m.start;
    s.code_offset = m.start + be->begin.size();

    std::size_t line_start = text_.rfind('\n', m.start == 0 ? 0 : m.start - 1);
    line_start = (line_start == std::string_view::npos || m.start == 0) ? 0 : line_start + 1;
    std::size_t ws_end = line_start;
    while (ws_end < m.start && is_blank(text_[ws_end])) ++ws_end;
    s.indent = std::string(text_.substr(line_start, ws_end - line_start));
    s.starts_line = ws_end == m.start && line_start >= active_end_;

    s.existing_output = detect_output_block(text_, m.end, state.out_delims);
    pos_ = m.end + (s.existing_output ? s.existing_output->raw.size() : 0);
    active_end_ = pos_;
    return s;
  }

  pos_ = m.end;
  active_end_ = pos_;
  if (std::holds_alternative<LiteralHook>(hook)) {
    return LiteralSegment{m.hook_index, std::string(matched), m.start};
  }
  return PatternSegment{m.hook_index, std::string(matched), m.captures, m.start};
}

std::vector<Segment> scan(std::string_view text, const EngineState& state) {
  std::vector<Segment> out;
  Scanner scanner(text);
  while (auto seg = scanner.next(state)) out.push_back(std::move(*seg));
  return out;
}

std::string reassemble(std::span<const Segment> segments) {
  std::string out;
  for (const auto& seg : segments) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, OuterSegment>) {
            out += s.text;
          } else if constexpr (std::is_same_v<T, SnippetSegment>) {
            out += s.raw;
            if (s.existing_output) out += s.existing_output->raw;
          } else {
            out += s.matched;
          }
        },
        seg);
  }
  return out;
}

}  // namespace textforge
