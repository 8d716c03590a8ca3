#include "hiernet/extraction.hpp"

#include <algorithm>
#include <cctype>

#include "hiernet/errors.hpp"
#include "hiernet/util.hpp"

namespace hiernet {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool at_word_start(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !is_word_char(text[pos])) return false;
  return pos == 0 || !is_word_char(text[pos - 1]);
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Matches `pattern` (already whitespace-collapsed) against text at pos,
// case-insensitively and tolerating any whitespace run where the pattern has
// a single space. Returns the end offset on success. The match must end on a
// word boundary.
std::optional<std::size_t> match_flexible(std::string_view text,
                                          std::size_t pos,
                                          std::string_view pattern) {
  std::size_t t = pos;
  for (std::size_t p = 0; p < pattern.size(); ++p) {
    if (pattern[p] == ' ') {
      if (t >= text.size() || !is_space(text[t])) return std::nullopt;
      while (t < text.size() && is_space(text[t])) ++t;
    } else {
      if (t >= text.size() || lower(text[t]) != lower(pattern[p]))
        return std::nullopt;
      ++t;
    }
  }
  if (t < text.size() && is_word_char(text[t]) &&
      !pattern.empty() && is_word_char(pattern.back()))
    return std::nullopt;
  return t;
}

bool keyword_at(std::string_view text, std::size_t pos, std::string_view kw,
                std::size_t* end) {
  if (pos + kw.size() > text.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i)
    if (lower(text[pos + i]) != kw[i]) return false;
  std::size_t e = pos + kw.size();
  // keywords not ending in '.' need a real boundary
  if (kw.back() != '.' && e < text.size() && is_word_char(text[e])) return false;
  if (e >= text.size() || !is_space(text[e])) return false;
  *end = e;
  return true;
}

struct UnitTok {
  std::string num;
  std::size_t begin, end;
};

// <digits><up to 3 letters>, ending on a word boundary
std::optional<UnitTok> parse_unit_number(std::string_view text,
                                         std::size_t pos) {
  std::size_t i = pos;
  while (i < text.size() && is_space(text[i])) ++i;
  std::size_t b = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    ++i;
  if (i == b) return std::nullopt;
  std::size_t letters = 0;
  while (i < text.size() && letters < 3 &&
         std::isalpha(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++letters;
  }
  if (i < text.size() && is_word_char(text[i])) return std::nullopt;
  return UnitTok{std::string(text.substr(b, i - b)), b, i};
}

std::vector<UnitTok> parse_unit_list(std::string_view text, std::size_t pos) {
  std::vector<UnitTok> units;
  auto first = parse_unit_number(text, pos);
  if (!first) return units;
  units.push_back(*first);
  for (;;) {
    std::size_t p = units.back().end;
    while (p < text.size() && is_space(text[p])) ++p;
    std::size_t q = p;
    if (q < text.size() && (text[q] == ',' || text[q] == '&')) {
      ++q;
    } else if (auto e = match_flexible(text, q, "and")) {
      q = *e;
    } else {
      break;
    }
    auto next = parse_unit_number(text, q);
    if (!next) break;
    units.push_back(*next);
  }
  return units;
}

bool four_digit_year(std::string_view text, std::size_t pos) {
  if (pos + 4 > text.size()) return false;
  for (std::size_t i = 0; i < 4; ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[pos + i]))) return false;
  if (pos + 4 < text.size() && is_word_char(text[pos + 4])) return false;
  if (pos > 0 && is_word_char(text[pos - 1])) return false;
  int v = (text[pos] - '0') * 1000 + (text[pos + 1] - '0') * 100 +
          (text[pos + 2] - '0') * 10 + (text[pos + 3] - '0');
  return v >= 1500 && v <= 2099;
}

// Longest act-index entry matching at pos, if any.
std::optional<std::size_t> match_index(std::string_view text, std::size_t pos,
                                       const std::set<std::string>& index) {
  std::optional<std::size_t> best;
  for (const std::string& name : index) {
    if (name.empty()) continue;
    if (auto e = match_flexible(text, pos, name)) {
      if (!best || *e > *best) best = e;
    }
  }
  return best;
}

// "<Uppercase start> ... <4-digit year>", at most 120 chars, not crossing a
// sentence boundary or newline.
std::optional<std::size_t> match_year_terminated(std::string_view text,
                                                 std::size_t pos) {
  if (pos >= text.size() ||
      !std::isupper(static_cast<unsigned char>(text[pos])))
    return std::nullopt;
  std::size_t limit = std::min(text.size(), pos + 120);
  for (std::size_t i = pos; i < limit; ++i) {
    char c = text[i];
    if (c == '\n' || c == ';') return std::nullopt;
    if (c == '.' && (i + 1 >= text.size() || is_space(text[i + 1])))
      return std::nullopt;
    if (std::isdigit(static_cast<unsigned char>(c)) &&
        four_digit_year(text, i))
      return i + 4;
  }
  return std::nullopt;
}

struct Interval {
  std::size_t begin, end;
};

bool overlaps(const std::vector<Interval>& covered, std::size_t b,
              std::size_t e) {
  for (const Interval& iv : covered)
    if (b < iv.end && iv.begin < e) return true;
  return false;
}

struct CaseCand {
  std::size_t begin, end;
  const std::string* doc_id;  // null for unresolved
};

bool linker_token(std::string_view tok) {
  return tok == "of" || tok == "the" || tok == "and" || tok == "&";
}

bool party_token(std::string_view tok) {
  if (tok.empty()) return false;
  char c = tok.front();
  if (c == '(') c = tok.size() > 1 ? tok[1] : c;
  return std::isupper(static_cast<unsigned char>(c)) != 0 ||
         std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// a blank line between two tokens separates paragraphs; party names never
// span one
bool paragraph_gap(std::string_view text, std::size_t from, std::size_t to) {
  int newlines = 0;
  for (std::size_t i = from; i < to; ++i)
    if (text[i] == '\n' && ++newlines >= 2) return true;
  return false;
}

}  // namespace

std::string_view to_string(UnitKind k) {
  switch (k) {
    case UnitKind::None: return "none";
    case UnitKind::Section: return "section";
    case UnitKind::Article: return "article";
  }
  return "none";
}

std::optional<UnitKind> parse_unit_kind(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "none") return UnitKind::None;
  if (s == "section") return UnitKind::Section;
  if (s == "article") return UnitKind::Article;
  return std::nullopt;
}

std::string normalize_act_name(std::string_view raw) {
  std::string s = collapse_whitespace(raw);
  while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == ';' ||
                        s.back() == ':'))
    s.pop_back();
  while (!s.empty() && s.back() == ' ') s.pop_back();

  static const std::set<std::string> kSmallWords = {
      "of", "the", "and", "for", "in", "to", "on", "by", "a", "an"};

  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  bool first_word = true;
  while (i < s.size()) {
    std::size_t j = s.find(' ', i);
    if (j == std::string::npos) j = s.size();
    std::string word = s.substr(i, j - i);
    std::string bare;
    for (char c : word)
      if (std::isalpha(static_cast<unsigned char>(c))) bare += lower(c);
    bool has_digit = std::any_of(word.begin(), word.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
    if (has_digit) {
      // years and numbered tokens pass through untouched
    } else if (!first_word && kSmallWords.count(bare)) {
      for (char& c : word) c = lower(c);
    } else {
      bool cased = false;
      for (char& c : word) {
        if (!std::isalpha(static_cast<unsigned char>(c))) continue;
        c = cased ? lower(c)
                  : static_cast<char>(
                        std::toupper(static_cast<unsigned char>(c)));
        cased = true;
      }
    }
    if (!out.empty()) out += ' ';
    out += word;
    if (!bare.empty()) first_word = false;
    i = j + (j < s.size() ? 1 : 0);
  }
  return out;
}

std::string canonical_case_title(std::string_view raw) {
  return to_lower(collapse_whitespace(raw));
}

std::vector<StatuteCitation> extract_statute_citations(
    std::string_view text, const std::set<std::string>& act_index) {
  struct Keyword {
    std::string_view word;
    UnitKind kind;
  };
  static constexpr Keyword kKeywords[] = {
      {"sections", UnitKind::Section}, {"section", UnitKind::Section},
      {"sec.", UnitKind::Section},     {"articles", UnitKind::Article},
      {"article", UnitKind::Article},  {"arts.", UnitKind::Article},
      {"art.", UnitKind::Article},
  };

  std::vector<StatuteCitation> out;
  std::vector<Interval> covered;

  std::size_t i = 0;
  while (i < text.size()) {
    if (!at_word_start(text, i)) {
      ++i;
      continue;
    }
    UnitKind kind = UnitKind::None;
    std::size_t kw_end = 0;
    for (const Keyword& kw : kKeywords) {
      if (keyword_at(text, i, kw.word, &kw_end)) {
        kind = kw.kind;
        break;
      }
    }
    if (kind == UnitKind::None) {
      ++i;
      continue;
    }

    std::vector<UnitTok> units = parse_unit_list(text, kw_end);
    if (units.empty()) {
      ++i;
      continue;
    }

    // separator: " of [the] " or ", [the] "
    std::size_t p = units.back().end;
    while (p < text.size() && is_space(text[p])) ++p;
    std::optional<std::size_t> act_pos;
    if (auto e = match_flexible(text, p, "of ")) {
      act_pos = *e;
    } else if (p < text.size() && text[p] == ',') {
      std::size_t q = p + 1;
      while (q < text.size() && is_space(text[q])) ++q;
      act_pos = q;
    }
    if (act_pos) {
      if (auto e = match_flexible(text, *act_pos, "the ")) act_pos = *e;
    }

    std::optional<std::size_t> act_end;
    if (act_pos && *act_pos < text.size()) {
      auto by_index = match_index(text, *act_pos, act_index);
      auto by_year = match_year_terminated(text, *act_pos);
      if (by_index && (!by_year || *by_index >= *by_year)) act_end = by_index;
      else if (by_year) act_end = by_year;
    }
    if (!act_end) {
      i = kw_end;
      continue;
    }

    std::string raw(text.substr(*act_pos, *act_end - *act_pos));
    std::string canonical = normalize_act_name(raw);
    if (units.size() == 1) {
      out.push_back(StatuteCitation{kind, units[0].num, raw, canonical,
                                    CharSpan{i, *act_end}});
    } else {
      for (const UnitTok& u : units) {
        out.push_back(StatuteCitation{kind, u.num, raw, canonical,
                                      CharSpan{u.begin, u.end}});
      }
    }
    covered.push_back(Interval{i, *act_end});
    i = *act_end;
  }

  // bare act mentions, only for indexed names
  i = 0;
  while (i < text.size()) {
    if (!at_word_start(text, i) || overlaps(covered, i, i + 1)) {
      ++i;
      continue;
    }
    auto e = match_index(text, i, act_index);
    if (!e || overlaps(covered, i, *e)) {
      ++i;
      continue;
    }
    std::string raw(text.substr(i, *e - i));
    out.push_back(StatuteCitation{UnitKind::None, std::nullopt, raw,
                                  normalize_act_name(raw), CharSpan{i, *e}});
    covered.push_back(Interval{i, *e});
    i = *e;
  }

  std::sort(out.begin(), out.end(),
            [](const StatuteCitation& a, const StatuteCitation& b) {
              return a.span.begin < b.span.begin;
            });
  return out;
}

std::vector<PrecedentCitation> extract_precedent_citations(
    std::string_view text,
    const std::map<std::string, std::string>& case_name_index) {
  std::vector<CaseCand> cands;

  for (const auto& [title, doc_id] : case_name_index) {
    if (title.empty()) continue;
    std::size_t i = 0;
    while (i < text.size()) {
      if (!at_word_start(text, i)) {
        ++i;
        continue;
      }
      if (auto e = match_flexible(text, i, title)) {
        cands.push_back(CaseCand{i, *e, &doc_id});
        i = *e;
      } else {
        ++i;
      }
    }
  }

  // unindexed "X v. Y" shapes
  std::vector<std::pair<std::size_t, std::size_t>> toks;
  {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t b = i;
      while (i < text.size() && !is_space(text[i])) ++i;
      if (i > b) toks.emplace_back(b, i);
    }
  }
  auto tok_text = [&](std::size_t t) {
    return text.substr(toks[t].first, toks[t].second - toks[t].first);
  };
  for (std::size_t t = 0; t < toks.size(); ++t) {
    std::string low = to_lower(tok_text(t));
    if (low != "v." && low != "vs." && low != "v") continue;
    // left party: walk back over capitalized tokens and linkers; a token
    // ending in ',' or ';' belongs to the previous clause
    std::size_t lo = t;
    while (lo > 0) {
      std::string_view prev = tok_text(lo - 1);
      if (!party_token(prev) && !linker_token(to_lower(prev))) break;
      if (prev.back() == ',' || prev.back() == ';') break;
      if (paragraph_gap(text, toks[lo - 1].second, toks[lo].first)) break;
      --lo;
    }
    while (lo < t && linker_token(to_lower(tok_text(lo)))) ++lo;
    if (lo == t) continue;
    // right party: capitalized tokens, linkers only when followed by one
    std::size_t hi = t;
    while (hi + 1 < toks.size()) {
      if (paragraph_gap(text, toks[hi].second, toks[hi + 1].first)) break;
      std::string_view next = tok_text(hi + 1);
      if (party_token(next)) {
        ++hi;
      } else if (linker_token(to_lower(next)) && hi + 2 < toks.size() &&
                 party_token(tok_text(hi + 2)) &&
                 !paragraph_gap(text, toks[hi + 1].second,
                                toks[hi + 2].first)) {
        hi += 2;
      } else {
        break;
      }
      char tail = tok_text(hi).back();
      if (tail == ',' || tail == ';' || tail == '.') break;
    }
    if (hi == t) continue;
    std::size_t b = toks[lo].first;
    std::size_t e = toks[hi].second;
    while (e > b && (text[e - 1] == ',' || text[e - 1] == ';' ||
                     text[e - 1] == '.'))
      --e;
    cands.push_back(CaseCand{b, e, nullptr});
  }

  // on overlap, a resolved candidate beats any unresolved one (an index hit
  // inside a sloppy "See X v. Y" span must not lose its edge), then longer
  // spans beat shorter
  std::sort(cands.begin(), cands.end(), [](const CaseCand& a,
                                           const CaseCand& b) {
    bool ra = a.doc_id != nullptr, rb = b.doc_id != nullptr;
    if (ra != rb) return ra;
    std::size_t la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return a.begin < b.begin;
  });

  std::vector<CaseCand> kept;
  for (const CaseCand& c : cands) {
    bool clash = false;
    for (const CaseCand& k : kept) {
      if (c.begin < k.end && k.begin < c.end) {
        clash = true;
        break;
      }
    }
    if (!clash) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(),
            [](const CaseCand& a, const CaseCand& b) {
              return a.begin < b.begin;
            });

  std::vector<PrecedentCitation> out;
  for (const CaseCand& c : kept) {
    PrecedentCitation pc;
    pc.matched_text = std::string(text.substr(c.begin, c.end - c.begin));
    if (c.doc_id) pc.resolved_doc_id = *c.doc_id;
    pc.span = CharSpan{c.begin, c.end};
    out.push_back(std::move(pc));
  }
  return out;
}

StatuteTree parse_statute_outline(std::string_view text) {
  StatuteTree tree;
  bool have_act = false;
  std::array<int, kNodeKindCount> counters{};

  struct Frame {
    int level;
    std::vector<StatuteUnit>* children;
  };
  std::vector<Frame> stack;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(trim(text.substr(pos, eol - pos)));
    ++line_no;
    pos = eol + 1;
    if (pos > text.size() && line.empty()) break;
    if (line.empty()) continue;

    std::size_t sp = line.find(' ');
    std::string marker = sp == std::string::npos ? line : line.substr(0, sp);
    std::string rest =
        sp == std::string::npos ? std::string() : std::string(trim(line.substr(sp + 1)));

    NodeKind level;
    if (marker == "ACT") level = NodeKind::Act;
    else if (marker == "PART") level = NodeKind::Part;
    else if (marker == "CHAPTER") level = NodeKind::Chapter;
    else if (marker == "TOPIC") level = NodeKind::Topic;
    else if (marker == "SECTION") level = NodeKind::Section;
    else continue;  // body line

    if (level == NodeKind::Act) {
      if (have_act)
        throw MalformedOutlineError(line_no, "more than one ACT heading");
      if (rest.empty())
        throw MalformedOutlineError(line_no, "ACT heading without a title");
      have_act = true;
      tree.title = rest;
      tree.act_id = slugify(rest);
      stack.push_back(Frame{hierarchy_level(NodeKind::Act), &tree.children});
      continue;
    }

    if (!have_act)
      throw MalformedOutlineError(
          line_no, std::string(marker) + " heading before any ACT heading");

    StatuteUnit unit;
    unit.level = level;
    unit.ordinal = ++counters[static_cast<int>(level)];
    if (level == NodeKind::Topic) {
      if (rest.empty())
        throw MalformedOutlineError(line_no, "TOPIC heading without a title");
      unit.id = std::to_string(unit.ordinal);
      unit.title = rest;
    } else {
      std::size_t idsp = rest.find(' ');
      unit.id = idsp == std::string::npos ? rest : rest.substr(0, idsp);
      unit.title = idsp == std::string::npos
                       ? std::string()
                       : std::string(trim(rest.substr(idsp + 1)));
      if (unit.id.empty())
        throw MalformedOutlineError(
            line_no, std::string(marker) + " heading without an identifier");
    }

    int lv = hierarchy_level(level);
    while (!stack.empty() && stack.back().level >= lv) stack.pop_back();
    if (stack.empty())
      throw MalformedOutlineError(line_no, "heading has no legal parent");
    auto* siblings = stack.back().children;
    siblings->push_back(std::move(unit));
    stack.push_back(Frame{lv, &siblings->back().children});
  }

  if (!have_act) throw MalformedOutlineError(0, "outline contains no ACT heading");
  return tree;
}

}  // namespace hiernet
