#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hiernet/graph.hpp"

namespace hiernet {

enum class UnitKind : uint8_t { None, Section, Article };

std::string_view to_string(UnitKind k);
std::optional<UnitKind> parse_unit_kind(std::string_view name);

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const CharSpan&) const = default;
};

struct StatuteCitation {
  UnitKind unit_kind = UnitKind::None;
  std::optional<std::string> unit_number;
  std::string act_name_raw;
  std::string act_name_canonical;
  CharSpan span;
};

struct PrecedentCitation {
  std::string matched_text;
  std::optional<std::string> resolved_doc_id;
  CharSpan span;
};

// One unit inside a statute. level is restricted to Part, Chapter, Topic or
// Section; ordinal counts units of the same level within one act, starting
// at 1. Topic headings carry no identifier of their own, so a topic's id is
// its ordinal rendered in decimal.
struct StatuteUnit {
  NodeKind level = NodeKind::Section;
  std::string id;
  std::string title;
  int ordinal = 0;
  std::vector<StatuteUnit> children;
};

struct StatuteTree {
  std::string act_id;
  std::string title;
  std::vector<StatuteUnit> children;
};

// "code of criminal procedure,  1973." -> "Code of Criminal Procedure, 1973"
std::string normalize_act_name(std::string_view raw);

// Case-folded, whitespace-collapsed form used as the key of the case-name
// index.
std::string canonical_case_title(std::string_view raw);

// Finds "Section 47 of the Code of Criminal Procedure, 1973" style mentions
// plus bare act names listed in act_index. Unit lists ("Sections 34 and 302
// of ...") yield one citation per unit number. Matches are non-overlapping
// and ordered by span start.
std::vector<StatuteCitation> extract_statute_citations(
    std::string_view text, const std::set<std::string>& act_index);

// case_name_index maps canonical_case_title(title) -> document id. Longest
// match wins on overlap; "X v. Y" shapes missing from the index come back
// with resolved_doc_id unset.
std::vector<PrecedentCitation> extract_precedent_citations(
    std::string_view text,
    const std::map<std::string, std::string>& case_name_index);

// Parses the heading-marker outline format (ACT/PART/CHAPTER/TOPIC/SECTION
// line prefixes, body lines ignored). Exactly one ACT heading, first.
StatuteTree parse_statute_outline(std::string_view text);

}  // namespace hiernet
