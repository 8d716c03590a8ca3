#include "hiernet/builder.hpp"

#include <map>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

struct ActEntry {
  std::string act_id;
  // (level, lowercased heading id) -> node id
  std::map<std::pair<NodeKind, std::string>, std::string> units;
};

void add_units(HeteroGraph& g, ActEntry& entry, const std::string& parent_id,
               const std::vector<StatuteUnit>& units) {
  for (const StatuteUnit& u : units) {
    std::string id = statute_node_id(entry.act_id, u.level, u.ordinal);
    std::string label = u.title.empty()
                            ? std::string(to_string(u.level)) + " " + u.id
                            : u.title;
    g.add_node(id, u.level, label);
    g.add_edge(parent_id, id, EdgeKind::Hierarchy);
    entry.units.emplace(std::make_pair(u.level, to_lower(u.id)), id);
    add_units(g, entry, id, u.children);
  }
}

}  // namespace

std::string statute_node_id(std::string_view act_id, NodeKind level,
                            int ordinal) {
  std::string id(act_id);
  id += '/';
  id += to_lower(to_string(level));
  id += ':';
  id += std::to_string(ordinal);
  return id;
}

BuildResult build_graph(const std::vector<StatuteTree>& statute_trees,
                        const std::vector<DocumentRecord>& doc_records,
                        const std::vector<CitationRecord>& citations) {
  BuildResult result;
  HeteroGraph& g = result.graph;

  for (const DocumentRecord& d : doc_records) {
    g.add_node(d.doc_id, NodeKind::Document, d.title);
  }

  std::map<std::string, ActEntry> acts;  // canonical act name -> entry
  for (const StatuteTree& tree : statute_trees) {
    g.add_node(tree.act_id, NodeKind::Act, tree.title);
    ActEntry& entry = acts[normalize_act_name(tree.title)];
    entry.act_id = tree.act_id;
    add_units(g, entry, tree.act_id, tree.children);
  }

  for (const CitationRecord& rec : citations) {
    auto fail = [&](std::string reason) {
      result.diagnostics.push_back(BuildDiagnostic{rec, std::move(reason)});
    };
    if (!g.has_node(rec.src_id)) {
      fail("unknown source node '" + rec.src_id + "'");
      continue;
    }
    std::string dst;
    if (rec.dst_id) {
      if (!g.has_node(*rec.dst_id)) {
        fail("unknown target node '" + *rec.dst_id + "'");
        continue;
      }
      dst = *rec.dst_id;
    } else if (rec.statute) {
      const StatuteRef& ref = *rec.statute;
      auto act_it = acts.find(normalize_act_name(ref.act_name));
      if (act_it == acts.end()) {
        fail("unknown act '" + ref.act_name + "'");
        continue;
      }
      if (ref.unit_kind == UnitKind::None) {
        dst = act_it->second.act_id;
      } else {
        if (!ref.unit_number) {
          fail("citation names a " + std::string(to_string(ref.unit_kind)) +
               " of '" + ref.act_name + "' without a number");
          continue;
        }
        auto unit_it = act_it->second.units.find(
            std::make_pair(NodeKind::Section, to_lower(*ref.unit_number)));
        if (unit_it == act_it->second.units.end()) {
          fail("act '" + ref.act_name + "' has no " +
               std::string(to_string(ref.unit_kind)) + " " + *ref.unit_number);
          continue;
        }
        dst = unit_it->second;
      }
    } else {
      fail("citation has no resolvable target");
      continue;
    }
    try {
      g.add_edge(rec.src_id, dst, EdgeKind::Citation);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  return result;
}

}  // namespace hiernet
