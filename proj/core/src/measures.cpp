#include "hiernet/measures.hpp"

#include <algorithm>
#include <vector>

namespace hiernet {

namespace {

using NodeIndex = HeteroGraph::NodeIndex;

NodeIndex require_document(const HeteroGraph& g, std::string_view id) {
  NodeIndex i = g.index_of(id);
  if (g.node(i).kind != NodeKind::Document)
    throw NotADocumentError(std::string(id));
  return i;
}

std::vector<NodeIndex> citation_peers(const HeteroGraph& g, NodeIndex i,
                                      Direction dir) {
  std::vector<NodeIndex> out;
  auto span = dir == Direction::Out ? g.out_edges(i) : g.in_edges(i);
  for (const auto& he : span)
    if (he.kind == EdgeKind::Citation) out.push_back(he.peer);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeIndex> undirected_peers(const HeteroGraph& g, NodeIndex i) {
  std::vector<NodeIndex> out;
  for (const auto& he : g.out_edges(i)) out.push_back(he.peer);
  for (const auto& he : g.in_edges(i)) out.push_back(he.peer);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double jaccard(const std::vector<NodeIndex>& a,
               const std::vector<NodeIndex>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

bool contains(const std::vector<NodeIndex>& sorted, NodeIndex x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

std::string_view to_string(SimilarityMethod m) {
  switch (m) {
    case SimilarityMethod::BibliographicCoupling:
      return "bibliographic_coupling";
    case SimilarityMethod::CoCitation: return "co_citation";
    case SimilarityMethod::Dispersion: return "dispersion";
  }
  return "";
}

SimilarityScore bibliographic_coupling(const HeteroGraph& g,
                                       std::string_view u,
                                       std::string_view v) {
  NodeIndex iu = require_document(g, u);
  NodeIndex iv = require_document(g, v);
  double value = jaccard(citation_peers(g, iu, Direction::Out),
                         citation_peers(g, iv, Direction::Out));
  return SimilarityScore{value, SimilarityMethod::BibliographicCoupling,
                         std::string(u), std::string(v)};
}

SimilarityScore co_citation(const HeteroGraph& g, std::string_view u,
                            std::string_view v) {
  NodeIndex iu = require_document(g, u);
  NodeIndex iv = require_document(g, v);
  double value = jaccard(citation_peers(g, iu, Direction::In),
                         citation_peers(g, iv, Direction::In));
  return SimilarityScore{value, SimilarityMethod::CoCitation, std::string(u),
                         std::string(v)};
}

SimilarityScore dispersion(const HeteroGraph& g, std::string_view u,
                           std::string_view v, bool normalized) {
  NodeIndex iu = require_document(g, u);
  NodeIndex iv = require_document(g, v);
  // anchor on the smaller id so dispersion(u,v) == dispersion(v,u)
  if (g.node(iv).id < g.node(iu).id) std::swap(iu, iv);

  auto nu = undirected_peers(g, iu);
  auto nv = undirected_peers(g, iv);
  std::vector<NodeIndex> common;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                        std::back_inserter(common));
  std::erase(common, iu);
  std::erase(common, iv);

  std::vector<std::vector<NodeIndex>> peer_sets(common.size());
  for (std::size_t k = 0; k < common.size(); ++k)
    peer_sets[k] = undirected_peers(g, common[k]);

  std::size_t raw = 0;
  for (std::size_t a = 0; a < common.size(); ++a) {
    // s's neighbors restricted to the anchor's neighborhood, minus {u,v}
    std::vector<NodeIndex> nbrs_s;
    std::set_intersection(peer_sets[a].begin(), peer_sets[a].end(), nu.begin(),
                          nu.end(), std::back_inserter(nbrs_s));
    std::erase(nbrs_s, iu);
    std::erase(nbrs_s, iv);
    for (std::size_t b = a + 1; b < common.size(); ++b) {
      if (contains(nbrs_s, common[b])) continue;  // adjacent
      bool shared = false;
      for (NodeIndex w : nbrs_s) {
        if (contains(peer_sets[b], w)) {
          shared = true;
          break;
        }
      }
      if (!shared) ++raw;
    }
  }

  double value = static_cast<double>(raw);
  if (normalized) value = common.empty() ? 0.0 : value / common.size();
  return SimilarityScore{value, SimilarityMethod::Dispersion, std::string(u),
                         std::string(v)};
}

}  // namespace hiernet
