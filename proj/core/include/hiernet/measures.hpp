#pragma once

#include <string>
#include <string_view>

#include "hiernet/graph.hpp"

namespace hiernet {

enum class SimilarityMethod : uint8_t {
  BibliographicCoupling,
  CoCitation,
  Dispersion,
};

std::string_view to_string(SimilarityMethod m);

struct SimilarityScore {
  double value = 0.0;
  SimilarityMethod method = SimilarityMethod::BibliographicCoupling;
  std::string doc_a;
  std::string doc_b;
};

// Jaccard similarity of the citation out-neighbor sets of u and v, whatever
// the neighbors' kinds. 0 when both sets are empty.
SimilarityScore bibliographic_coupling(const HeteroGraph& g,
                                       std::string_view u, std::string_view v);

// Same with citation in-neighbors. Since nothing but a document ever cites
// a document, this is identical on the full graph and on its
// document-citation subgraph.
SimilarityScore co_citation(const HeteroGraph& g, std::string_view u,
                            std::string_view v);

// Neighborhoods are undirected and cross every edge kind. With C the common
// neighbors of u and v (excluding u and v), the raw value counts unordered
// pairs (s,t) in C that are not adjacent and share no neighbor inside the
// anchor's neighborhood besides u and v; the normalized value divides by
// |C|. The anchor is the smaller of the two ids, which makes the score
// symmetric in its arguments.
SimilarityScore dispersion(const HeteroGraph& g, std::string_view u,
                           std::string_view v, bool normalized = true);

}  // namespace hiernet
