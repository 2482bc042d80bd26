#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fanlab/linalg.hpp"
#include "fanlab/numeric.hpp"

// Dynkin diagrams in Bourbaki numbering, Cartan pairings, positive roots and
// flag-variety dimension counts. Node ids are one letter per component plus
// the Bourbaki index: a diagram (A4, D5) has nodes a1..a4, b1..b5.

namespace fanlab {

struct DynkinComponent {
  char type = 'A';  // one of A B C D E F G
  std::size_t rank = 0;
};

class DynkinDiagram {
 public:
  DynkinDiagram() = default;
  // Validates types and ranks. Aliases of smaller types (B1, C1, C2, D2, D3,
  // E4, E5, wrong F/G ranks) are rejected so every diagram has one spelling.
  explicit DynkinDiagram(std::vector<DynkinComponent> comps);

  const std::vector<DynkinComponent>& components() const { return components_; }
  std::size_t node_count() const;
  std::vector<std::string> nodes() const;  // component order, Bourbaki order
  bool has_node(const std::string& id) const;

  // (component index, Bourbaki index 1..rank); throws UnknownNode.
  std::pair<std::size_t, std::size_t> locate(const std::string& id) const;

  Int cartan(const std::string& i, const std::string& j) const;  // <alpha_i, alpha_j^v>
  bool adjacent(const std::string& i, const std::string& j) const;

  static std::string component_letter(std::size_t index);

  bool operator==(const DynkinDiagram& other) const {
    if (components_.size() != other.components_.size()) return false;
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (components_[i].type != other.components_[i].type ||
          components_[i].rank != other.components_[i].rank)
        return false;
    return true;
  }

 private:
  std::vector<DynkinComponent> components_;
};

// Weights in fundamental-weight coordinates; absent nodes pair to zero.
using Weight = std::map<std::string, Int>;
using NodeSet = std::set<std::string>;

// <w, alpha_node^v>; in fundamental coordinates this is a lookup.
Int pairing(const DynkinDiagram& d, const Weight& w, const std::string& node);

IntMatrix cartan_matrix(const DynkinComponent& c);

// All positive roots in simple-root coordinates, lex-sorted.
std::vector<IntVec> positive_roots(const DynkinComponent& c);

// dim G/P_I = number of positive roots with support not inside I.
std::size_t dim_flag(const DynkinDiagram& d, const NodeSet& I);

// Connected components of the subgraph induced on `nodes`, each sorted in
// diagram order, listed by first node.
std::vector<std::vector<std::string>> connected_components(const DynkinDiagram& d,
                                                           const NodeSet& nodes);

}  // namespace fanlab
