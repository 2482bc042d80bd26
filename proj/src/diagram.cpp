#include "fanlab/diagram.hpp"

#include <algorithm>
#include <set>

#include "fanlab/errors.hpp"

namespace fanlab {

namespace {

void check_component(const DynkinComponent& c) {
  const std::size_t n = c.rank;
  bool ok = false;
  switch (c.type) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 3; break;  // C2 is the B2 alias
    case 'D': ok = n >= 4; break;
    case 'E': ok = n == 6 || n == 7 || n == 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: ok = false;
  }
  if (!ok)
    fail(ErrorCode::BadDiagram,
         std::string("invalid component ") + c.type + std::to_string(n));
}

}  // namespace

DynkinDiagram::DynkinDiagram(std::vector<DynkinComponent> comps)
    : components_(std::move(comps)) {
  for (const DynkinComponent& c : components_) check_component(c);
  if (components_.size() > 26)
    fail(ErrorCode::BadDiagram, "more than 26 components");
}

std::string DynkinDiagram::component_letter(std::size_t index) {
  return std::string(1, static_cast<char>('a' + index));
}

std::size_t DynkinDiagram::node_count() const {
  std::size_t n = 0;
  for (const DynkinComponent& c : components_) n += c.rank;
  return n;
}

std::vector<std::string> DynkinDiagram::nodes() const {
  std::vector<std::string> out;
  for (std::size_t ci = 0; ci < components_.size(); ++ci)
    for (std::size_t i = 1; i <= components_[ci].rank; ++i)
      out.push_back(component_letter(ci) + std::to_string(i));
  return out;
}

std::pair<std::size_t, std::size_t> DynkinDiagram::locate(const std::string& id) const {
  if (id.size() >= 2 && id[0] >= 'a' && id[0] < static_cast<char>('a' + components_.size()) &&
      id[1] != '0') {
    std::size_t ci = static_cast<std::size_t>(id[0] - 'a');
    std::size_t idx = 0;
    bool digits = true;
    for (std::size_t p = 1; p < id.size(); ++p) {
      if (id[p] < '0' || id[p] > '9') {
        digits = false;
        break;
      }
      idx = idx * 10 + static_cast<std::size_t>(id[p] - '0');
    }
    if (digits && idx >= 1 && idx <= components_[ci].rank) return {ci, idx};
  }
  fail(ErrorCode::UnknownNode, "no node '" + id + "' in diagram");
}

bool DynkinDiagram::has_node(const std::string& id) const {
  try {
    locate(id);
    return true;
  } catch (const Error&) {
    return false;
  }
}

IntMatrix cartan_matrix(const DynkinComponent& c) {
  check_component(c);
  const std::size_t n = c.rank;
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) M.at(i, i) = 2;
  auto edge = [&](std::size_t i, std::size_t j) { M.at(i, j) = M.at(j, i) = -1; };
  switch (c.type) {
    case 'A':
      for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case 'B':  // short root last: <alpha_{n-1}, alpha_n^v> = -2
      for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1);
      M.at(n - 2, n - 1) = -2;
      break;
    case 'C':  // long root last: <alpha_n, alpha_{n-1}^v> = -2
      for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1);
      M.at(n - 1, n - 2) = -2;
      break;
    case 'D':
      for (std::size_t i = 0; i + 2 < n; ++i) edge(i, i + 1);
      edge(n - 3, n - 1);
      break;
    case 'E':
      edge(0, 2);
      edge(1, 3);
      for (std::size_t i = 2; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case 'F':
      edge(0, 1);
      edge(1, 2);
      edge(2, 3);
      M.at(1, 2) = -2;
      break;
    case 'G':
      edge(0, 1);
      M.at(1, 0) = -3;
      break;
  }
  return M;
}

Int DynkinDiagram::cartan(const std::string& i, const std::string& j) const {
  auto [ci, ii] = locate(i);
  auto [cj, jj] = locate(j);
  if (ci != cj) return 0;
  return cartan_matrix(components_[ci]).at(ii - 1, jj - 1);
}

bool DynkinDiagram::adjacent(const std::string& i, const std::string& j) const {
  return i != j && cartan(i, j) != 0;
}

Int pairing(const DynkinDiagram& d, const Weight& w, const std::string& node) {
  d.locate(node);
  auto it = w.find(node);
  return it == w.end() ? Int(0) : it->second;
}

std::vector<IntVec> positive_roots(const DynkinComponent& c) {
  const IntMatrix A = cartan_matrix(c);
  const std::size_t n = c.rank;
  std::set<IntVec, bool (*)(const IntVec&, const IntVec&)> roots(
      +[](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
  std::vector<IntVec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    roots.insert(e);
    queue.push_back(std::move(e));
  }
  // Simple reflections that stay in the positive cone reach every positive
  // root from the simples.
  while (!queue.empty()) {
    IntVec beta = std::move(queue.back());
    queue.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      Int pair = 0;
      for (std::size_t i = 0; i < n; ++i) pair += beta[i] * A.at(i, j);
      IntVec gamma = beta;
      gamma[j] -= pair;
      bool positive = !is_zero(gamma);
      for (const Int& x : gamma)
        if (x < 0) positive = false;
      if (positive && roots.insert(gamma).second) queue.push_back(std::move(gamma));
    }
  }
  return {roots.begin(), roots.end()};
}

std::size_t dim_flag(const DynkinDiagram& d, const NodeSet& I) {
  std::vector<std::set<std::size_t>> in_I(d.components().size());
  for (const std::string& node : I) {
    auto [ci, idx] = d.locate(node);
    in_I[ci].insert(idx - 1);
  }
  std::size_t count = 0;
  for (std::size_t ci = 0; ci < d.components().size(); ++ci) {
    for (const IntVec& root : positive_roots(d.components()[ci])) {
      bool inside = true;
      for (std::size_t i = 0; i < root.size(); ++i)
        if (root[i] != 0 && !in_I[ci].count(i)) {
          inside = false;
          break;
        }
      if (!inside) ++count;
    }
  }
  return count;
}

std::vector<std::vector<std::string>> connected_components(const DynkinDiagram& d,
                                                           const NodeSet& nodes) {
  std::vector<std::string> ordered;
  for (const std::string& id : d.nodes())
    if (nodes.count(id)) ordered.push_back(id);
  for (const std::string& id : nodes) d.locate(id);  // reject unknown ids

  std::vector<std::vector<std::string>> out;
  std::set<std::string> seen;
  for (const std::string& start : ordered) {
    if (seen.count(start)) continue;
    std::vector<std::string> comp, stack = {start};
    seen.insert(start);
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      comp.push_back(cur);
      for (const std::string& next : ordered)
        if (!seen.count(next) && d.adjacent(cur, next)) {
          seen.insert(next);
          stack.push_back(next);
        }
    }
    std::sort(comp.begin(), comp.end(), [&](const std::string& a, const std::string& b) {
      return d.locate(a) < d.locate(b);
    });
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace fanlab
