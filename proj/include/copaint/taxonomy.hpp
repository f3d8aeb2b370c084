#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "va.hpp"

namespace copaint {

enum class Layer { generic, stereotype, known };

inline std::string_view toString(Layer l) {
  switch (l) {
    case Layer::generic: return "generic";
    case Layer::stereotype: return "stereotype";
    case Layer::known: return "known";
  }
  return "generic";
}

inline Layer layerFromString(std::string_view s) {
  if (s == "generic") return Layer::generic;
  if (s == "stereotype") return Layer::stereotype;
  if (s == "known") return Layer::known;
  throw InvalidArgument("unknown layer '" + std::string(s) + "'");
}

struct LayeredAffect {
  VAPoint affect;
  Layer layer = Layer::known;
  friend bool operator==(const LayeredAffect&, const LayeredAffect&) = default;
};

// Slash-delimited concept paths, e.g. "animal/dog/golden-retriever". The
// root is the empty path.
namespace taxpath {

inline std::vector<std::string_view> segments(std::string_view path) {
  std::vector<std::string_view> out;
  while (!path.empty()) {
    const std::size_t slash = path.find('/');
    out.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return out;
}

inline std::size_t depth(std::string_view path) { return segments(path).size(); }

inline std::string parent(std::string_view path) {
  const std::size_t slash = path.rfind('/');
  return slash == std::string_view::npos ? std::string{} : std::string(path.substr(0, slash));
}

inline std::string_view leafName(std::string_view path) {
  const std::size_t slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

inline std::string join(std::string_view parent, std::string_view child) {
  return parent.empty() ? std::string(child) : std::string(parent) + "/" + std::string(child);
}

// True when `path` equals `ancestor` or lies below it.
inline bool within(std::string_view path, std::string_view ancestor) {
  if (ancestor.empty()) return true;
  return path == ancestor ||
         (path.size() > ancestor.size() && path.starts_with(ancestor) && path[ancestor.size()] == '/');
}

// Edges on the tree path between two nodes.
inline std::size_t hops(std::string_view a, std::string_view b) {
  const auto sa = segments(a), sb = segments(b);
  std::size_t common = 0;
  while (common < sa.size() && common < sb.size() && sa[common] == sb[common]) ++common;
  return (sa.size() - common) + (sb.size() - common);
}

inline void validate(std::string_view path) {
  if (path.empty()) throw InvalidArgument("empty concept path");
  for (auto seg : segments(path))
    if (seg.empty()) throw InvalidArgument("malformed concept path '" + std::string(path) + "'");
}

}  // namespace taxpath

struct TaxonomyNode {
  std::string path;
  std::set<std::string> children;  // child paths
  std::optional<LayeredAffect> explicitAffect;
  std::optional<VAPoint> leafAffect;

  bool isLeaf() const { return children.empty(); }
  friend bool operator==(const TaxonomyNode&, const TaxonomyNode&) = default;
};

// Mean and RMS spread of the seeded leaves in a subtree.
struct LeafSummary {
  std::size_t count = 0;
  VAPoint mean;
  double stddev = 0.0;
};

class Taxonomy {
 public:
  Taxonomy() { nodes_.emplace(std::string{}, TaxonomyNode{}); }

  bool contains(std::string_view path) const { return nodes_.find(std::string(path)) != nodes_.end(); }

  const TaxonomyNode& node(std::string_view path) const {
    auto it = nodes_.find(std::string(path));
    if (it == nodes_.end()) throw UnknownPath("unknown concept '" + std::string(path) + "'");
    return it->second;
  }

  TaxonomyNode& node(std::string_view path) {
    auto it = nodes_.find(std::string(path));
    if (it == nodes_.end()) throw UnknownPath("unknown concept '" + std::string(path) + "'");
    return it->second;
  }

  // Creates `path` and any missing ancestors. A seeded leaf cannot gain
  // children.
  TaxonomyNode& ensure(std::string_view path) {
    taxpath::validate(path);
    if (auto it = nodes_.find(std::string(path)); it != nodes_.end()) return it->second;
    const std::string par = taxpath::parent(path);
    TaxonomyNode& parentNode = par.empty() ? nodes_.at(std::string{}) : ensure(par);
    if (parentNode.leafAffect && parentNode.isLeaf() && !parentNode.path.empty())
      throw InvalidArgument("cannot add a child under seeded leaf '" + parentNode.path + "'");
    parentNode.children.insert(std::string(path));
    TaxonomyNode fresh;
    fresh.path = std::string(path);
    return nodes_.emplace(fresh.path, std::move(fresh)).first->second;
  }

  TaxonomyNode& addLeaf(std::string_view path, VAPoint affect) {
    TaxonomyNode& n = ensure(path);
    if (!n.isLeaf()) throw InvalidArgument("'" + std::string(path) + "' is not a leaf");
    n.leafAffect = affect;
    return n;
  }

  // Every node in the subtree rooted at `path`, including itself, in path order.
  template <typename Fn>
  void forEachInSubtree(std::string_view path, Fn&& fn) const {
    auto it = nodes_.find(std::string(path));
    if (it == nodes_.end()) throw UnknownPath("unknown concept '" + std::string(path) + "'");
    fn(it->second);
    if (path.empty()) {
      for (++it; it != nodes_.end(); ++it) fn(it->second);
      return;
    }
    // "a-b" sorts between "a" and "a/...", so seek to the prefix itself
    const std::string prefix = std::string(path) + "/";
    for (it = nodes_.lower_bound(prefix); it != nodes_.end() && it->first.starts_with(prefix); ++it)
      fn(it->second);
  }

  LeafSummary leafSummary(std::string_view path) const {
    std::vector<VAPoint> leaves;
    forEachInSubtree(path, [&](const TaxonomyNode& n) {
      if (n.isLeaf() && n.leafAffect) leaves.push_back(*n.leafAffect);
    });
    LeafSummary s;
    s.count = leaves.size();
    if (leaves.empty()) return s;
    for (const VAPoint& p : leaves) {
      s.mean.valence += p.valence;
      s.mean.arousal += p.arousal;
    }
    s.mean.valence /= leaves.size();
    s.mean.arousal /= leaves.size();
    double sq = 0.0;
    for (const VAPoint& p : leaves) {
      const double d = distance(p, s.mean);
      sq += d * d;
    }
    s.stddev = std::sqrt(sq / leaves.size());
    return s;
  }

  const std::map<std::string, TaxonomyNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;

 private:
  std::map<std::string, TaxonomyNode> nodes_;
};

}  // namespace copaint
