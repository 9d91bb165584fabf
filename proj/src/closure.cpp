#include "irrgen/closure.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace irrgen {

namespace {

// Returns the visited encodings paired with elements; stops past cap.
template <class OnElement>
std::uint64_t bfs(const GeneratingTuple& t, std::uint64_t cap, OnElement&& on_element) {
  if (!t.group.is_finite()) throw std::invalid_argument("closure requires a finite group");
  const GroupSpec& g = t.group;
  std::unordered_set<std::string> seen;
  std::vector<Element> queue;
  std::string key;

  auto visit = [&](Element e) {
    key.clear();
    encode(g, e, key);
    if (!seen.insert(key).second) return;
    if (seen.size() > cap) throw CapExceeded(seen.size());
    on_element(e);
    queue.push_back(std::move(e));
  };

  visit(identity(g));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element current = queue[head];
    for (const auto& gen : t.items) visit(multiply(g, current, gen));
  }
  return seen.size();
}

}  // namespace

SubgroupClosure closure(const GeneratingTuple& t, std::uint64_t cap) {
  std::vector<std::pair<std::string, Element>> found;
  bfs(t, cap, [&](const Element& e) { found.emplace_back(encode(t.group, e), e); });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SubgroupClosure out;
  out.order = found.size();
  out.generator_count = t.items.size();
  out.elements.reserve(found.size());
  for (auto& [k, e] : found) out.elements.push_back(std::move(e));
  return out;
}

std::optional<std::uint64_t> closure_order(const GeneratingTuple& t, std::uint64_t cap) {
  try {
    return bfs(t, cap, [](const Element&) {});
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
}

}  // namespace irrgen
