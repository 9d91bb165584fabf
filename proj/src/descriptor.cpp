#include "irrgen/descriptor.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "irrgen/fp.hpp"
#include "irrgen/rational.hpp"

namespace irrgen {

namespace {

std::uint64_t parse_number(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw DescriptorError("malformed group descriptor '" + std::string(whole) + "'");
  return v;
}

GroupSpec linear(bool projective, std::string_view body, std::string_view whole) {
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) throw DescriptorError("expected ':' in '" + std::string(whole) + "'");
  const auto n = parse_number(body.substr(0, colon), whole);
  const auto p = parse_number(body.substr(colon + 1), whole);
  if (n < 2 || n > 4) throw InputError("matrix degree must be 2, 3 or 4 in '" + std::string(whole) + "'");
  if (p >= kMaxModulus || !is_prime(p) || (n == 2 && p < 3))
    throw InputError("p must be a prime" + std::string(n == 2 ? " >= 3" : "") + " below " +
                     std::to_string(kMaxModulus) + " in '" + std::string(whole) + "'");
  try {
    return projective ? GroupSpec::psl(static_cast<int>(n), static_cast<std::uint32_t>(p))
                      : GroupSpec::sl(static_cast<int>(n), static_cast<std::uint32_t>(p));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::int64_t> parse_integers(std::string_view text) {
  std::vector<std::int64_t> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) throw InputError("malformed integer '" + w + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

GroupSpec parse_group(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "z") return GroupSpec::integers();
  if (s.rfind("psl", 0) == 0) return linear(true, s.substr(3), s);
  if (s.rfind("sl", 0) == 0) return linear(false, s.substr(2), s);
  if (s.rfind("cyclic:", 0) == 0) {
    const auto body = s.substr(7);
    const auto caret = body.find('^');
    if (caret == std::string_view::npos) throw DescriptorError("expected '^' in '" + std::string(s) + "'");
    const auto m = parse_number(body.substr(0, caret), s);
    const auto k = parse_number(body.substr(caret + 1), s);
    if (m < 1 || m >= (1u << 16) || k < 1 || k > 16) throw InputError("unsupported cyclic power '" + std::string(s) + "'");
    try {
      return GroupSpec::cyclic_power(static_cast<std::uint32_t>(m), static_cast<int>(k));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (s.rfind("prod(", 0) == 0 && s.back() == ')') {
    const auto body = s.substr(5, s.size() - 6);
    int depth = 0;
    std::size_t comma = std::string_view::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      else if (body[i] == ')') --depth;
      else if (body[i] == ',' && depth == 0) {
        if (comma != std::string_view::npos) throw DescriptorError("prod takes two factors: '" + std::string(s) + "'");
        comma = i;
      }
      if (depth < 0) break;
    }
    if (depth != 0 || comma == std::string_view::npos) throw DescriptorError("malformed product '" + std::string(s) + "'");
    return GroupSpec::product({parse_group(body.substr(0, comma)), parse_group(body.substr(comma + 1))});
  }
  throw DescriptorError("unknown group descriptor '" + std::string(s) + "'");
}

Element parse_element(const GroupSpec& g, std::string_view text) {
  if (const auto* prod = std::get_if<ProductGroup>(&g.kind)) {
    std::vector<Element> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '|') {
        if (parts.size() == prod->factors.size()) throw InputError("too many product components");
        parts.push_back(parse_element(prod->factors[parts.size()], text.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (parts.size() != prod->factors.size()) throw InputError("expected " + std::to_string(prod->factors.size()) + " product components");
    return Element{ProductElement{std::move(parts)}};
  }
  const auto v = parse_integers(text);
  try {
    Element e{std::int64_t{0}};
    if (const auto* sl = std::get_if<SpecialLinear>(&g.kind)) {
      if (v.size() != static_cast<std::size_t>(sl->n * sl->n)) throw InputError("expected " + std::to_string(sl->n * sl->n) + " matrix entries");
      e.value = FpMatrix::from_rows(sl->n, sl->p, v);
    } else if (const auto* psl = std::get_if<ProjectiveSpecialLinear>(&g.kind)) {
      if (v.size() != static_cast<std::size_t>(psl->n * psl->n)) throw InputError("expected " + std::to_string(psl->n * psl->n) + " matrix entries");
      e.value = projective_canonicalize(FpMatrix::from_rows(psl->n, psl->p, v));
    } else if (const auto* cp = std::get_if<CyclicPower>(&g.kind)) {
      if (v.size() != static_cast<std::size_t>(cp->k)) throw InputError("expected " + std::to_string(cp->k) + " coordinates");
      ModVector mv;
      for (auto x : v) mv.coords.push_back(reduce_mod(x, cp->m));
      e.value = std::move(mv);
    } else if (std::holds_alternative<IntegersZ>(g.kind)) {
      if (v.size() != 1) throw InputError("expected one integer");
      e.value = v[0];
    } else {
      if (v.size() != 1 || v[0] < 0) throw InputError("expected a table index");
      e.value = TableElement{static_cast<std::uint32_t>(v[0])};
    }
    validate_element(g, e);
    return e;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
}

}  // namespace irrgen
