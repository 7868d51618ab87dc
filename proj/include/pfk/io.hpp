#pragma once

// JSON loading with collected, path-tagged errors, and Graphviz DOT export.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pfk/linloc.hpp"

namespace pfk {

using Json = nlohmann::ordered_json;

/// Every structural problem found in one input document.
class SchemaError : public InvalidInput {
 public:
  explicit SchemaError(std::vector<std::string> errors)
      : InvalidInput(errors.empty() ? "invalid input" : errors.front()), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Accumulates errors and normalization notes while reading a document.
struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> notes;

  void error(const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); }
  void note(const std::string& path, const std::string& what) { notes.push_back(path + ": " + what); }
  void require() const {
    if (!errors.empty()) throw SchemaError(errors);
  }
};

namespace io {

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError({origin + ": malformed JSON (" + std::string(e.what()) + ")"});
  }
}

namespace detail {

inline const Json* member(const Json& j, const std::string& key, const std::string& path, Diagnostics& d,
                          bool required = true) {
  if (!j.is_object()) {
    d.error(path, "expected an object");
    return nullptr;
  }
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) d.error(path, "missing \"" + key + "\"");
    return nullptr;
  }
  return &*it;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& path, Diagnostics& d) {
  std::vector<std::string> out;
  if (!j.is_array()) {
    d.error(path, "expected an array of strings");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) d.error(path + "[" + std::to_string(i) + "]", "expected a string");
    else out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::optional<Bitset> point_set(const FinSpace& x, const Json& j, const std::string& path, Diagnostics& d) {
  const auto before = d.errors.size();
  auto names = string_list(j, path, d);
  Bitset s(x.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto p = x.find(names[i]);
    if (!p) d.error(path + "[" + std::to_string(i) + "]", "unknown point '" + names[i] + "'");
    else s.set(*p);
  }
  if (d.errors.size() != before) return std::nullopt;
  return s;
}

inline std::optional<Vector> vector(const FqSpace& a, const Json& j, const std::string& path, Diagnostics& d) {
  if (!j.is_string()) {
    d.error(path, "expected a vector digit string");
    return std::nullopt;
  }
  const auto s = j.get<std::string>();
  if (s.size() != a.dim()) {
    d.error(path, "vector '" + s + "' has length " + std::to_string(s.size()) + ", expected " + std::to_string(a.dim()));
    return std::nullopt;
  }
  try {
    return a.parse(s);
  } catch (const InvalidInput& e) {
    d.error(path, e.what());
    return std::nullopt;
  }
}

}  // namespace detail

struct LoadedLattice {
  RawOrder raw;
  std::optional<std::string> level;
};

inline std::optional<LoadedLattice> read_lattice(const Json& j, const std::string& path, Diagnostics& d) {
  const auto before = d.errors.size();
  LoadedLattice out;
  if (auto e = detail::member(j, "elements", path, d)) out.raw.ids = detail::string_list(*e, path + ".elements", d);
  if (auto l = detail::member(j, "leq", path, d)) {
    if (!l->is_array()) d.error(path + ".leq", "expected an array of pairs");
    else
      for (std::size_t i = 0; i < l->size(); ++i) {
        const auto p = path + ".leq[" + std::to_string(i) + "]";
        const auto& pair = (*l)[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
          d.error(p, "expected a pair of element ids");
          continue;
        }
        auto a = pair[0].get<std::string>(), b = pair[1].get<std::string>();
        for (const auto& [id, k] : {std::pair{a, 0}, std::pair{b, 1}})
          if (std::find(out.raw.ids.begin(), out.raw.ids.end(), id) == out.raw.ids.end())
            d.error(p + "[" + std::to_string(k) + "]", "unknown element '" + id + "'");
        out.raw.leq.emplace_back(a, b);
      }
  }
  if (auto lv = detail::member(j, "level", path, d, false)) {
    if (!lv->is_string()) d.error(path + ".level", "expected a string");
    else out.level = lv->get<std::string>();
  }
  std::map<std::string, int> seen;
  for (const auto& id : out.raw.ids)
    if (++seen[id] == 2) d.error(path + ".elements", "duplicate element '" + id + "'");
  if (d.errors.size() != before) return std::nullopt;
  auto closed = pfk::detail::close_order(out.raw);
  if (closed.added_pairs > 0)
    d.note(path + ".leq", "closed reflexively-transitively, added " + std::to_string(closed.added_pairs) + " pair(s)");
  return out;
}

inline LatticeLevel parse_level(const std::string& s) {
  if (s == "poset") return LatticeLevel::poset;
  if (s == "suplattice" || s == "lattice") return LatticeLevel::suplattice;
  if (s == "frame" || s == "locale") return LatticeLevel::frame;
  throw InvalidInput("unknown lattice level '" + s + "'");
}

inline std::optional<FinSpace> read_space(const Json& j, const std::string& path, Diagnostics& d,
                                          const Limits& limits = {}) {
  const auto before = d.errors.size();
  std::vector<std::string> ids;
  if (auto p = detail::member(j, "points", path, d)) ids = detail::string_list(*p, path + ".points", d);
  std::map<std::string, int> seen;
  for (const auto& id : ids)
    if (++seen[id] == 2) d.error(path + ".points", "duplicate point '" + id + "'");
  const Json* opens = j.is_object() && j.contains("opens") ? &j["opens"] : nullptr;
  const Json* sub = j.is_object() && j.contains("subbasis") ? &j["subbasis"] : nullptr;
  if (j.is_object() && !opens && !sub) d.error(path, "missing \"opens\" or \"subbasis\"");
  if (opens && sub) d.error(path, "give either \"opens\" or \"subbasis\", not both");
  if (d.errors.size() != before) return std::nullopt;
  auto probe = FinSpace::discrete(ids);
  const auto& family = opens ? *opens : *sub;
  const auto key = path + (opens ? ".opens" : ".subbasis");
  if (!family.is_array()) {
    d.error(key, "expected an array of point lists");
    return std::nullopt;
  }
  std::vector<Bitset> sets;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (auto s = detail::point_set(probe, family[i], key + "[" + std::to_string(i) + "]", d)) sets.push_back(*s);
  if (d.errors.size() != before) return std::nullopt;
  if (sub) return generate_topology(ids, sets);
  auto closed = space_from_opens(ids, sets, limits);
  for (const auto& n : closed.notes) d.note(key, n);
  return closed.space;
}

inline std::optional<FqSpace> read_fq(const Json& j, const std::string& path, Diagnostics& d, const Limits& limits = {}) {
  const auto before = d.errors.size();
  Scalar q = 0;
  std::size_t dim = 0;
  if (auto v = detail::member(j, "q", path, d)) {
    if (!v->is_number_unsigned()) d.error(path + ".q", "expected a prime");
    else q = v->get<Scalar>();
  }
  if (auto v = detail::member(j, "dim", path, d)) {
    if (!v->is_number_unsigned()) d.error(path + ".dim", "expected a non-negative integer");
    else dim = v->get<std::size_t>();
  }
  if (d.errors.size() != before) return std::nullopt;
  try {
    static_cast<void>(Field(q));
  } catch (const InvalidInput& e) {
    d.error(path + ".q", e.what());
    return std::nullopt;
  }
  FqSpace a(Field(q), dim, limits);
  const Json* c = j.contains("carrier") ? &j["carrier"] : nullptr;
  if (!c || (c->is_string() && c->get<std::string>() == "discrete")) return a;
  if (c->is_string() && c->get<std::string>() == "indiscrete") return FqSpace::indiscrete(q, dim);
  if (c->is_string()) {
    d.error(path + ".carrier", "unknown carrier '" + c->get<std::string>() + "'");
    return std::nullopt;
  }
  Json spec = *c;
  if (!spec.contains("points")) spec["points"] = a.vector_ids();
  auto x = read_space(spec, path + ".carrier", d, limits);
  if (!x) return std::nullopt;
  try {
    return FqSpace::with_carrier(q, dim, *x);
  } catch (const InvalidInput& e) {
    d.error(path + ".carrier", e.what());
    return std::nullopt;
  }
}

inline std::optional<Subspace> read_subspace(const FqSpace& a, const Json& j, const std::string& path, Diagnostics& d) {
  const auto before = d.errors.size();
  const Json* basis = detail::member(j, "basis", path, d);
  if (!basis) return std::nullopt;
  if (!basis->is_array()) {
    d.error(path + ".basis", "expected an array of vectors");
    return std::nullopt;
  }
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < basis->size(); ++i)
    if (auto v = detail::vector(a, (*basis)[i], path + ".basis[" + std::to_string(i) + "]", d)) vs.push_back(*v);
  if (d.errors.size() != before) return std::nullopt;
  return a.span(std::move(vs));
}

inline std::optional<FqLinearMap> read_matrix(const Field& f, std::size_t source_dim, std::size_t target_dim,
                                              const Json& j, const std::string& path, Diagnostics& d) {
  const auto before = d.errors.size();
  if (!j.is_array() || j.size() != target_dim) {
    d.error(path, "expected " + std::to_string(target_dim) + " row(s)");
    return std::nullopt;
  }
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != source_dim) {
      d.error(p, "expected a row of length " + std::to_string(source_dim));
      continue;
    }
    Vector r;
    for (std::size_t k = 0; k < source_dim; ++k) {
      const auto& e = j[i][k];
      if (!e.is_number_unsigned() || e.get<unsigned>() >= f.q())
        d.error(p + "[" + std::to_string(k) + "]", "expected an integer in [0, " + std::to_string(f.q()) + ")");
      else r.push_back(static_cast<Scalar>(e.get<unsigned>()));
    }
    rows.push_back(std::move(r));
  }
  if (d.errors.size() != before) return std::nullopt;
  if (target_dim == 0) return FqLinearMap::zero(f, source_dim, 0);
  return FqLinearMap::from_rows(f, source_dim, std::move(rows));
}

inline std::optional<CtsMap> read_point_map(const FinSpace& src, const FinSpace& dst, const Json& j,
                                            const std::string& path, Diagnostics& d) {
  const auto before = d.errors.size();
  if (!j.is_object()) {
    d.error(path, "expected an object from source points to target points");
    return std::nullopt;
  }
  CtsMap f{src, dst, std::vector<Point>(src.size(), 0)};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!src.find(it.key())) d.error(path + "." + it.key(), "unknown source point");
  for (Point y = 0; y < src.size(); ++y) {
    auto it = j.find(src.id(y));
    if (it == j.end()) {
      d.error(path, "no image for '" + src.id(y) + "'");
      continue;
    }
    if (!it->is_string() || !dst.find(it->get<std::string>())) {
      d.error(path + "." + src.id(y), "image is not a target point");
      continue;
    }
    f.table[y] = *dst.find(it->get<std::string>());
  }
  if (d.errors.size() != before) return std::nullopt;
  return f;
}

/// Base space, carrier and kernel map of a bundle document.
struct BundleSpec {
  FinSpace base;
  FqSpace carrier;
  std::vector<Subspace> kappa;
};

inline std::optional<BundleSpec> read_bundle_spec(const Json& j, const std::string& path, Diagnostics& d,
                                                  const Limits& limits = {}) {
  const auto before = d.errors.size();
  std::optional<FinSpace> x;
  std::optional<FqSpace> a;
  if (auto s = detail::member(j, "space", path, d)) x = read_space(*s, path + ".space", d, limits);
  if (auto f = detail::member(j, "fq", path, d)) a = read_fq(*f, path + ".fq", d, limits);
  const Json* k = detail::member(j, "kappa", path, d);
  if (!x || !a || !k) return std::nullopt;
  if (!k->is_object()) {
    d.error(path + ".kappa", "expected an object from points to subspaces");
    return std::nullopt;
  }
  BundleSpec out{*x, *a, std::vector<Subspace>(x->size(), a->zero_subspace())};
  for (auto it = k->begin(); it != k->end(); ++it)
    if (!x->find(it.key())) d.error(path + ".kappa." + it.key(), "unknown point");
  for (Point p = 0; p < x->size(); ++p) {
    auto it = k->find(x->id(p));
    if (it == k->end()) {
      d.error(path + ".kappa", "no subspace for '" + x->id(p) + "'");
      continue;
    }
    if (auto v = read_subspace(*a, *it, path + ".kappa." + x->id(p), d)) out.kappa[p] = *v;
  }
  if (d.errors.size() != before) return std::nullopt;
  return out;
}

inline std::optional<QVBundle> read_bundle(const Json& j, const std::string& path, Diagnostics& d,
                                           const Limits& limits = {}) {
  auto s = read_bundle_spec(j, path, d, limits);
  if (!s) return std::nullopt;
  return build_bundle(s->base, s->carrier, s->kappa, limits);
}

/// σ may be a full table over Sub A, or values on the lines only.
inline std::optional<LinLocale> read_linloc(const Json& j, const std::string& path, Diagnostics& d,
                                            const Limits& limits = {}) {
  const auto before = d.errors.size();
  std::optional<LoadedLattice> lat;
  std::optional<FqSpace> a;
  if (auto f = detail::member(j, "frame", path, d)) lat = read_lattice(*f, path + ".frame", d);
  if (auto f = detail::member(j, "fq", path, d)) a = read_fq(*f, path + ".fq", d, limits);
  const Json* s = detail::member(j, "sigma", path, d);
  if (!lat || !a || !s) return std::nullopt;
  if (!s->is_object()) {
    d.error(path + ".sigma", "expected an object from subspace keys to frame elements");
    return std::nullopt;
  }
  auto frame = Locale(FinLattice::from_order(lat->raw), limits);
  auto sl = enumerate_subspaces(*a, limits);
  std::map<std::string, Elem> given;
  for (auto it = s->begin(); it != s->end(); ++it) {
    const auto p = path + ".sigma." + it.key();
    if (!sl.by_key.count(it.key())) d.error(p, "not a subspace key of the carrier");
    if (!it->is_string() || !frame.lattice().find(it->get<std::string>())) d.error(p, "value is not a frame element");
    else given[it.key()] = frame.lattice().index(it->get<std::string>());
  }
  if (d.errors.size() != before) return std::nullopt;
  bool lines_only = true;
  for (const auto& [key, _] : given) lines_only = lines_only && sl.subspace(sl.by_key.at(key)).dim() == 1;
  if (given.size() == sl.size()) {
    LatticeMap sigma{sl.lattice, frame.lattice(), std::vector<Elem>(sl.size())};
    for (const auto& [key, v] : given) sigma.table[sl.by_key.at(key)] = v;
    return build_linloc(frame, *a, sigma, limits);
  }
  if (lines_only) {
    std::size_t lines = 0;
    for (const auto& v : sl.subspaces) lines += v.dim() == 1;
    if (given.size() == lines) {
      d.note(path + ".sigma", "extended from the lines by joins");
      return build_linloc_from_lines(frame, *a, given, limits);
    }
  }
  for (Elem v = 0; v < sl.size(); ++v)
    if (!given.count(sl.lattice.id(v))) d.error(path + ".sigma", "no value for subspace " + sl.lattice.id(v));
  return std::nullopt;
}

}  // namespace io

/// A DOT document with its node and edge counts.
struct DotGraph {
  std::string text;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

namespace io::detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace io::detail

/// Hasse diagram, bottom to top.
inline DotGraph dot_lattice(const FinLattice& l, const std::string& name = "lattice") {
  std::ostringstream os;
  DotGraph g;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (Elem e = 0; e < l.size(); ++e) os << "  n" << e << " [label=" << io::detail::quote(l.id(e)) << "];\n";
  g.nodes = l.size();
  for (const auto& [a, b] : l.covers()) {
    os << "  n" << a << " -> n" << b << ";\n";
    ++g.edges;
  }
  os << "}\n";
  g.text = os.str();
  return g;
}

/// Specialization diagram: an edge x -> y when x ⊑ y with nothing strictly
/// between; specialization-equivalent points are joined both ways.
inline DotGraph dot_space(const FinSpace& x, const std::string& name = "space") {
  std::ostringstream os;
  DotGraph g;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (Point p = 0; p < x.size(); ++p) os << "  n" << p << " [label=" << io::detail::quote(x.id(p)) << "];\n";
  g.nodes = x.size();
  auto strictly = [&](Point a, Point b) { return x.specializes(a, b) && !x.specializes(b, a); };
  for (Point a = 0; a < x.size(); ++a)
    for (Point b = 0; b < x.size(); ++b) {
      if (a == b || !x.specializes(a, b)) continue;
      bool cover = true;
      if (strictly(a, b))
        for (Point c = 0; c < x.size() && cover; ++c)
          if (strictly(a, c) && strictly(c, b)) cover = false;
      if (!cover) continue;
      os << "  n" << a << " -> n" << b << ";\n";
      ++g.edges;
    }
  os << "}\n";
  g.text = os.str();
  return g;
}

/// Base points on one side, the subspaces of A on the other, x -> κ(x).
inline DotGraph dot_kernel(const QVBundle& b, const std::string& name = "kernel") {
  std::ostringstream os;
  DotGraph g;
  const auto& x = b.base();
  const auto& sl = b.sub().lattice;
  os << "digraph " << name << " {\n  rankdir=LR;\n  subgraph cluster_base {\n    label=\"X\";\n";
  for (Point p = 0; p < x.size(); ++p)
    os << "    x" << p << " [label=" << io::detail::quote(x.id(p) + " : " + sl.id(b.kappa[p])) << "];\n";
  os << "  }\n  subgraph cluster_sub {\n    label=\"Sub A\";\n";
  for (Elem e = 0; e < sl.size(); ++e) os << "    s" << e << " [label=" << io::detail::quote(sl.id(e)) << "];\n";
  os << "  }\n";
  g.nodes = x.size() + sl.size();
  for (Point p = 0; p < x.size(); ++p) {
    os << "  x" << p << " -> s" << b.kappa[p] << ";\n";
    ++g.edges;
  }
  os << "}\n";
  g.text = os.str();
  return g;
}

}  // namespace pfk
